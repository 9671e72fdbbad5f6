"""Generalized holomorphic maps, Hitchin realizations, fiber and moment-map checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .courant import GeneralizedStructure
from .errors import ChartMismatch, NondegenerateInverseUnavailable, NotInIsotropy, NotRegularPoint
from .hitchin import HitchinPair, check_hitchin_pair, hitchin_to_gcs
from .ratpoly import RatPoly
from .report import CheckReport, Defect
from .tensorfield import (
    KForm,
    PolyMap,
    VectorField,
    increasing,
    nijenhuis,
    pullback,
    pushforward_bivector_check,
    sharp_bivector,
    sharp_form,
)


@dataclass(frozen=True)
class GHolMapCandidate:
    f: PolyMap
    source: GeneralizedStructure
    target: GeneralizedStructure

    def __post_init__(self):
        if self.source.chart != self.f.source or self.target.chart != self.f.target:
            raise ChartMismatch("structures do not live on the charts of the map")


def intertwining_defect(c: GHolMapCandidate) -> linalg.PolyMatrix:
    """(df) a1 - (a2 o f)(df)."""
    coords = c.f.source.coordinates
    D = c.f.jacobian()
    left = linalg.matmul(D, c.source.A, coords)
    right = linalg.matmul(c.f.compose_matrix(c.target.A), D, coords)
    return linalg.matsub(left, right)


def check_gholomorphic(c: GHolMapCandidate) -> CheckReport:
    src, tgt = c.f.source, c.f.target
    bivec = pushforward_bivector_check(c.f, c.source.pi, c.target.pi)
    pulled = pullback(c.f, c.target.sigma) - c.source.sigma
    forms = CheckReport.from_defects("f*sigma2 = sigma1", [
        Defect("f*sigma2 = sigma1", f"(d{src.coordinates[i]}, d{src.coordinates[j]})", pulled.component((i, j)))
        for i, j in increasing(src.dimension, 2)
    ])
    M = intertwining_defect(c)
    inter = CheckReport.from_defects("df a1 = a2 df", [
        Defect("df a1 = a2 df", f"[{tgt.coordinates[i]}, {src.coordinates[j]}]", M[i][j])
        for i in range(tgt.dimension) for j in range(src.dimension)
    ])
    return CheckReport.combine("gholomorphic", [bivec, forms, inter])


def compose_candidates(c1: GHolMapCandidate, c2: GHolMapCandidate) -> GHolMapCandidate:
    """g o f for f = c1.f and g = c2.f."""
    return GHolMapCandidate(c1.f.then(c2.f), c1.source, c2.target)


def check_hitchin_realization(mu: PolyMap, pair: HitchinPair, target: GeneralizedStructure) -> CheckReport:
    """The Hitchin pair must certify; mu must then be generalized holomorphic from its structure."""
    hp = check_hitchin_pair(pair)
    if not hp.certified:
        return CheckReport.combine("hitchin realization", [hp])
    g = check_gholomorphic(GHolMapCandidate(mu, hitchin_to_gcs(pair), target))
    return CheckReport.combine("hitchin realization", [hp, g])


def _eval_point(chart, point) -> list[tuple[str, Fraction]]:
    if len(point) != chart.dimension:
        raise ValueError(f"point needs {chart.dimension} coordinates")
    return [(name, Fraction(v)) for name, v in zip(chart.coordinates, point)]


def _const(chart, value) -> RatPoly:
    return RatPoly.constant(value, chart.coordinates)


def fiber_complex_check(c: GHolMapCandidate, point: Sequence) -> CheckReport:
    """At a regular point: a1 preserves Ker(df), squares to -Id there, and N_{a1} vanishes on it."""
    chart = c.f.source
    n = chart.dimension
    pt = [Fraction(v) for v in point]
    D = linalg.evaluate(c.f.jacobian(), pt)
    m = len(D)
    if linalg.rank(D) != min(m, n):
        raise NotRegularPoint(f"the Jacobian is not of full rank at {tuple(str(v) for v in pt)}")
    K = linalg.nullspace(D, n)
    A = linalg.evaluate(c.source.A, pt)
    basis = [VectorField.basis(chart, i) for i in range(n)]
    N = [[[Fraction(x.eval(pt)) for x in nijenhuis(c.source.a, basis[p], basis[q]).components]
          for q in range(n)] for p in range(n)]
    defects = []
    for idx, k in enumerate(K):
        ak = linalg.rat_matvec(A, k)
        for r, x in enumerate(linalg.rat_matvec(D, ak)):
            defects.append(Defect("a1 preserves Ker(df)", f"k{idx} [{r}]", _const(chart, x)))
        aak = linalg.rat_matvec(A, ak)
        for r in range(n):
            defects.append(Defect("a1^2 = -Id on Ker(df)", f"k{idx} [{r}]", _const(chart, aak[r] + k[r])))
    for i in range(len(K)):
        for j in range(i + 1, len(K)):
            vec = [sum((K[i][p] * K[j][q] * N[p][q][r] for p in range(n) for q in range(n)), Fraction(0))
                   for r in range(n)]
            for r, x in enumerate(vec):
                defects.append(Defect("N_a1 on Ker(df)", f"(k{i}, k{j}) [{r}]", _const(chart, x)))
    notes = [f"dim Ker(df) = {len(K)}"]
    return CheckReport.at_point("fiber complex", defects, _eval_point(chart, pt), notes)


def moment_map_defect(mu: PolyMap, omega: KForm, alpha: Sequence, rho_alpha: VectorField, point: Sequence,
                      target_pi=None) -> list[Fraction]:
    """i_{rho(alpha)} omega - mu*(alpha) at ``point``, as a covector.

    ``alpha`` is a covector at mu(point) in the target coframe. When the target
    bivector is given, alpha must lie in the kernel of its sharp map there.
    """
    pt = [Fraction(v) for v in point]
    alpha = [Fraction(v) for v in alpha]
    if target_pi is not None:
        image = mu(pt)
        P = linalg.evaluate(sharp_bivector(target_pi).as_lists(), image)
        if any(linalg.rat_matvec(P, alpha)):
            raise NotInIsotropy("alpha is not in the kernel of pi# at mu(point)")
    S = linalg.evaluate(sharp_form(omega).as_lists(), pt)
    D = linalg.evaluate(mu.jacobian(), pt)
    rho = [Fraction(x.eval(pt)) for x in rho_alpha.components]
    lhs = linalg.rat_matvec(S, rho)
    rhs = linalg.rat_matvec([list(col) for col in zip(*D)], alpha)
    return [x - y for x, y in zip(lhs, rhs)]


def solve_moment_map(mu: PolyMap, omega: KForm, alpha: Sequence, point: Sequence) -> list[Fraction]:
    """The vector rho with i_rho omega = mu*(alpha) at a point where omega is non-degenerate."""
    pt = [Fraction(v) for v in point]
    S = linalg.evaluate(sharp_form(omega).as_lists(), pt)
    D = linalg.evaluate(mu.jacobian(), pt)
    rhs = linalg.rat_matvec([list(col) for col in zip(*D)], [Fraction(v) for v in alpha])
    rho = linalg.solve(S, rhs)
    if rho is None:
        raise NondegenerateInverseUnavailable("omega is degenerate at the point")
    return rho


def check_moment_map(mu: PolyMap, omega: KForm, alpha: Sequence, rho_alpha: VectorField, point: Sequence,
                     target_pi=None) -> CheckReport:
    chart = mu.source
    vals = moment_map_defect(mu, omega, alpha, rho_alpha, point, target_pi)
    defects = [Defect("moment map", f"[d{chart.coordinates[k]}]", _const(chart, v)) for k, v in enumerate(vals)]
    return CheckReport.at_point("moment map", defects, _eval_point(chart, point))
