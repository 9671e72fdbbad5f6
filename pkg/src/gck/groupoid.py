"""The pair groupoid M x M over a chart and its Hitchin groupoid structure.

Points of the groupoid are pairs g = (x_1, x_2) with target t(g) = x_1 and
source s(g) = x_2; composable pairs are (x_1, x_2), (x_2, x_3) with product
(x_1, x_3). With omega_S = s*omega - t*omega the source map is Poisson and
the target map anti-Poisson.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import linalg
from .courant import GeneralizedStructure, _matrix_defects, gauge, opposite
from .errors import ChartMismatch, NonClosedB, PreconditionFailure
from .hitchin import HitchinPair, check_hitchin_pair, twist
from .morphism import GHolMapCandidate, check_gholomorphic
from .ratpoly import RatPoly, poly_sum
from .report import CheckReport, Defect
from .tensorfield import (
    Chart,
    EndoField,
    KForm,
    PolyMap,
    VectorField,
    bivector_from_sharp,
    exterior_d,
    form_pullback_by_endo,
    increasing,
    invert_2form,
    pullback,
    sharp_bivector,
    sharp_form,
)


def _factor_map(source: Chart, factors: Sequence[int], n: int, target: Chart) -> PolyMap:
    """Map picking the listed n-blocks of the source coordinates, in order."""
    comps = [source.coord(f * n + i) for f in factors for i in range(n)]
    return PolyMap(source, target, tuple(comps))


def _map_equality(label: str, f: PolyMap, g: PolyMap) -> list[Defect]:
    return [Defect(label, f"[{f.target.coordinates[i]}]", a - b)
            for i, (a, b) in enumerate(zip(f.components, g.components))]


@dataclass(frozen=True)
class PairGroupoid:
    base: Chart
    total: Chart = field(init=False)
    composable: Chart = field(init=False)
    t: PolyMap = field(init=False)
    s: PolyMap = field(init=False)
    m: PolyMap = field(init=False)
    pr1: PolyMap = field(init=False)
    pr2: PolyMap = field(init=False)
    unit: PolyMap = field(init=False)
    inversion: PolyMap = field(init=False)
    axioms: CheckReport = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = self.base.dimension
        total = self.base.suffixed("1").product(self.base.suffixed("2"))
        comp = total.product(self.base.suffixed("3"))
        setattr_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        setattr_("total", total)
        setattr_("composable", comp)
        setattr_("t", _factor_map(total, [0], n, self.base))
        setattr_("s", _factor_map(total, [1], n, self.base))
        setattr_("m", _factor_map(comp, [0, 2], n, total))
        setattr_("pr1", _factor_map(comp, [0, 1], n, total))
        setattr_("pr2", _factor_map(comp, [1, 2], n, total))
        setattr_("unit", _factor_map(self.base, [0, 0], n, total))
        setattr_("inversion", _factor_map(total, [1, 0], n, total))
        report = self.check_axioms()
        if not report.certified:  # pragma: no cover - the maps above are fixed
            raise AssertionError(report.summary())
        setattr_("axioms", report)

    @property
    def dimension(self) -> int:
        return self.base.dimension

    def check_axioms(self) -> CheckReport:
        n = self.dimension
        base, total, comp = self.base, self.total, self.composable
        triple = comp.product(self.base.suffixed("4"))
        ident_total = PolyMap.identity(total)
        ident_base = PolyMap.identity(base)
        defects = []
        defects += _map_equality("t o m = t o pr1", self.m.then(self.t), self.pr1.then(self.t))
        defects += _map_equality("s o m = s o pr2", self.m.then(self.s), self.pr2.then(self.s))
        defects += _map_equality("s o pr1 = t o pr2", self.pr1.then(self.s), self.pr2.then(self.t))
        left = _factor_map(triple, [0, 2, 3], n, comp).then(self.m)
        right = _factor_map(triple, [0, 1, 3], n, comp).then(self.m)
        defects += _map_equality("associativity", left, right)
        defects += _map_equality("t o unit = id", self.unit.then(self.t), ident_base)
        defects += _map_equality("s o unit = id", self.unit.then(self.s), ident_base)
        defects += _map_equality("left unit", _factor_map(total, [0, 0, 1], n, comp).then(self.m), ident_total)
        defects += _map_equality("right unit", _factor_map(total, [0, 1, 1], n, comp).then(self.m), ident_total)
        defects += _map_equality("inverse", _factor_map(total, [0, 1, 0], n, comp).then(self.m),
                                 self.t.then(self.unit))
        defects += _map_equality("inversion is an involution", self.inversion.then(self.inversion), ident_total)
        defects += _map_equality("s o inversion = t", self.inversion.then(self.s), self.t)
        return CheckReport.from_defects("groupoid axioms", defects)

    def block_endo(self, first: EndoField, second: EndoField) -> EndoField:
        """first acting on the target factor, second on the source factor."""
        n = self.dimension
        A1 = self.t.compose_matrix(first.as_lists())
        A2 = self.s.compose_matrix(second.as_lists())
        M = linalg.zeros(2 * n, 2 * n, self.total.coordinates)
        for i in range(n):
            for j in range(n):
                M[i][j] = A1[i][j]
                M[n + i][n + j] = A2[i][j]
        return EndoField(self.total, M)

    def product_structure(self, first: GeneralizedStructure, second: GeneralizedStructure) -> GeneralizedStructure:
        """first on the x_1 factor, second on the x_2 factor."""
        n = self.dimension
        a = self.block_endo(first.a, second.a)
        P1 = self.t.compose_matrix(first.P)
        P2 = self.s.compose_matrix(second.P)
        P = linalg.zeros(2 * n, 2 * n, self.total.coordinates)
        for i in range(n):
            for j in range(n):
                P[i][j] = P1[i][j]
                P[n + i][n + j] = P2[i][j]
        pi = bivector_from_sharp(self.total, P)
        sigma = pullback(self.t, first.sigma) + pullback(self.s, second.sigma)
        return GeneralizedStructure(a, pi, sigma)


@dataclass(frozen=True)
class HitchinGroupoidCandidate:
    groupoid: PairGroupoid
    omega_S: KForm
    J_S: EndoField
    sigma: KForm
    base: HitchinPair | None = None

    def __post_init__(self):
        if self.omega_S.chart != self.groupoid.total or self.J_S.chart != self.groupoid.total:
            raise ChartMismatch("omega_S and J_S must live on the groupoid chart")
        if self.sigma.chart != self.groupoid.base:
            raise ChartMismatch("sigma must live on the base chart")

    def base_structure(self) -> GeneralizedStructure:
        """(a, omega^-1, sigma) on the base, with the candidate's own sigma."""
        if self.base is None:
            raise PreconditionFailure("the candidate carries no base Hitchin pair")
        return GeneralizedStructure(self.base.a, invert_2form(self.base.omega), self.sigma)


def build_pair_hitchin_groupoid(pair: HitchinPair) -> HitchinGroupoidCandidate:
    g = PairGroupoid(pair.chart)
    omega_S = pullback(g.s, pair.omega) - pullback(g.t, pair.omega)
    J_S = g.block_endo(pair.a, pair.a)
    return HitchinGroupoidCandidate(g, omega_S, J_S, twist(pair), pair)


def _form_defects(label: str, form: KForm) -> list[Defect]:
    c = form.chart.coordinates
    return [Defect(label, "(" + ", ".join(f"d{c[i]}" for i in idx) + ")", form.component(idx))
            for idx in increasing(form.chart.dimension, form.degree)]


def check_multiplicative_form(g: PairGroupoid, omega: KForm) -> CheckReport:
    """m*omega = pr1*omega + pr2*omega on the composable chart."""
    diff = pullback(g.m, omega) - pullback(g.pr1, omega) - pullback(g.pr2, omega)
    return CheckReport.from_defects("multiplicative form", _form_defects("multiplicative form", diff))


def check_multiplicative_endo(g: PairGroupoid, J: EndoField) -> CheckReport:
    """J x J preserves tangent vectors to the composable pairs and commutes with dm."""
    n = g.dimension
    c = g.composable.coordinates
    D1, D2, Dm = g.pr1.jacobian(), g.pr2.jacobian(), g.m.jacobian()
    JD1 = linalg.matmul(g.pr1.compose_matrix(J.as_lists()), D1, c)
    JD2 = linalg.matmul(g.pr2.compose_matrix(J.as_lists()), D2, c)
    tangency = linalg.matsub(JD1[n:], JD2[:n])
    pushed = JD1[:n] + JD2[n:]
    JmDm = linalg.matmul(g.m.compose_matrix(J.as_lists()), Dm, c)
    return CheckReport.combine("multiplicative endo", [
        CheckReport.from_defects("tangent to composable pairs", _matrix_defects("tangent to composable pairs",
                                                                                tangency)),
        CheckReport.from_defects("dm(Jv, Jw) = J dm(v, w)", _matrix_defects("dm(Jv, Jw) = J dm(v, w)",
                                                                            linalg.matsub(pushed, JmDm))),
    ])


def twist_identity_defect(c: HitchinGroupoidCandidate) -> KForm:
    """omega_S + J_S*omega_S - (t*sigma - s*sigma)."""
    g = c.groupoid
    return (c.omega_S + form_pullback_by_endo(c.J_S, c.omega_S)
            - (pullback(g.t, c.sigma) - pullback(g.s, c.sigma)))


def check_hitchin_groupoid(c: HitchinGroupoidCandidate) -> CheckReport:
    g = c.groupoid
    pair = check_hitchin_pair(HitchinPair(c.omega_S, c.J_S))
    parts = list(pair.parts) + [
        check_multiplicative_form(g, c.omega_S),
        check_multiplicative_endo(g, c.J_S),
        CheckReport.from_defects("twist identity", _form_defects("twist identity", twist_identity_defect(c))),
    ]
    return CheckReport.combine("hitchin groupoid", parts)


def ts_target_structure(c: HitchinGroupoidCandidate) -> GeneralizedStructure:
    """The opposite base structure on the target factor, the base structure on the source factor."""
    base = c.base_structure()
    return c.groupoid.product_structure(opposite(base), base)


def check_ts_gholomorphic(c: HitchinGroupoidCandidate) -> CheckReport:
    """(t, s) from the groupoid structure into the product, plus dt J = a dt and ds J = a ds."""
    g = c.groupoid
    base = c.base_structure()
    sigma_S = twist(HitchinPair(c.omega_S, c.J_S))
    source = GeneralizedStructure(c.J_S, invert_2form(c.omega_S), sigma_S)
    ts = PolyMap.identity(g.total)
    hol = check_gholomorphic(GHolMapCandidate(ts, source, ts_target_structure(c)))
    coords = g.total.coordinates
    legs = []
    for name, proj in (("dt J = a dt", g.t), ("ds J = a ds", g.s)):
        D = proj.jacobian()
        M = linalg.matsub(linalg.matmul(D, c.J_S.as_lists(), coords),
                          linalg.matmul(proj.compose_matrix(base.A), D, coords))
        legs.append(CheckReport.from_defects(name, _matrix_defects(name, M)))
    return CheckReport.combine("ts gholomorphic", list(hol.parts) + legs)


def groupoid_gauge(c: HitchinGroupoidCandidate, B: KForm) -> HitchinGroupoidCandidate:
    """J_B = J + omega_S^-1 (s*B - t*B); sigma and the base pair follow the gauged base structure."""
    if not exterior_d(B).is_zero():
        raise NonClosedB("B is not closed")
    g = c.groupoid
    coords = g.total.coordinates
    P = sharp_bivector(invert_2form(c.omega_S)).as_lists()
    BS = sharp_form(pullback(g.s, B) - pullback(g.t, B)).as_lists()
    J_B = EndoField(g.total, linalg.matadd(c.J_S.as_lists(), linalg.matmul(P, BS, coords)))
    gauged = gauge(c.base_structure(), B)
    base = HitchinPair(c.base.omega, gauged.a)
    return replace(c, J_S=J_B, sigma=gauged.sigma, base=base)


def _at_point_defects(label: str, M, names) -> list[Defect]:
    return [Defect(label, f"[{i},{j}]", RatPoly.constant(x, names)) for i, row in enumerate(M)
            for j, x in enumerate(row)]


def isotropy_complex_check(c: HitchinGroupoidCandidate, x: Sequence) -> CheckReport:
    """At the unit over x: the isotropy directions are trivial, and on Ker(ds) J restricts to a with
    a^2 = -Id - pi# sigma#."""
    g = c.groupoid
    n = g.dimension
    base_names = g.base.coordinates
    pt = [Fraction(v) for v in x]
    unit_pt = g.unit(pt)
    Dt = linalg.evaluate(g.t.jacobian(), unit_pt)
    Ds = linalg.evaluate(g.s.jacobian(), unit_pt)
    iso = linalg.nullspace(Dt + Ds, 2 * n)
    J = linalg.evaluate(c.J_S.as_lists(), unit_pt)
    ker_s = linalg.nullspace(Ds, 2 * n)
    defects = [Defect("trivial isotropy", "dim Ker(dt) & Ker(ds)", RatPoly.constant(len(iso), base_names))]
    for idx, v in enumerate(ker_s):
        for r, val in enumerate(linalg.rat_matvec(Ds, linalg.rat_matvec(J, v))):
            defects.append(Defect("J preserves Ker(ds)", f"v{idx} [{r}]", RatPoly.constant(val, base_names)))
    # restriction of J to Ker(ds) = {(v, 0)} in the basis of the first factor
    R = [[J[i][j] for j in range(n)] for i in range(n)]
    base = c.base_structure()
    PS = linalg.evaluate(linalg.matmul(base.P, base.S, base_names), pt)
    R2 = linalg.rat_matmul(R, R)
    surrogate = [[R2[i][j] + PS[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    defects += _at_point_defects("J|Ker(ds)^2 = -Id - pi# sigma#", surrogate, base_names)
    return CheckReport.at_point("isotropy complex", defects, list(zip(base_names, pt)))


def right_invariant_field(c: HitchinGroupoidCandidate, theta: KForm) -> VectorField:
    """(v(x_1), 0) with v = -pi# theta; at the units it lies in Ker(ds)."""
    g = c.groupoid
    if c.base is None:
        raise PreconditionFailure("the candidate carries no base Hitchin pair")
    v = sharp_bivector(invert_2form(c.base.omega))(theta)
    comps = [-g.t.compose_poly(x) for x in v.components] + [g.total.zero()] * g.dimension
    return VectorField(g.total, tuple(comps))


def check_proof_identity(c: HitchinGroupoidCandidate) -> CheckReport:
    """omega_S(alpha, V) = theta(dt V) and (omega_S)_J(alpha, V) = (a* theta)(dt V) for right-invariant alpha."""
    g = c.groupoid
    n = g.dimension
    coords = g.total.coordinates
    Dt = g.t.jacobian()
    A = g.t.compose_matrix(c.base.a.as_lists())
    vs = [VectorField.basis(g.total, k) for k in range(2 * n)]
    plain, twisted = [], []
    for i in range(n):
        theta = KForm.basis(g.base, (i,))
        alpha = right_invariant_field(c, theta)
        Jalpha = c.J_S(alpha)
        for k, V in enumerate(vs):
            dtV = [Dt[r][k] for r in range(n)]
            plain.append(Defect("u = Id", f"theta=d{g.base.coordinates[i]}, V=d/d{coords[k]}",
                                c.omega_S(alpha, V) - dtV[i]))
            a_theta = [A[i][r] for r in range(n)]  # (a* theta)_r = a_{i r}
            rhs = poly_sum([x * y for x, y in zip(a_theta, dtV)], coords)
            twisted.append(Defect("u = a*", f"theta=d{g.base.coordinates[i]}, V=d/d{coords[k]}",
                                  c.omega_S(Jalpha, V) - rhs))
    return CheckReport.combine("proof identity", [CheckReport.from_defects("u = Id", plain),
                                                  CheckReport.from_defects("u = a*", twisted)])
