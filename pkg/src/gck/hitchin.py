"""Hitchin pairs (omega, a), their twist, and the passage to non-degenerate structures."""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .courant import GeneralizedStructure, _matrix_defects, sigma_a_commutation, twisted_form
from .errors import CommutationFailure, DegeneratePi, NondegenerateInverseUnavailable, PreconditionFailure
from .ratpoly import RatPoly
from .report import CheckReport, Defect
from .tensorfield import (
    EndoField,
    KForm,
    VectorField,
    _same_chart,
    contract2,
    exterior_d,
    form_pullback_by_endo,
    increasing,
    interior,
    invert_2form,
    invert_bivector,
    nijenhuis,
    sharp_form,
)


@dataclass(frozen=True)
class HitchinPair:
    omega: KForm
    a: EndoField

    def __post_init__(self):
        if self.omega.degree != 2:
            raise ValueError("omega must be a 2-form")
        _same_chart(self.omega, self.a)

    @property
    def chart(self):
        return self.omega.chart


def _closed_defects(label: str, form: KForm) -> list[Defect]:
    d = exterior_d(form)
    n = form.chart.dimension
    return [Defect(label, str(idx), d.component(idx)) for idx in increasing(n, form.degree + 1)]


def commutation_matrix(omega: KForm, a: EndoField) -> linalg.PolyMatrix:
    """Sharp matrix of omega(aX, Y) - omega(X, aY), up to sign."""
    return sigma_a_commutation(a, omega)


def commutes(omega: KForm, a: EndoField) -> bool:
    return linalg.is_zero_matrix(commutation_matrix(omega, a))


def omega_a(omega: KForm, a: EndoField) -> KForm:
    """omega_a(X, Y) = omega(aX, Y); requires a to commute with omega."""
    if not commutes(omega, a):
        raise CommutationFailure("omega(aX, Y) - omega(X, aY) is not identically zero")
    return twisted_form(a, omega)


def nondegeneracy_defect(omega: KForm) -> Defect:
    """Zero iff omega# has a nonzero constant determinant."""
    c = omega.chart.coordinates
    det = linalg.determinant(sharp_form(omega).as_lists(), c)
    if det.is_zero():
        return Defect("non-degenerate", "det vanishes identically", RatPoly.constant(1, c))
    return Defect("non-degenerate", f"det = {det}", det - det.constant_term())


def check_hitchin_pair(p: HitchinPair) -> CheckReport:
    parts = [
        CheckReport.from_defects("d omega = 0", _closed_defects("d omega = 0", p.omega)),
        CheckReport.from_defects("non-degenerate", [nondegeneracy_defect(p.omega)]),
        CheckReport.from_defects("commutation", _matrix_defects("commutation", commutation_matrix(p.omega, p.a))),
        CheckReport.from_defects("d omega_a = 0", _closed_defects("d omega_a = 0", twisted_form(p.a, p.omega))),
    ]
    return CheckReport.combine("hitchin", parts)


def twist(p: HitchinPair) -> KForm:
    """sigma = -(omega + a*omega) with a*omega(X, Y) = omega(aX, aY)."""
    return -(p.omega + form_pullback_by_endo(p.a, p.omega))


def hitchin_to_gcs(p: HitchinPair) -> GeneralizedStructure:
    return GeneralizedStructure(p.a, invert_2form(p.omega), twist(p))


def gcs_to_hitchin(s: GeneralizedStructure) -> HitchinPair:
    try:
        omega = invert_bivector(s.pi)
    except NondegenerateInverseUnavailable as exc:
        raise DegeneratePi(str(exc)) from exc
    return HitchinPair(omega, s.a)


def _basis(chart):
    return [VectorField.basis(chart, i) for i in range(chart.dimension)]


def torsion_identity_defect(omega: KForm, a: EndoField) -> list[Defect]:
    """i_{N_a(X,Y)} omega minus the right-hand side built from d omega_a, d omega, d(a*omega)."""
    chart = _same_chart(omega, a)
    dwa = exterior_d(omega_a(omega, a))
    dw = exterior_d(omega)
    dpull = exterior_d(form_pullback_by_endo(a, omega))
    vecs = _basis(chart)
    out = []
    for i, j in increasing(chart.dimension, 2):
        X, Y = vecs[i], vecs[j]
        aX, aY = a(X), a(Y)
        lhs = interior(nijenhuis(a, X, Y), omega)
        rhs = (contract2(aX, Y, dwa) + contract2(X, aY, dwa)
               - contract2(aX, aY, dw) - contract2(X, Y, dpull))
        diff = lhs - rhs
        for k, c in enumerate(diff.as_list()):
            out.append(Defect("torsion identity", f"X=d/d{chart.coordinates[i]}, Y=d/d{chart.coordinates[j]} "
                                                  f"[d{chart.coordinates[k]}]", c))
    return out


def _complex_preconditions(J: EndoField, omega: KForm) -> list[CheckReport]:
    chart = _same_chart(J, omega)
    c = chart.coordinates
    sq = linalg.matadd(linalg.matmul(J.as_lists(), J.as_lists(), c), linalg.identity(chart.dimension, c))
    vecs = _basis(chart)
    nij = []
    for i, j in increasing(chart.dimension, 2):
        N = nijenhuis(J, vecs[i], vecs[j])
        nij.extend(Defect("N_J = 0", f"({c[i]},{c[j]}) [d/d{c[k]}]", x) for k, x in enumerate(N.components))
    return [
        CheckReport.from_defects("J^2 = -Id", _matrix_defects("J^2 = -Id", sq)),
        CheckReport.from_defects("N_J = 0", nij),
        CheckReport.from_defects("commutation", _matrix_defects("commutation", commutation_matrix(omega, J))),
    ]


def complex_commuting_defect(J: EndoField, omega: KForm) -> list[Defect]:
    """2 d omega_J(X,Y,Z) against the four-term sum of d omega over basis triples."""
    for rep in _complex_preconditions(J, omega):
        if not rep.certified:
            raise PreconditionFailure(f"{rep.name} fails")
    chart = omega.chart
    dw = exterior_d(omega)
    dwJ = exterior_d(twisted_form(J, omega))
    vecs = _basis(chart)
    JV = [J(v) for v in vecs]
    c = chart.coordinates
    out = []
    for i, j, k in increasing(chart.dimension, 3):
        X, Y, Z = vecs[i], vecs[j], vecs[k]
        lhs = dwJ(X, Y, Z) * 2
        rhs = dw(JV[i], Y, Z) + dw(X, JV[j], Z) + dw(X, Y, JV[k]) + dw(JV[i], JV[j], JV[k])
        out.append(Defect("complex commuting", f"({c[i]},{c[j]},{c[k]})", lhs - rhs))
    return out


def sc_structure_check(omega: KForm, J: EndoField) -> CheckReport:
    """Symplectic + complex: checked directly and through the twist-free Hitchin form."""
    chart = _same_chart(omega, J)
    symp = [
        CheckReport.from_defects("d omega = 0", _closed_defects("d omega = 0", omega)),
        CheckReport.from_defects("non-degenerate", [nondegeneracy_defect(omega)]),
    ]
    direct = _complex_preconditions(J, omega)
    twisted = [
        CheckReport.from_defects("d omega_J = 0", _closed_defects("d omega_J = 0", twisted_form(J, omega))),
        CheckReport.from_defects("omega + J*omega = 0", [
            Defect("omega + J*omega = 0", str(idx), x.component(idx))
            for x in [omega + form_pullback_by_endo(J, omega)]
            for idx in increasing(chart.dimension, 2)
        ]),
    ]
    first = all(r.certified for r in symp + direct)
    second = all(r.certified for r in symp + twisted[:1] + [direct[2]] + twisted[1:])
    agree = CheckReport.from_defects("characterizations agree", [
        Defect("characterizations agree", f"direct={first}, twisted={second}",
               RatPoly.constant(int(first != second), chart.coordinates))])
    return CheckReport.combine("sc", symp + direct + twisted + [agree])
