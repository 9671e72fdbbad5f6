"""The generalized tangent bundle TM + T*M and the conditions on a triple (a, pi, sigma).

Condition labels used in reports: ``(C1)`` the Poisson condition, ``(2.1)`` and
``(2.2)`` relating pi and a, ``(3.1)`` and ``(3.2)`` relating pi, a, sigma,
``(4.1)`` and ``(4.2)`` relating sigma and a.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .linalg import GaussQ, I
from .ratpoly import RatPoly
from .report import CheckReport, Defect
from .tensorfield import (
    Bivector,
    Chart,
    EndoField,
    KForm,
    VectorField,
    _same_chart,
    bivector_from_sharp,
    contract2,
    d_function,
    exterior_d,
    form_from_sharp,
    increasing,
    lie_bracket,
    lie_derivative,
    nijenhuis,
    sharp_bivector,
    sharp_form,
)


def _vec_name(chart: Chart, i: int) -> str:
    return f"d/d{chart.coordinates[i]}"


def _form_name(chart: Chart, i: int) -> str:
    return f"d{chart.coordinates[i]}"


@dataclass(frozen=True)
class GSection:
    vector: VectorField
    form: KForm

    def __post_init__(self):
        if self.form.degree != 1:
            raise ValueError("the cotangent part of a section must be a 1-form")
        _same_chart(self.vector, self.form)

    @property
    def chart(self) -> Chart:
        return self.vector.chart

    @classmethod
    def of_vector(cls, X: VectorField) -> "GSection":
        return cls(X, KForm.zero(X.chart, 1))

    @classmethod
    def of_form(cls, xi: KForm) -> "GSection":
        return cls(VectorField.zero(xi.chart), xi)

    @classmethod
    def basis(cls, chart: Chart, k: int) -> "GSection":
        """k < n gives (d/dx_k, 0); otherwise (0, dx_{k-n})."""
        n = chart.dimension
        if k < n:
            return cls.of_vector(VectorField.basis(chart, k))
        return cls.of_form(KForm.basis(chart, (k - n,)))

    def __add__(self, other: "GSection") -> "GSection":
        return GSection(self.vector + other.vector, self.form + other.form)

    def __sub__(self, other: "GSection") -> "GSection":
        return GSection(self.vector - other.vector, self.form - other.form)

    def __neg__(self) -> "GSection":
        return GSection(-self.vector, -self.form)

    def scale(self, f) -> "GSection":
        return GSection(self.vector.scale(f), self.form.scale(f))

    def is_zero(self) -> bool:
        return self.vector.is_zero() and self.form.is_zero()

    def components(self) -> list[RatPoly]:
        return list(self.vector.components) + self.form.as_list()


def _basis_label(chart: Chart, k: int) -> str:
    n = chart.dimension
    return _vec_name(chart, k) if k < n else _form_name(chart, k - n)


def _apply_sharp(P, comps, chart):
    return linalg.matvec(P, comps, chart.coordinates)


@dataclass(frozen=True, eq=True)
class GeneralizedStructure:
    """The triple behind the block operator [[a, pi#], [sigma#, -a*]]."""

    a: EndoField
    pi: Bivector
    sigma: KForm

    def __post_init__(self):
        if self.sigma.degree != 2:
            raise ValueError("sigma must be a 2-form")
        _same_chart(self.a, self.pi, self.sigma)

    @property
    def chart(self) -> Chart:
        return self.a.chart

    @cached_property
    def A(self) -> linalg.PolyMatrix:
        return self.a.as_lists()

    @cached_property
    def At(self) -> linalg.PolyMatrix:
        return linalg.transpose(self.A)

    @cached_property
    def P(self) -> linalg.PolyMatrix:
        return sharp_bivector(self.pi).as_lists()

    @cached_property
    def S(self) -> linalg.PolyMatrix:
        return sharp_form(self.sigma).as_lists()

    def block_matrix(self) -> linalg.PolyMatrix:
        n = self.chart.dimension
        top = [self.A[i] + self.P[i] for i in range(n)]
        bottom = [self.S[i] + [-x for x in self.At[i]] for i in range(n)]
        return top + bottom


def structure_from_block(chart: Chart, M: linalg.PolyMatrix) -> GeneralizedStructure:
    """Read (a, pi, sigma) off a 2n x 2n block matrix (lower-right block ignored)."""
    n = chart.dimension
    a = EndoField(chart, [row[:n] for row in M[:n]])
    pi = bivector_from_sharp(chart, [row[n:] for row in M[:n]])
    sigma = form_from_sharp(chart, [row[:n] for row in M[n:]])
    return GeneralizedStructure(a, pi, sigma)


# ---------------------------------------------------------------------------
# pairing, bracket, J


def pairing(alpha: GSection, beta: GSection) -> RatPoly:
    _same_chart(alpha, beta)
    return alpha.form(beta.vector) + beta.form(alpha.vector)


def courant_bracket(alpha: GSection, beta: GSection) -> GSection:
    chart = _same_chart(alpha, beta)
    X, xi = alpha.vector, alpha.form
    Y, eta = beta.vector, beta.form
    h = (eta(X) - xi(Y)) * Fraction(1, 2)
    form = lie_derivative(X, eta) - lie_derivative(Y, xi) - d_function(h, chart)
    return GSection(lie_bracket(X, Y), form)


def apply_J(s: GeneralizedStructure, alpha: GSection) -> GSection:
    chart = _same_chart(s, alpha)
    Xc, xic = alpha.vector.components, alpha.form.as_list()
    v = linalg.matadd([_apply_sharp(s.A, Xc, chart)], [_apply_sharp(s.P, xic, chart)])[0]
    f = linalg.matsub([_apply_sharp(s.S, Xc, chart)], [_apply_sharp(s.At, xic, chart)])[0]
    return GSection(VectorField(chart, tuple(v)), KForm.one_form(chart, f))


def integrability_defect(s: GeneralizedStructure, alpha: GSection, beta: GSection) -> GSection:
    """[Ja, Jb] - [a, b] - J([Ja, b] + [a, Jb])."""
    Ja, Jb = apply_J(s, alpha), apply_J(s, beta)
    return (courant_bracket(Ja, Jb) - courant_bracket(alpha, beta)
            - apply_J(s, courant_bracket(Ja, beta) + courant_bracket(alpha, Jb)))


def _section_defects(label: str, where: str, sec: GSection) -> list[Defect]:
    chart = sec.chart
    out = []
    for k, p in enumerate(sec.components()):
        out.append(Defect(label, f"{where} [{_basis_label(chart, k)}]", p))
    return out


def check_J_squared(s: GeneralizedStructure) -> CheckReport:
    chart = s.chart
    M = s.block_matrix()
    M2 = linalg.matmul(M, M, chart.coordinates)
    m = len(M)
    defects = [Defect("J^2 = -Id", f"[{i},{j}]", M2[i][j] + (1 if i == j else 0))
               for i in range(m) for j in range(m)]
    return CheckReport.from_defects("J^2 = -Id", defects)


def check_integrability(s: GeneralizedStructure, stop_early: bool = False) -> CheckReport:
    """Pointwise J^2 = -Id plus the Courant-Nijenhuis defect on all basis pairs.

    Independent of the C1-C4 checkers; given J^2 = -Id the defect is tensorial,
    so basis pairs suffice.
    """
    chart = s.chart
    sq = check_J_squared(s)
    if stop_early and not sq.certified:
        return CheckReport.combine("integrability", [sq])
    m = 2 * chart.dimension
    defects = []
    basis = [GSection.basis(chart, k) for k in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            sec = integrability_defect(s, basis[i], basis[j])
            where = f"{_basis_label(chart, i)}, {_basis_label(chart, j)}"
            defects.extend(_section_defects("integrability", where, sec))
            if stop_early and not sec.is_zero():
                break
        else:
            continue
        break
    return CheckReport.combine("integrability", [sq, CheckReport.from_defects("integrability", defects)])


# ---------------------------------------------------------------------------
# the bracket on 1-forms and (C1)-(C4)


def pi_bracket(pi: Bivector, xi: KForm, eta: KForm) -> KForm:
    """[xi, eta]_pi = L_{pi# xi} eta - L_{pi# eta} xi - d pi(xi, eta)."""
    chart = _same_chart(pi, xi, eta)
    sharp = sharp_bivector(pi)
    return (lie_derivative(sharp(xi), eta) - lie_derivative(sharp(eta), xi)
            - d_function(pi(xi, eta), chart))


def _basis_forms(chart: Chart) -> list[KForm]:
    return [KForm.basis(chart, (i,)) for i in range(chart.dimension)]


def _basis_vectors(chart: Chart) -> list[VectorField]:
    return [VectorField.basis(chart, i) for i in range(chart.dimension)]


def _vector_defects(label: str, where: str, X: VectorField) -> list[Defect]:
    return [Defect(label, f"{where} [{_vec_name(X.chart, k)}]", c) for k, c in enumerate(X.components)]


def _form_defects(label: str, where: str, xi: KForm) -> list[Defect]:
    return [Defect(label, f"{where} [{_form_name(xi.chart, k)}]", c) for k, c in enumerate(xi.as_list())]


def _matrix_defects(label: str, M: linalg.PolyMatrix) -> list[Defect]:
    return [Defect(label, f"[{i},{j}]", x) for i, row in enumerate(M) for j, x in enumerate(row)]


def poisson_defect(pi: Bivector, xi: KForm, eta: KForm) -> VectorField:
    sharp = sharp_bivector(pi)
    return sharp(pi_bracket(pi, xi, eta)) - lie_bracket(sharp(xi), sharp(eta))


def check_C1(pi: Bivector) -> CheckReport:
    """pi#[xi, eta]_pi = [pi# xi, pi# eta]; the defect is tensorial and skew, so i < j suffices."""
    chart = pi.chart
    forms = _basis_forms(chart)
    defects = []
    for i, j in increasing(chart.dimension, 2):
        where = f"xi={_form_name(chart, i)}, eta={_form_name(chart, j)}"
        defects.extend(_vector_defects("(C1)", where, poisson_defect(pi, forms[i], forms[j])))
    return CheckReport.from_defects("(C1)", defects)


def a_pi_commutation(pi: Bivector, a: EndoField) -> linalg.PolyMatrix:
    """a pi# - pi# a*."""
    chart = _same_chart(pi, a)
    A = a.as_lists()
    P = sharp_bivector(pi).as_lists()
    c = chart.coordinates
    return linalg.matsub(linalg.matmul(A, P, c), linalg.matmul(P, linalg.transpose(A), c))


def c22_defect(pi: Bivector, a: EndoField, xi: KForm, eta: KForm) -> KForm:
    """a*[xi,eta]_pi - L_{pi# xi}(a* eta) + L_{pi# eta}(a* xi) + d pi(a* xi, eta)."""
    sharp = sharp_bivector(pi)
    ad = a.dual()
    return (ad(pi_bracket(pi, xi, eta)) - lie_derivative(sharp(xi), ad(eta))
            + lie_derivative(sharp(eta), ad(xi)) + d_function(pi(ad(xi), eta), pi.chart))


def check_C2(pi: Bivector, a: EndoField) -> CheckReport:
    """(2.1) pointwise and (2.2) on basis 1-forms.

    The (2.2) defect is tensorial in eta outright and in xi once (2.1) holds,
    so basis generators decide the conjunction.
    """
    chart = _same_chart(pi, a)
    r21 = CheckReport.from_defects("(2.1)", _matrix_defects("(2.1)", a_pi_commutation(pi, a)))
    forms = _basis_forms(chart)
    defects = []
    for i, j in increasing(chart.dimension, 2):
        where = f"xi={_form_name(chart, i)}, eta={_form_name(chart, j)}"
        defects.extend(_form_defects("(2.2)", where, c22_defect(pi, a, forms[i], forms[j])))
    r22 = CheckReport.from_defects("(2.2)", defects)
    return CheckReport.combine("(C2)", [r21, r22])


def c31_matrix(pi: Bivector, a: EndoField, sigma: KForm) -> linalg.PolyMatrix:
    """a^2 + pi# sigma# + Id."""
    chart = _same_chart(pi, a, sigma)
    c = chart.coordinates
    A = a.as_lists()
    P = sharp_bivector(pi).as_lists()
    S = sharp_form(sigma).as_lists()
    return linalg.matadd(linalg.matadd(linalg.matmul(A, A, c), linalg.matmul(P, S, c)),
                         linalg.identity(chart.dimension, c))


def c32_defect(pi: Bivector, a: EndoField, dsigma: KForm, X: VectorField, Y: VectorField) -> VectorField:
    """N_a(X,Y) - pi# i_{X^Y} d sigma."""
    return nijenhuis(a, X, Y) - sharp_bivector(pi)(contract2(X, Y, dsigma))


def check_C3(pi: Bivector, a: EndoField, sigma: KForm) -> CheckReport:
    chart = _same_chart(pi, a, sigma)
    r31 = CheckReport.from_defects("(3.1)", _matrix_defects("(3.1)", c31_matrix(pi, a, sigma)))
    ds = exterior_d(sigma)
    vecs = _basis_vectors(chart)
    defects = []
    for i, j in increasing(chart.dimension, 2):
        where = f"X={_vec_name(chart, i)}, Y={_vec_name(chart, j)}"
        defects.extend(_vector_defects("(3.2)", where, c32_defect(pi, a, ds, vecs[i], vecs[j])))
    r32 = CheckReport.from_defects("(3.2)", defects)
    return CheckReport.combine("(C3)", [r31, r32])


def sigma_a_commutation(a: EndoField, sigma: KForm) -> linalg.PolyMatrix:
    """a* sigma# - sigma# a."""
    chart = _same_chart(a, sigma)
    c = chart.coordinates
    A = a.as_lists()
    S = sharp_form(sigma).as_lists()
    return linalg.matsub(linalg.matmul(linalg.transpose(A), S, c), linalg.matmul(S, A, c))


def twisted_form(a: EndoField, sigma: KForm) -> KForm:
    """sigma_a(X, Y) = sigma(aX, Y), read from its upper triangle."""
    chart = _same_chart(a, sigma)
    SA = linalg.matmul(sharp_form(sigma).as_lists(), a.as_lists(), chart.coordinates)
    return form_from_sharp(chart, SA)


def c42_defect(a: EndoField, sigma: KForm, X: VectorField, Y: VectorField, Z: VectorField):
    ds = exterior_d(sigma)
    dsa = exterior_d(twisted_form(a, sigma))
    return dsa(X, Y, Z) - (ds(a(X), Y, Z) + ds(X, a(Y), Z) + ds(X, Y, a(Z)))


def check_C4(a: EndoField, sigma: KForm) -> CheckReport:
    chart = _same_chart(a, sigma)
    r41 = CheckReport.from_defects("(4.1)", _matrix_defects("(4.1)", sigma_a_commutation(a, sigma)))
    ds = exterior_d(sigma)
    dsa = exterior_d(twisted_form(a, sigma))
    vecs = _basis_vectors(chart)
    aV = [a(v) for v in vecs]
    defects = []
    for i, j, k in increasing(chart.dimension, 3):
        X, Y, Z = vecs[i], vecs[j], vecs[k]
        lhs = dsa(X, Y, Z)
        rhs = ds(aV[i], Y, Z) + ds(X, aV[j], Z) + ds(X, Y, aV[k])
        where = f"({_vec_name(chart, i)}, {_vec_name(chart, j)}, {_vec_name(chart, k)})"
        defects.append(Defect("(4.2)", where, lhs - rhs))
    r42 = CheckReport.from_defects("(4.2)", defects)
    return CheckReport.combine("(C4)", [r41, r42])


def check_gcs(s: GeneralizedStructure) -> CheckReport:
    parts = [check_C1(s.pi), check_C2(s.pi, s.a), check_C3(s.pi, s.a, s.sigma), check_C4(s.a, s.sigma)]
    return CheckReport.combine("gcs", parts)


def pointwise_report(s: GeneralizedStructure) -> CheckReport:
    """Only the linear identities (2.1), (3.1), (4.1)."""
    return CheckReport.combine("pointwise", [
        CheckReport.from_defects("(2.1)", _matrix_defects("(2.1)", a_pi_commutation(s.pi, s.a))),
        CheckReport.from_defects("(3.1)", _matrix_defects("(3.1)", c31_matrix(s.pi, s.a, s.sigma))),
        CheckReport.from_defects("(4.1)", _matrix_defects("(4.1)", sigma_a_commutation(s.a, s.sigma))),
    ])


# ---------------------------------------------------------------------------
# transformations


def opposite(s: GeneralizedStructure) -> GeneralizedStructure:
    return GeneralizedStructure(s.a, -s.pi, -s.sigma)


def gauge(s: GeneralizedStructure, B: KForm) -> GeneralizedStructure:
    """Conjugation by [[1, 0], [B#, 1]]: a + pi#B#, pi, sigma# - B#a - a*B# - B#pi#B#."""
    chart = _same_chart(s, B)
    c = chart.coordinates
    Bs = sharp_form(B).as_lists()
    a_new = linalg.matadd(s.A, linalg.matmul(s.P, Bs, c))
    BA = linalg.matmul(Bs, s.A, c)
    AtB = linalg.matmul(s.At, Bs, c)
    BPB = linalg.matmul(linalg.matmul(Bs, s.P, c), Bs, c)
    S_new = linalg.matsub(linalg.matsub(linalg.matsub(s.S, BA), AtB), BPB)
    return GeneralizedStructure(EndoField(chart, a_new), s.pi, form_from_sharp(chart, S_new))


def gauge_by_conjugation(s: GeneralizedStructure, B: KForm) -> linalg.PolyMatrix:
    """The full 2n x 2n product [[1,0],[-B#,1]] J [[1,0],[B#,1]]."""
    chart = _same_chart(s, B)
    n, c = chart.dimension, chart.coordinates
    Bs = sharp_form(B).as_lists()
    left = linalg.identity(2 * n, c)
    right = linalg.identity(2 * n, c)
    for i in range(n):
        for j in range(n):
            left[n + i][j] = -Bs[i][j]
            right[n + i][j] = Bs[i][j]
    return linalg.matmul(linalg.matmul(left, s.block_matrix(), c), right, c)


def gauge_report(s: GeneralizedStructure, B: KForm) -> CheckReport:
    """Closedness of B plus agreement of ``gauge`` with explicit conjugation."""
    dB = exterior_d(B)
    closed = CheckReport.from_defects("dB = 0", [Defect("dB = 0", str(k), v) for k, v in dB.components.items()])
    g = gauge(s, B).block_matrix()
    conj = gauge_by_conjugation(s, B)
    agree = CheckReport.from_defects("gauge blocks", _matrix_defects("gauge blocks", linalg.matsub(g, conj)))
    return CheckReport.combine("gauge", [closed, agree])


# ---------------------------------------------------------------------------
# the Dirac structure L_{pi,a}


def dirac_section(pi: Bivector, a: EndoField, xi: KForm) -> GSection:
    return GSection(sharp_bivector(pi)(xi), a.dual()(xi))


def check_dirac(pi: Bivector, a: EndoField) -> CheckReport:
    """Isotropy and Courant involutivity of {(pi# xi, a* xi)}.

    Involutivity is tested through <[e_i, e_j], e_k> on basis generators, the
    criterion for a Lagrangian subbundle. The rank condition is reported
    separately from the Gram determinant of xi -> (pi# xi, a* xi).
    """
    chart = _same_chart(pi, a)
    n = chart.dimension
    gens = [dirac_section(pi, a, f) for f in _basis_forms(chart)]
    iso = []
    for i in range(n):
        for j in range(i, n):
            iso.append(Defect("isotropy", f"({_form_name(chart, i)}, {_form_name(chart, j)})",
                              pairing(gens[i], gens[j])))
    inv = []
    for i, j in increasing(n, 2):
        br = courant_bracket(gens[i], gens[j])
        for k in range(n):
            inv.append(Defect("involutivity",
                              f"<[e_{chart.coordinates[i]}, e_{chart.coordinates[j]}], e_{chart.coordinates[k]}>",
                              pairing(br, gens[k])))
    # rank: Gram matrix P^T P + A A^T of the generator map
    c = chart.coordinates
    P = sharp_bivector(pi).as_lists()
    A = a.as_lists()
    gram = linalg.matadd(linalg.matmul(linalg.transpose(P), P, c), linalg.matmul(A, linalg.transpose(A), c))
    gdet = linalg.determinant(gram, c)
    parts = [CheckReport.from_defects("isotropy", iso), CheckReport.from_defects("involutivity", inv)]
    notes = []
    if gdet.is_zero():
        parts.append(CheckReport.from_defects(
            "rank", [Defect("rank", "L has rank < dim M everywhere", RatPoly.constant(1, c))]))
    elif not gdet.is_constant():
        notes.append(f"rank is maximal away from the zero set of {gdet}")
    return CheckReport.combine("dirac", parts, notes)


# ---------------------------------------------------------------------------
# +i eigenspace at a point


def eigenspace_check(s: GeneralizedStructure, point) -> CheckReport:
    """L = {v - iJv} at a rational point: J w = i w, dim L = n, L + conj(L) spans."""
    chart = s.chart
    n = chart.dimension
    M = linalg.evaluate(s.block_matrix(), point)
    m = 2 * n
    ws = []
    for k in range(m):
        Jv = [M[r][k] for r in range(m)]
        ws.append([GaussQ(int(r == k)) - I * Jv[r] for r in range(m)])
    defects = []
    coords = chart.coordinates
    for k, w in enumerate(ws):
        Jw = [sum((GaussQ(M[r][c]) * w[c] for c in range(m)), GaussQ(0)) for r in range(m)]
        for r in range(m):
            diff = Jw[r] - I * w[r]
            defects.append(Defect("J w = i w", f"w_{k}[{r}] re", RatPoly.constant(diff.re, coords)))
            defects.append(Defect("J w = i w", f"w_{k}[{r}] im", RatPoly.constant(diff.im, coords)))
    rank_L = linalg.rank(ws)
    rank_all = linalg.rank(ws + [[x.conjugate() for x in w] for w in ws])
    defects.append(Defect("dim L = n", f"rank {rank_L}", RatPoly.constant(rank_L - n, coords)))
    defects.append(Defect("L + conj(L) spans", f"rank {rank_all}", RatPoly.constant(rank_all - m, coords)))
    return CheckReport.at_point("eigenspace", defects, list(zip(coords, point)))


# ---------------------------------------------------------------------------
# component equations of the integrability condition


def int1_defect(s: GeneralizedStructure, X: VectorField, xi: KForm) -> VectorField:
    a, sharp, ad = s.a, sharp_bivector(s.pi), s.a.dual()
    pxi = sharp(xi)
    lhs = lie_bracket(a(X), pxi) - a(lie_bracket(X, pxi))
    rhs = sharp(lie_derivative(a(X), xi) - lie_derivative(X, ad(xi)))
    return lhs - rhs


def int2_defect(s: GeneralizedStructure, X: VectorField, xi: KForm) -> KForm:
    chart = s.chart
    a, sharp, ad, ss = s.a, sharp_bivector(s.pi), s.a.dual(), sharp_form(s.sigma)
    pxi = sharp(xi)
    lhs = ss(lie_bracket(pxi, X)) - lie_derivative(pxi, ss(X))
    rhs = (lie_derivative(X, xi) + d_function(xi(sharp(ss(X))), chart)
           + lie_derivative(a(X), ad(xi)) - ad(lie_derivative(a(X), xi) - lie_derivative(X, ad(xi))))
    return lhs - rhs


def int3_defect(s: GeneralizedStructure, X: VectorField, Y: VectorField) -> VectorField:
    chart = s.chart
    a, sharp, ss = s.a, sharp_bivector(s.pi), sharp_form(s.sigma)
    aX, aY = a(X), a(Y)
    lhs = lie_bracket(X, Y) - lie_bracket(aX, aY) + a(lie_bracket(aX, Y) + lie_bracket(X, aY))
    inner = (lie_derivative(X, ss(Y)) - lie_derivative(Y, ss(X))
             + d_function(s.sigma(X, Y), chart))
    return lhs + sharp(inner)


def int4_defect(s: GeneralizedStructure, X: VectorField, Y: VectorField) -> KForm:
    chart = s.chart
    a, ad, ss = s.a, s.a.dual(), sharp_form(s.sigma)
    aX, aY = a(X), a(Y)
    lhs = (-lie_derivative(aX, ss(Y)) + lie_derivative(aY, ss(X))
           - d_function(s.sigma(aX, Y), chart) + ss(lie_bracket(aX, Y) + lie_bracket(X, aY)))
    inner = (lie_derivative(X, ss(Y)) - lie_derivative(Y, ss(X))
             + d_function(s.sigma(X, Y), chart))
    return lhs - ad(inner)


def proof_component_reports(s: GeneralizedStructure) -> dict[str, CheckReport]:
    """Named reports for (int1)-(int4) on basis vectors and 1-forms."""
    chart = s.chart
    n = chart.dimension
    vecs, forms = _basis_vectors(chart), _basis_forms(chart)
    d1, d2, d3, d4 = [], [], [], []
    for i in range(n):
        for j in range(n):
            where = f"X={_vec_name(chart, i)}, xi={_form_name(chart, j)}"
            d1.extend(_vector_defects("(int1)", where, int1_defect(s, vecs[i], forms[j])))
            d2.extend(_form_defects("(int2)", where, int2_defect(s, vecs[i], forms[j])))
    for i, j in increasing(n, 2):
        where = f"X={_vec_name(chart, i)}, Y={_vec_name(chart, j)}"
        d3.extend(_vector_defects("(int3)", where, int3_defect(s, vecs[i], vecs[j])))
        d4.extend(_form_defects("(int4)", where, int4_defect(s, vecs[i], vecs[j])))
    return {
        "(int1)": CheckReport.from_defects("(int1)", d1),
        "(int2)": CheckReport.from_defects("(int2)", d2),
        "(int3)": CheckReport.from_defects("(int3)", d3),
        "(int4)": CheckReport.from_defects("(int4)", d4),
    }
