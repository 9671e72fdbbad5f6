"""Polynomial tensor fields on a single coordinate chart.

Sign conventions:

* ``KForm`` components are stored on increasing index tuples and evaluate on
  vectors by the determinant rule, so ``(dx0^dx1)(d/dx0, d/dx1) = 1``.
* ``sharp_form(s)`` sends ``X`` to ``i_X s``; its matrix has ``S[j][i] = s_ij``.
* ``sharp_bivector(p)`` is fixed by ``b(p#(a)) = p(a, b)``; its matrix has
  ``P[j][i] = p^ij``. Hence the bivector inverse to ``dx^dy`` is ``-d/dx ^ d/dy``.
* ``contract2(X, Y, t)`` is ``t(X, Y, ...)``, i.e. insertion of ``X`` then ``Y``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import ChartMismatch, DimensionMismatch, NondegenerateInverseUnavailable
from .ratpoly import RatPoly, poly_sum
from .report import CheckReport, Defect

MAX_FORM_DEGREE = 4


@dataclass(frozen=True)
class Chart:
    coordinates: tuple[str, ...]

    def __post_init__(self):
        coords = tuple(self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if not coords:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise ValueError(f"coordinate names must be distinct: {coords}")

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "Chart":
        return cls(tuple(f"{prefix}{i}" for i in range(n)))

    @property
    def dimension(self) -> int:
        return len(self.coordinates)

    def zero(self) -> RatPoly:
        return RatPoly.zero(self.coordinates)

    def const(self, c) -> RatPoly:
        return RatPoly.constant(c, self.coordinates)

    def coord(self, i: int) -> RatPoly:
        return RatPoly.var(self.coordinates[i], self.coordinates)

    def poly(self, text) -> RatPoly:
        if isinstance(text, RatPoly):
            return text.with_variables(self.coordinates)
        if isinstance(text, (int, Fraction)):
            return self.const(text)
        return RatPoly.parse(str(text), self.coordinates)

    def index(self, name: str) -> int:
        return self.coordinates.index(name)

    def product(self, other: "Chart") -> "Chart":
        return Chart(self.coordinates + other.coordinates)

    def suffixed(self, suffix: str) -> "Chart":
        return Chart(tuple(f"{c}_{suffix}" for c in self.coordinates))


def _same_chart(*objs):
    charts = {o.chart for o in objs}
    if len(charts) != 1:
        raise ChartMismatch(f"objects live on different charts: {sorted(c.coordinates for c in charts)}")
    return charts.pop()


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 when an index repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# vector fields


@dataclass(frozen=True)
class VectorField:
    chart: Chart
    components: tuple[RatPoly, ...]

    def __post_init__(self):
        comps = tuple(self.chart.poly(c) for c in self.components)
        if len(comps) != self.chart.dimension:
            raise DimensionMismatch(f"vector field needs {self.chart.dimension} components")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, (chart.zero(),) * chart.dimension)

    @classmethod
    def basis(cls, chart: Chart, i: int) -> "VectorField":
        comps = [chart.zero()] * chart.dimension
        comps[i] = chart.const(1)
        return cls(chart, tuple(comps))

    def __getitem__(self, i):
        return self.components[i]

    def __add__(self, other: "VectorField") -> "VectorField":
        _same_chart(self, other)
        return VectorField(self.chart, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        _same_chart(self, other)
        return VectorField(self.chart, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, tuple(-a for a in self.components))

    def scale(self, f) -> "VectorField":
        f = self.chart.poly(f)
        return VectorField(self.chart, tuple(f * a for a in self.components))

    def apply(self, f: RatPoly) -> RatPoly:
        """Directional derivative X(f)."""
        coords = self.chart.coordinates
        return poly_sum((x * f.partial(name) for x, name in zip(self.components, coords) if x), coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def eval(self, point) -> list[Fraction]:
        return [Fraction(c.eval(point)) for c in self.components]


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    chart = _same_chart(X, Y)
    return VectorField(chart, tuple(X.apply(b) - Y.apply(a) for a, b in zip(X.components, Y.components)))


# ---------------------------------------------------------------------------
# differential forms


@dataclass(frozen=True)
class KForm:
    chart: Chart
    degree: int
    components: Mapping[tuple[int, ...], RatPoly]

    def __post_init__(self):
        n = self.chart.dimension
        if not 0 <= self.degree <= MAX_FORM_DEGREE:
            raise ValueError(f"form degree {self.degree} outside 0..{MAX_FORM_DEGREE}")
        comps: dict[tuple[int, ...], RatPoly] = {}
        for idx, val in dict(self.components).items():
            idx = tuple(idx)
            if len(idx) != self.degree or any(not 0 <= i < n for i in idx):
                raise DimensionMismatch(f"bad index {idx} for a {self.degree}-form on dim {n}")
            sign = _perm_sign(idx)
            if sign == 0:
                continue
            key = tuple(sorted(idx))
            p = self.chart.poly(val) * sign
            comps[key] = comps[key] + p if key in comps else p
        object.__setattr__(self, "components", {k: v for k, v in sorted(comps.items()) if not v.is_zero()})

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "KForm":
        return cls(chart, degree, {})

    @classmethod
    def function(cls, chart: Chart, f) -> "KForm":
        return cls(chart, 0, {(): chart.poly(f)})

    @classmethod
    def basis(cls, chart: Chart, idx: Sequence[int]) -> "KForm":
        return cls(chart, len(idx), {tuple(idx): chart.const(1)})

    @classmethod
    def one_form(cls, chart: Chart, coeffs: Sequence) -> "KForm":
        return cls(chart, 1, {(i,): c for i, c in enumerate(coeffs)})

    def component(self, idx: Sequence[int]) -> RatPoly:
        sign = _perm_sign(idx)
        if sign == 0:
            return self.chart.zero()
        p = self.components.get(tuple(sorted(idx)))
        if p is None:
            return self.chart.zero()
        return p if sign == 1 else -p

    def as_list(self) -> list[RatPoly]:
        """Coefficient list of a 1-form."""
        if self.degree != 1:
            raise ValueError("as_list is only defined for 1-forms")
        return [self.component((i,)) for i in range(self.chart.dimension)]

    def as_function(self) -> RatPoly:
        if self.degree != 0:
            raise ValueError("not a 0-form")
        return self.component(())

    def _check(self, other: "KForm"):
        _same_chart(self, other)
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        comps = dict(self.components)
        for k, v in other.components.items():
            comps[k] = comps[k] + v if k in comps else v
        return KForm(self.chart, self.degree, comps)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return KForm(self.chart, self.degree, {k: -v for k, v in self.components.items()})

    def scale(self, f) -> "KForm":
        f = self.chart.poly(f)
        return KForm(self.chart, self.degree, {k: f * v for k, v in self.components.items()})

    def is_zero(self) -> bool:
        return not self.components

    def __call__(self, *vectors: VectorField) -> RatPoly:
        """Evaluate on ``degree`` vector fields (determinant convention)."""
        if len(vectors) != self.degree:
            raise ValueError(f"{self.degree}-form needs {self.degree} arguments")
        if self.degree == 0:
            return self.as_function()
        _same_chart(self, *vectors)
        coords = self.chart.coordinates
        terms = []
        k = self.degree
        perms = [(p, _perm_sign(p)) for p in itertools.permutations(range(k))]
        for idx, coef in self.components.items():
            for perm, sign in perms:
                prod = coef
                for slot, j in enumerate(perm):
                    c = vectors[slot].components[idx[j]]
                    if c.is_zero():
                        prod = None
                        break
                    prod = prod * c
                if prod is not None:
                    terms.append(prod if sign == 1 else -prod)
        return poly_sum(terms, coords)

    def eval(self, point) -> dict[tuple[int, ...], Fraction]:
        return {k: Fraction(v.eval(point)) for k, v in self.components.items()}


def increasing(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), k))


def wedge(alpha: KForm, beta: KForm) -> KForm:
    chart = _same_chart(alpha, beta)
    out: dict[tuple[int, ...], list[RatPoly]] = {}
    for I, a in alpha.components.items():
        for K, b in beta.components.items():
            idx = I + K
            sign = _perm_sign(idx)
            if sign == 0:
                continue
            key = tuple(sorted(idx))
            p = a * b
            out.setdefault(key, []).append(p if sign == 1 else -p)
    return KForm(chart, alpha.degree + beta.degree,
                 {k: poly_sum(v, chart.coordinates) for k, v in out.items()})


def exterior_d(alpha: KForm) -> KForm:
    chart = alpha.chart
    n, k = chart.dimension, alpha.degree
    if k >= n:
        return KForm.zero(chart, k + 1)
    coords = chart.coordinates
    out = {}
    for J in increasing(n, k + 1):
        terms = []
        for pos, j in enumerate(J):
            rest = J[:pos] + J[pos + 1:]
            c = alpha.components.get(rest)
            if c is not None:
                d = c.partial(coords[j])
                if d:
                    terms.append(d if pos % 2 == 0 else -d)
        if terms:
            out[J] = poly_sum(terms, coords)
    return KForm(chart, k + 1, out)


def d_function(f: RatPoly, chart: Chart) -> KForm:
    return exterior_d(KForm.function(chart, f))


def interior(X: VectorField, alpha: KForm) -> KForm:
    chart = _same_chart(X, alpha)
    if alpha.degree == 0:
        raise ValueError("cannot contract a vector into a 0-form")
    n, k = chart.dimension, alpha.degree
    out = {}
    for J in increasing(n, k - 1):
        terms = []
        for i, x in enumerate(X.components):
            if x.is_zero() or i in J:
                continue
            c = alpha.component((i,) + J)
            if c:
                terms.append(x * c)
        if terms:
            out[J] = poly_sum(terms, chart.coordinates)
    return KForm(chart, k - 1, out)


def contract2(X: VectorField, Y: VectorField, alpha: KForm) -> KForm:
    """``alpha(X, Y, ...)``: insert X into the first slot, then Y."""
    return interior(Y, interior(X, alpha))


def lie_derivative(X: VectorField, alpha: KForm) -> KForm:
    """Coordinate formula (L_X a)_I = X(a_I) + sum_l sum_j d_{i_l} X^j a_{..j..}."""
    chart = _same_chart(X, alpha)
    n, k = chart.dimension, alpha.degree
    coords = chart.coordinates
    dX = [[X.components[j].partial(coords[i]) for j in range(n)] for i in range(n)]
    out = {}
    for I in increasing(n, k):
        terms = []
        c = alpha.components.get(I)
        if c is not None:
            terms.append(X.apply(c))
        for slot, i in enumerate(I):
            for j in range(n):
                g = dX[i][j]
                if g.is_zero():
                    continue
                idx = I[:slot] + (j,) + I[slot + 1:]
                a = alpha.component(idx)
                if a:
                    terms.append(g * a)
        if terms:
            out[I] = poly_sum(terms, coords)
    return KForm(chart, k, out)


def lie_derivative_cartan(X: VectorField, alpha: KForm) -> KForm:
    """L_X = i_X d + d i_X, used as an independent check of ``lie_derivative``."""
    if alpha.degree == 0:
        return KForm.function(alpha.chart, X.apply(alpha.as_function()))
    return interior(X, exterior_d(alpha)) + exterior_d(interior(X, alpha))


def koszul_d2(sigma: KForm, X: VectorField, Y: VectorField, Z: VectorField) -> RatPoly:
    """Six-term invariant formula for d(sigma)(X, Y, Z)."""
    if sigma.degree != 2:
        raise ValueError("koszul_d2 needs a 2-form")
    _same_chart(sigma, X, Y, Z)
    return (X.apply(sigma(Y, Z)) + Y.apply(sigma(Z, X)) + Z.apply(sigma(X, Y))
            - sigma(lie_bracket(X, Y), Z) - sigma(lie_bracket(Z, X), Y) - sigma(lie_bracket(Y, Z), X))


# ---------------------------------------------------------------------------
# bivectors and bundle maps


@dataclass(frozen=True)
class Bivector:
    chart: Chart
    components: Mapping[tuple[int, int], RatPoly]

    def __post_init__(self):
        as_form = KForm(self.chart, 2, self.components)
        object.__setattr__(self, "components", dict(as_form.components))

    @classmethod
    def zero(cls, chart: Chart) -> "Bivector":
        return cls(chart, {})

    def component(self, i: int, j: int) -> RatPoly:
        if i == j:
            return self.chart.zero()
        if i < j:
            return self.components.get((i, j), self.chart.zero())
        return -self.components.get((j, i), self.chart.zero())

    def __call__(self, xi: KForm, eta: KForm) -> RatPoly:
        """pi(xi, eta) = sum pi^ij xi_i eta_j."""
        chart = _same_chart(self, xi, eta)
        a, b = xi.as_list(), eta.as_list()
        terms = []
        for (i, j), p in self.components.items():
            t = a[i] * b[j] - a[j] * b[i]
            if t:
                terms.append(p * t)
        return poly_sum(terms, chart.coordinates)

    def __neg__(self) -> "Bivector":
        return Bivector(self.chart, {k: -v for k, v in self.components.items()})

    def __add__(self, other: "Bivector") -> "Bivector":
        _same_chart(self, other)
        comps = dict(self.components)
        for k, v in other.components.items():
            comps[k] = comps[k] + v if k in comps else v
        return Bivector(self.chart, comps)

    def is_zero(self) -> bool:
        return not self.components


@dataclass(frozen=True)
class BundleMap:
    """A bundle map between TM and T*M given by its matrix on component columns."""

    chart: Chart
    matrix: tuple[tuple[RatPoly, ...], ...]
    source: str  # "T" or "T*"
    target: str

    def __post_init__(self):
        n = self.chart.dimension
        rows = tuple(tuple(self.chart.poly(x) for x in row) for row in self.matrix)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DimensionMismatch(f"bundle map needs a {n}x{n} matrix")
        object.__setattr__(self, "matrix", rows)

    def as_lists(self) -> linalg.PolyMatrix:
        return [list(r) for r in self.matrix]

    def _apply(self, comps: Sequence[RatPoly]) -> list[RatPoly]:
        return linalg.matvec(self.matrix, comps, self.chart.coordinates)

    def __call__(self, arg):
        if self.source == "T":
            if not isinstance(arg, VectorField):
                raise TypeError("expects a vector field")
            comps = self._apply(arg.components)
        else:
            if not isinstance(arg, KForm) or arg.degree != 1:
                raise TypeError("expects a 1-form")
            comps = self._apply(arg.as_list())
        _same_chart(self, arg)
        if self.target == "T":
            return VectorField(self.chart, tuple(comps))
        return KForm.one_form(self.chart, comps)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.matrix for x in row)


def sharp_form(sigma: KForm) -> BundleMap:
    if sigma.degree != 2:
        raise ValueError("sharp_form needs a 2-form")
    n = sigma.chart.dimension
    mat = [[sigma.component((i, j)) for i in range(n)] for j in range(n)]
    return BundleMap(sigma.chart, mat, "T", "T*")


def sharp_bivector(pi: Bivector) -> BundleMap:
    n = pi.chart.dimension
    mat = [[pi.component(i, j) for i in range(n)] for j in range(n)]
    return BundleMap(pi.chart, mat, "T*", "T")


def form_from_sharp(chart: Chart, matrix: linalg.PolyMatrix) -> KForm:
    """The 2-form whose sharp matrix is ``matrix`` (upper triangle is read)."""
    n = chart.dimension
    return KForm(chart, 2, {(i, j): matrix[j][i] for i in range(n) for j in range(i + 1, n)})


def bivector_from_sharp(chart: Chart, matrix: linalg.PolyMatrix) -> Bivector:
    n = chart.dimension
    return Bivector(chart, {(i, j): matrix[j][i] for i in range(n) for j in range(i + 1, n)})


def _constant_inverse(chart: Chart, mat: linalg.PolyMatrix, what: str) -> linalg.PolyMatrix:
    det, adj = linalg.char_poly_and_adjugate(mat, chart.coordinates)
    if det.is_zero() or not det.is_constant():
        raise NondegenerateInverseUnavailable(
            f"{what} has determinant {det}; a polynomial inverse needs a nonzero constant")
    inv = Fraction(1) / Fraction(det.constant_term())
    return linalg.matscale(adj, inv)


def invert_2form(omega: KForm) -> Bivector:
    """Bivector ``pi`` with ``pi# = (omega#)^-1``."""
    S = sharp_form(omega).as_lists()
    P = _constant_inverse(omega.chart, S, "the 2-form")
    return bivector_from_sharp(omega.chart, P)


def invert_bivector(pi: Bivector) -> KForm:
    """2-form ``omega`` with ``omega# = (pi#)^-1``."""
    P = sharp_bivector(pi).as_lists()
    S = _constant_inverse(pi.chart, P, "the bivector")
    return form_from_sharp(pi.chart, S)


# ---------------------------------------------------------------------------
# (1,1)-tensors


@dataclass(frozen=True)
class EndoField:
    chart: Chart
    matrix: tuple[tuple[RatPoly, ...], ...]

    def __post_init__(self):
        n = self.chart.dimension
        rows = tuple(tuple(self.chart.poly(x) for x in row) for row in self.matrix)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DimensionMismatch(f"endomorphism needs a {n}x{n} matrix")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, chart: Chart, scale=1) -> "EndoField":
        return cls(chart, linalg.identity(chart.dimension, chart.coordinates, scale))

    @classmethod
    def zero(cls, chart: Chart) -> "EndoField":
        return cls(chart, linalg.zeros(chart.dimension, chart.dimension, chart.coordinates))

    def as_lists(self) -> linalg.PolyMatrix:
        return [list(r) for r in self.matrix]

    def __call__(self, X: VectorField) -> VectorField:
        _same_chart(self, X)
        return VectorField(self.chart, tuple(linalg.matvec(self.matrix, X.components, self.chart.coordinates)))

    def dual(self) -> BundleMap:
        """The transpose a* acting on 1-forms."""
        return BundleMap(self.chart, linalg.transpose(self.as_lists()), "T*", "T*")

    def apply_dual(self, xi: KForm) -> KForm:
        return self.dual()(xi)

    def __matmul__(self, other: "EndoField") -> "EndoField":
        _same_chart(self, other)
        return EndoField(self.chart, linalg.matmul(self.as_lists(), other.as_lists(), self.chart.coordinates))

    def __add__(self, other: "EndoField") -> "EndoField":
        _same_chart(self, other)
        return EndoField(self.chart, linalg.matadd(self.as_lists(), other.as_lists()))

    def __sub__(self, other: "EndoField") -> "EndoField":
        _same_chart(self, other)
        return EndoField(self.chart, linalg.matsub(self.as_lists(), other.as_lists()))

    def __neg__(self) -> "EndoField":
        return EndoField(self.chart, linalg.matscale(self.as_lists(), -1))

    def scale(self, c) -> "EndoField":
        return EndoField(self.chart, linalg.matscale(self.as_lists(), c))

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.matrix for x in row)

    def eval(self, point) -> list[list[Fraction]]:
        return linalg.evaluate(self.as_lists(), point)


def nijenhuis(a: EndoField, X: VectorField, Y: VectorField) -> VectorField:
    """N_a(X,Y) = [aX,aY] + a^2[X,Y] - a([aX,Y] + [X,aY])."""
    aX, aY = a(X), a(Y)
    return (lie_bracket(aX, aY) + a(a(lie_bracket(X, Y)))
            - a(lie_bracket(aX, Y) + lie_bracket(X, aY)))


def form_pullback_by_endo(a: EndoField, omega: KForm) -> KForm:
    """(a*omega)(X, Y) = omega(aX, aY)."""
    chart = _same_chart(a, omega)
    S = sharp_form(omega).as_lists()
    A = a.as_lists()
    M = linalg.matmul(linalg.matmul(linalg.transpose(A), S, chart.coordinates), A, chart.coordinates)
    return form_from_sharp(chart, M)


# ---------------------------------------------------------------------------
# polynomial maps


@dataclass(frozen=True)
class PolyMap:
    source: Chart
    target: Chart
    components: tuple[RatPoly, ...]

    def __post_init__(self):
        comps = tuple(self.source.poly(c) for c in self.components)
        if len(comps) != self.target.dimension:
            raise DimensionMismatch(f"map needs {self.target.dimension} components")
        object.__setattr__(self, "components", comps)

    @classmethod
    def identity(cls, chart: Chart) -> "PolyMap":
        return cls(chart, chart, tuple(chart.coord(i) for i in range(chart.dimension)))

    def jacobian(self) -> linalg.PolyMatrix:
        """``J[i][j] = d f_i / d x_j``."""
        return [[f.partial(name) for name in self.source.coordinates] for f in self.components]

    def compose_poly(self, p: RatPoly) -> RatPoly:
        """``p o f`` for a polynomial on the target chart."""
        p = p.with_variables(self.target.coordinates)
        return p.compose(self.components, self.source.coordinates)

    def compose_matrix(self, m: Sequence[Sequence[RatPoly]]) -> linalg.PolyMatrix:
        return [[self.compose_poly(x) for x in row] for row in m]

    def then(self, g: "PolyMap") -> "PolyMap":
        """``g o self``."""
        if g.source != self.target:
            raise ChartMismatch("maps are not composable")
        return PolyMap(self.source, g.target, tuple(self.compose_poly(c) for c in g.components))

    def __call__(self, point) -> list[Fraction]:
        return [Fraction(c.eval(point)) for c in self.components]


def pullback(f: PolyMap, alpha: KForm) -> KForm:
    if alpha.chart != f.target:
        raise ChartMismatch("form does not live on the target chart of the map")
    src = f.source
    dfs = [d_function(c, src) for c in f.components]
    out = KForm.zero(src, alpha.degree)
    for I, coef in alpha.components.items():
        piece = KForm.function(src, f.compose_poly(coef))
        for i in I:
            piece = wedge(piece, dfs[i])
        out = out + piece
    return out


def pushforward_bivector_check(f: PolyMap, pi1: Bivector, pi2: Bivector) -> CheckReport:
    """Certify ``df o pi1# o (df)* = pi2# o f`` componentwise."""
    if pi1.chart != f.source or pi2.chart != f.target:
        raise ChartMismatch("bivectors do not match the map's charts")
    coords = f.source.coordinates
    D = f.jacobian()
    P1 = sharp_bivector(pi1).as_lists()
    pushed = linalg.matmul(linalg.matmul(D, P1, coords), linalg.transpose(D), coords)
    P2f = f.compose_matrix(sharp_bivector(pi2).as_lists())
    names = f.target.coordinates
    defects = [
        Defect("f-related bivectors", f"({names[i]},{names[j]})", pushed[i][j] - P2f[i][j])
        for i in range(len(names)) for j in range(len(names))
    ]
    return CheckReport.from_defects("pushforward_bivector_check", defects)
