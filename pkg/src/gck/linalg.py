"""Dense matrices of RatPoly entries, and exact linear algebra over Q and Q(i).

Polynomial matrices are plain ``list[list[RatPoly]]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ratpoly import RatPoly, as_rational, poly_sum

PolyMatrix = list[list[RatPoly]]


def zeros(rows: int, cols: int, variables) -> PolyMatrix:
    z = RatPoly.zero(variables)
    return [[z] * cols for _ in range(rows)]


def identity(n: int, variables, scale=1) -> PolyMatrix:
    m = zeros(n, n, variables)
    c = RatPoly.constant(scale, variables)
    for i in range(n):
        m[i][i] = c
    return m


def transpose(m: PolyMatrix) -> PolyMatrix:
    return [list(row) for row in zip(*m)] if m else []


def matmul(a: PolyMatrix, b: PolyMatrix, variables) -> PolyMatrix:
    bt = transpose(b)
    return [[poly_sum((x * y for x, y in zip(row, col) if x and y), variables) for col in bt] for row in a]


def matadd(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matsub(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a: PolyMatrix, c) -> PolyMatrix:
    return [[x * c for x in row] for row in a]


def matvec(a: PolyMatrix, v: Sequence[RatPoly], variables) -> list[RatPoly]:
    return [poly_sum((x * y for x, y in zip(row, v) if x and y), variables) for row in a]


def trace(a: PolyMatrix, variables) -> RatPoly:
    return poly_sum((a[i][i] for i in range(len(a))), variables)


def is_zero_matrix(a: PolyMatrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def char_poly_and_adjugate(a: PolyMatrix, variables) -> tuple[RatPoly, PolyMatrix]:
    """Determinant and adjugate by Faddeev-LeVerrier (divides only by integers)."""
    n = len(a)
    if n == 0:
        return RatPoly.constant(1, variables), []
    m = zeros(n, n, variables)
    c = RatPoly.constant(1, variables)
    eye = identity(n, variables)
    for k in range(1, n + 1):
        m = matadd(matmul(a, m, variables), matscale(eye, c)) if k > 1 else identity(n, variables)
        am = matmul(a, m, variables)
        c = trace(am, variables) * Fraction(-1, k)
    # after the loop c is the constant coefficient c_0 and m is M_n
    det = c * (-1) ** n
    adj = matscale(m, (-1) ** (n - 1))
    return det, adj


def determinant(a: PolyMatrix, variables) -> RatPoly:
    return char_poly_and_adjugate(a, variables)[0]


def evaluate(a: PolyMatrix, point) -> list[list[Fraction]]:
    return [[Fraction(x.eval(point)) for x in row] for row in a]


# exact linear algebra over a field given by its scalar type -----------------

def _rref(rows: list[list], zero, one):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: list[list]) -> int:
    if not rows or not rows[0]:
        return 0
    sample = rows[0][0]
    zero, one = (GaussQ(0), GaussQ(1)) if isinstance(sample, GaussQ) else (Fraction(0), Fraction(1))
    return len(_rref(rows, zero, one)[1])


def nullspace(rows: list[list[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0} over Q."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = _rref([[Fraction(x) for x in r] for r in rows], Fraction(0), Fraction(1))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """The unique solution of a x = b for square a over Q, or None when a is singular."""
    n = len(a)
    red, pivots = _rref([[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)],
                        Fraction(0), Fraction(1))
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def rat_matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def rat_matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


@dataclass(frozen=True)
class GaussQ:
    """Gaussian rational ``re + i*im``."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(as_rational(self.re)))
        object.__setattr__(self, "im", Fraction(as_rational(self.im)))

    @staticmethod
    def _lift(x) -> "GaussQ":
        return x if isinstance(x, GaussQ) else GaussQ(x)

    def __add__(self, o):
        o = self._lift(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __mul__(self, o):
        o = self._lift(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        den = o.re * o.re + o.im * o.im
        if not den:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussQ(o.re / den, -o.im / den)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if not isinstance(o, GaussQ):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)


I = GaussQ(0, 1)
