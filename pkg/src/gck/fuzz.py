"""Deterministic generators of random tensor data and of structures known to be (in)valid.

Valid structures are built constructively rather than by rejection sampling:
Hitchin pairs as a = c Id + pi# beta# with beta closed, complex structures as
pullbacks of the standard one along polynomial shears, and so on.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .courant import GeneralizedStructure, gauge
from .hitchin import HitchinPair, hitchin_to_gcs
from .ratpoly import RatPoly
from .tensorfield import (
    Bivector,
    Chart,
    EndoField,
    KForm,
    PolyMap,
    VectorField,
    exterior_d,
    form_pullback_by_endo,
    increasing,
    invert_2form,
    pullback,
    sharp_bivector,
    sharp_form,
)

COEFFS = (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3)


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    dim: int = 2
    degree: int = 1


class Fuzzer:
    def __init__(self, config: FuzzConfig):
        self.config = config
        self.rng = random.Random(config.seed)
        self.chart = Chart.standard(config.dim)

    @property
    def n(self) -> int:
        return self.chart.dimension

    # scalars and polynomials -------------------------------------------

    def coeff(self):
        return self.rng.choice(COEFFS)

    def monomial(self, degree: int, among=None) -> tuple[int, ...]:
        among = list(range(self.n)) if among is None else list(among)
        exps = [0] * self.n
        for _ in range(self.rng.randint(0, degree)):
            exps[self.rng.choice(among)] += 1
        return tuple(exps)

    def poly(self, degree: int | None = None, terms: int = 2, among=None, density: float = 0.8) -> RatPoly:
        degree = self.config.degree if degree is None else degree
        if self.rng.random() > density:
            return self.chart.zero()
        data = {}
        for _ in range(self.rng.randint(1, terms)):
            data[self.monomial(degree, among)] = self.coeff()
        return RatPoly.from_exponents(data, self.chart.coordinates)

    def vector(self, degree: int | None = None) -> VectorField:
        return VectorField(self.chart, tuple(self.poly(degree) for _ in range(self.n)))

    def form(self, k: int, degree: int | None = None, density: float = 0.8) -> KForm:
        return KForm(self.chart, k, {idx: self.poly(degree, density=density) for idx in increasing(self.n, k)})

    def bivector(self, degree: int | None = None, density: float = 0.6) -> Bivector:
        return Bivector(self.chart, {idx: self.poly(degree, density=density) for idx in increasing(self.n, 2)})

    def endo(self, degree: int | None = None, density: float = 0.5) -> EndoField:
        return EndoField(self.chart, [[self.poly(degree, density=density) for _ in range(self.n)]
                                      for _ in range(self.n)])

    def closed_two_form(self, degree: int | None = None) -> KForm:
        """d of a random 1-form, so coefficients have degree at most ``degree``."""
        degree = self.config.degree if degree is None else degree
        return exterior_d(self.form(1, degree + 1))

    # maps -----------------------------------------------------------------

    def shear(self, degree: int | None = None) -> PolyMap:
        """x_i -> x_i + g(x_j) for one pair i != j: polynomial with polynomial inverse."""
        degree = self.config.degree if degree is None else degree
        i, j = self.rng.sample(range(self.n), 2)
        g = self.poly(degree + 1, among=[j], density=1.0)
        comps = [self.chart.coord(k) for k in range(self.n)]
        comps[i] = comps[i] + g
        return PolyMap(self.chart, self.chart, tuple(comps))

    # symplectic and Hitchin data ----------------------------------------

    def standard_symplectic(self) -> KForm:
        comps = {(2 * k, 2 * k + 1): self.coeff() for k in range(self.n // 2)}
        return KForm(self.chart, 2, comps)

    def symplectic_form(self) -> KForm:
        """A constant Darboux-type form, pulled back along a shear half of the time."""
        omega = self.standard_symplectic()
        if self.rng.random() < 0.5:
            omega = pullback(self.shear(max(self.config.degree - 1, 0)), omega)
        return omega

    def hitchin_pair(self) -> HitchinPair:
        return self.hitchin_pair_with(self.symplectic_form())

    def hitchin_pair_with(self, omega: KForm) -> HitchinPair:
        """A Hitchin pair (omega, c Id + omega^-1 B) for a random closed B."""
        P = sharp_bivector(invert_2form(omega)).as_lists()
        B = sharp_form(self.closed_two_form()).as_lists()
        c = self.rng.choice((0, 1, -1, 2, Fraction(1, 2)))
        A = linalg.matadd(linalg.identity(self.n, self.chart.coordinates, c),
                          linalg.matmul(P, B, self.chart.coordinates))
        return HitchinPair(omega, EndoField(self.chart, A))

    def commuting_pair(self) -> HitchinPair:
        """(omega, a) with omega arbitrary and a = f Id + adj(omega#) beta#; they always commute."""
        omega = self.form(2, self.config.degree)
        c = self.chart.coordinates
        _, adj = linalg.char_poly_and_adjugate(sharp_form(omega).as_lists(), c)
        B = sharp_form(self.form(2, self.config.degree, density=0.5)).as_lists()
        f = self.poly(self.config.degree)
        A = linalg.matmul(adj, B, c)
        for i in range(self.n):
            A[i][i] = A[i][i] + f
        return HitchinPair(omega, EndoField(self.chart, A))

    # complex data -------------------------------------------------------

    def standard_complex(self) -> EndoField:
        n = self.n
        M = linalg.zeros(n, n, self.chart.coordinates)
        one = self.chart.const(1)
        for k in range(n // 2):
            M[2 * k + 1][2 * k] = one
            M[2 * k][2 * k + 1] = -one
        return EndoField(self.chart, M)

    def complex_structure(self, shears: int = 1) -> EndoField:
        """Pullback of the standard complex structure along polynomial shears (integrable)."""
        J = self.standard_complex().as_lists()
        c = self.chart.coordinates
        for _ in range(shears):
            f = self.shear(max(self.config.degree - 1, 0))
            D = f.jacobian()
            Dinv = [[x if i == j else -x for j, x in enumerate(row)] for i, row in enumerate(D)]
            J = linalg.matmul(linalg.matmul(Dinv, f.compose_matrix(J), c), D, c)
        return EndoField(self.chart, J)

    def almost_complex_structure(self) -> EndoField:
        """Conjugate of the standard one by I + g E_ij; usually not integrable when n >= 4."""
        c = self.chart.coordinates
        i, j = self.rng.sample(range(self.n), 2)
        g = self.poly(self.config.degree, density=1.0)
        Phi = linalg.identity(self.n, c)
        Phi_inv = linalg.identity(self.n, c)
        Phi[i][j] = g
        Phi_inv[i][j] = -g
        J = linalg.matmul(linalg.matmul(Phi, self.standard_complex().as_lists(), c), Phi_inv, c)
        return EndoField(self.chart, J)

    # generalized structures --------------------------------------------

    def nondegenerate_gcs(self) -> GeneralizedStructure:
        return hitchin_to_gcs(self.hitchin_pair())

    def complex_gcs(self) -> GeneralizedStructure:
        return GeneralizedStructure(self.complex_structure(), Bivector.zero(self.chart), KForm.zero(self.chart, 2))

    def mixed_gcs(self) -> GeneralizedStructure:
        """Symplectic on (x0, x1), complex on the remaining pairs, then gauged by a closed B."""
        n, c = self.n, self.chart.coordinates
        A = linalg.zeros(n, n, c)
        one = self.chart.const(1)
        for k in range(1, n // 2):
            A[2 * k + 1][2 * k] = one
            A[2 * k][2 * k + 1] = -one
        w = self.coeff()
        sigma = KForm(self.chart, 2, {(0, 1): -w})
        pi = Bivector(self.chart, {(0, 1): -Fraction(1) / Fraction(w)})
        s = GeneralizedStructure(EndoField(self.chart, A), pi, sigma)
        return gauge(s, self.closed_two_form())

    def valid_gcs(self) -> GeneralizedStructure:
        """One of several constructive families; needs an even dimension."""
        if self.n % 2:
            raise ValueError("generalized complex structures need an even dimension")
        kinds = ["nondegenerate", "nondegenerate", "gauged", "complex", "complex_gauged"]
        if self.n >= 4:
            kinds.append("mixed")
        kind = self.rng.choice(kinds)
        if kind == "nondegenerate":
            return self.nondegenerate_gcs()
        if kind == "gauged":
            return gauge(self.nondegenerate_gcs(), self.closed_two_form())
        if kind == "complex":
            return self.complex_gcs()
        if kind == "complex_gauged":
            return gauge(self.complex_gcs(), self.closed_two_form())
        return self.mixed_gcs()

    def perturb(self, s: GeneralizedStructure) -> GeneralizedStructure:
        """Change one of a, pi, sigma by a small random term."""
        which = self.rng.choice(("a", "pi", "sigma", "sigma_const"))
        if which == "a":
            A = s.a.as_lists()
            i, j = self.rng.randrange(self.n), self.rng.randrange(self.n)
            A[i][j] = A[i][j] + self.poly(self.config.degree, density=1.0)
            return GeneralizedStructure(EndoField(self.chart, A), s.pi, s.sigma)
        if which == "pi":
            i, j = sorted(self.rng.sample(range(self.n), 2))
            extra = Bivector(self.chart, {(i, j): self.poly(self.config.degree, density=1.0)})
            return GeneralizedStructure(s.a, s.pi + extra, s.sigma)
        i, j = sorted(self.rng.sample(range(self.n), 2))
        term = self.coeff() if which == "sigma_const" else self.poly(self.config.degree, density=1.0)
        return GeneralizedStructure(s.a, s.pi, s.sigma + KForm(self.chart, 2, {(i, j): term}))

    def random_gcs(self) -> GeneralizedStructure:
        return GeneralizedStructure(self.endo(), self.bivector(), self.form(2))

    def structure(self, valid_fraction: float = 0.5) -> GeneralizedStructure:
        """A valid structure, perturbed with probability 1 - valid_fraction.

        Odd dimensions carry no generalized complex structure, so there the
        triple is random.
        """
        if self.n % 2:
            return self.random_gcs()
        s = self.valid_gcs()
        if self.rng.random() >= valid_fraction:
            s = self.perturb(s)
        return s

    def almost_complex_gcs(self, integrable: bool | None = None, commuting: bool = True) -> GeneralizedStructure:
        """pi = 0 and a an almost complex structure, so (C1), (C2) and (3.1) hold.

        With ``commuting`` the 2-form is beta - a*beta, which commutes with a, so
        (4.1) holds as well while (3.2) and (4.2) vary.
        """
        if integrable is None:
            integrable = self.rng.random() < 0.5
        a = self.complex_structure() if integrable else self.almost_complex_structure()
        beta = self.form(2, self.config.degree, density=0.5)
        sigma = beta - form_pullback_by_endo(a, beta) if commuting else beta
        return GeneralizedStructure(a, Bivector.zero(self.chart), sigma)

    def audit_structure(self) -> GeneralizedStructure:
        """A triple satisfying (C1), (C2), (3.1) and (4.1); (3.2) and (4.2) vary.

        These are the instances on which the component equations of the
        integrability condition are compared with (3.2) and (4.2).
        """
        kind = self.rng.choice(("valid", "integrable", "almost", "almost", "bare"))
        if kind == "valid":
            return self.valid_gcs()
        s = self.almost_complex_gcs(integrable=kind == "integrable")
        if kind == "bare":
            s = GeneralizedStructure(s.a, s.pi, KForm.zero(self.chart, 2))
        if self.rng.random() < 0.5:
            s = gauge(s, self.closed_two_form())
        return s

    # Poisson data -------------------------------------------------------

    def poisson_bivector(self) -> Bivector:
        """Non-degenerate inverse of a symplectic form, or a split f(x0,x1) d0^d1 + g(x2,x3) d2^d3."""
        if self.n % 2 == 0 and self.rng.random() < 0.5:
            return invert_2form(self.symplectic_form())
        comps = {(0, 1): self.poly(among=[0, 1], density=1.0)}
        if self.n >= 4:
            comps[(2, 3)] = self.poly(among=[2, 3])
        return Bivector(self.chart, comps)

    def poisson_endo_pair(self, compatible: bool | None = None) -> tuple[Bivector, EndoField]:
        """(pi, a) with a = c Id + pi# beta#; beta closed gives a compatible pair."""
        if compatible is None:
            compatible = self.rng.random() < 0.5
        pi = self.poisson_bivector()
        c = self.chart.coordinates
        beta = self.closed_two_form() if compatible else self.form(2, self.config.degree)
        A = linalg.matadd(linalg.identity(self.n, c, self.rng.choice((0, 1, 2))),
                          linalg.matmul(sharp_bivector(pi).as_lists(), sharp_form(beta).as_lists(), c))
        if not compatible and self.rng.random() < 0.5:
            A = self.endo().as_lists()
        return pi, EndoField(self.chart, A)
