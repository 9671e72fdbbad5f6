"""The cotangent Lie algebroid of a Poisson bivector and infinitesimally multiplicative forms on it."""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .courant import check_C1, pi_bracket
from .errors import PreconditionFailure
from .ratpoly import RatPoly
from .report import CheckReport, Defect
from .tensorfield import (
    Bivector,
    BundleMap,
    EndoField,
    KForm,
    _same_chart,
    d_function,
    increasing,
    lie_derivative,
    sharp_bivector,
)


@dataclass(frozen=True)
class PoissonAlgebroid:
    """Anchor pi#, bracket [., .]_pi. Construction fails unless pi is Poisson."""

    pi: Bivector

    def __post_init__(self):
        if not check_C1(self.pi).certified:
            raise PreconditionFailure("the bivector is not Poisson")

    @property
    def chart(self):
        return self.pi.chart

    def anchor(self, xi: KForm):
        return sharp_bivector(self.pi)(xi)


@dataclass(frozen=True)
class IMFormCandidate:
    """u: T*M -> T*M, acting on coframe components by ``matrix``."""

    map: BundleMap

    @classmethod
    def from_matrix(cls, chart, matrix) -> "IMFormCandidate":
        return cls(BundleMap(chart, matrix, "T*", "T*"))

    @classmethod
    def dual_of(cls, a: EndoField) -> "IMFormCandidate":
        return cls(a.dual())

    @classmethod
    def identity(cls, chart) -> "IMFormCandidate":
        return cls.from_matrix(chart, linalg.identity(chart.dimension, chart.coordinates))

    def __call__(self, xi: KForm) -> KForm:
        return self.map(xi)


def algebroid_bracket(A: PoissonAlgebroid, xi: KForm, eta: KForm) -> KForm:
    return pi_bracket(A.pi, xi, eta)


def leibniz_defect(A: PoissonAlgebroid, xi: KForm, eta: KForm, f: RatPoly) -> KForm:
    """[xi, f eta] - f [xi, eta] - (pi# xi)(f) eta."""
    anchor = A.anchor(xi)
    return (algebroid_bracket(A, xi, eta.scale(f)) - algebroid_bracket(A, xi, eta).scale(f)
            - eta.scale(anchor.apply(f)))


def jacobiator(A: PoissonAlgebroid, xi: KForm, eta: KForm, zeta: KForm) -> KForm:
    br = lambda u, v: algebroid_bracket(A, u, v)  # noqa: E731
    return br(xi, br(eta, zeta)) + br(eta, br(zeta, xi)) + br(zeta, br(xi, eta))


def im_pairing(A: PoissonAlgebroid, u: IMFormCandidate, alpha: KForm, beta: KForm) -> RatPoly:
    """<u(alpha), rho(beta)>."""
    return u(alpha)(A.anchor(beta))


def im_bracket_defect(A: PoissonAlgebroid, u: IMFormCandidate, alpha: KForm, beta: KForm) -> KForm:
    """u([alpha, beta]) - L_alpha u(beta) + L_beta u(alpha) - d<u(alpha), rho(beta)>."""
    return (u(algebroid_bracket(A, alpha, beta)) - lie_derivative(A.anchor(alpha), u(beta))
            + lie_derivative(A.anchor(beta), u(alpha)) - d_function(im_pairing(A, u, alpha, beta), A.chart))


def check_im_form(A: PoissonAlgebroid, u: IMFormCandidate) -> CheckReport:
    """Both IM equations on coframe generators.

    The bracket equation is tensorial once the pairing equation holds, so the
    generators decide the conjunction.
    """
    chart = _same_chart(A.pi, u.map)
    n, c = chart.dimension, chart.coordinates
    forms = [KForm.basis(chart, (i,)) for i in range(n)]
    skew = []
    for i in range(n):
        for j in range(i, n):
            val = im_pairing(A, u, forms[i], forms[j]) + im_pairing(A, u, forms[j], forms[i])
            skew.append(Defect("IM pairing", f"(d{c[i]}, d{c[j]})", val))
    brk = []
    for i, j in increasing(n, 2):
        d = im_bracket_defect(A, u, forms[i], forms[j])
        brk.extend(Defect("IM bracket", f"(d{c[i]}, d{c[j]}) [d{c[k]}]", x) for k, x in enumerate(d.as_list()))
    return CheckReport.combine("im", [CheckReport.from_defects("IM pairing", skew),
                                      CheckReport.from_defects("IM bracket", brk)])
