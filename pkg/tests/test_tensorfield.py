from fractions import Fraction

import pytest
from hypothesis import given

from conftest import bivector, form2, fuzzers
from gck.errors import ChartMismatch, NondegenerateInverseUnavailable
from gck.tensorfield import (
    Bivector,
    Chart,
    KForm,
    PolyMap,
    VectorField,
    contract2,
    d_function,
    exterior_d,
    interior,
    invert_2form,
    invert_bivector,
    koszul_d2,
    lie_bracket,
    lie_derivative,
    lie_derivative_cartan,
    pullback,
    pushforward_bivector_check,
    sharp_bivector,
    sharp_form,
    wedge,
)


def vec(chart, *comps):
    return VectorField(chart, tuple(chart.poly(str(c)) for c in comps))


def one_form(chart, *comps):
    return KForm.one_form(chart, [chart.poly(str(c)) for c in comps])


def test_chart_rejects_repeated_names():
    with pytest.raises(ValueError):
        Chart(("x", "x"))


def test_lie_bracket_examples(R2):
    dx, dy = VectorField.basis(R2, 0), VectorField.basis(R2, 1)
    assert lie_bracket(dx, dy).is_zero()
    X = vec(R2, "x*y", "x^2")
    assert lie_bracket(X, X).is_zero()
    assert lie_bracket(vec(R2, 0, "x"), vec(R2, "y", 0)) == vec(R2, "x", "-y")


def test_exterior_d_examples(R2):
    assert exterior_d(one_form(R2, 0, "x")) == form2(R2, {(0, 1): 1})
    f = R2.poly("x^2*y")
    assert exterior_d(d_function(f, R2)).is_zero()
    assert exterior_d(form2(R2, {(0, 1): "x*y"})).is_zero()


def test_koszul_examples(R3):
    X, Y, Z = (VectorField.basis(R3, i) for i in range(3))
    assert koszul_d2(form2(R3, {(0, 1): 1}), X, Y, Z).is_zero()
    assert koszul_d2(form2(R3, {(1, 2): "x"}), X, Y, Z) == R3.const(1)
    W = vec(R3, "y", "z^2", "x")
    assert koszul_d2(form2(R3, {(0, 2): "x*y", (1, 2): "z"}), W, W, Z).is_zero()


def test_interior_examples(R2):
    dxdy = form2(R2, {(0, 1): 1})
    assert interior(VectorField.basis(R2, 0), dxdy) == one_form(R2, 0, 1)
    X = vec(R2, "x", "y^2")
    assert interior(X, interior(X, form2(R2, {(0, 1): "x + y"}))).is_zero()
    assert interior(vec(R2, 0, "x"), dxdy) == one_form(R2, "-x", 0)


def test_lie_derivative_examples(R2):
    d_x = VectorField.basis(R2, 0)
    assert lie_derivative(d_x, one_form(R2, 0, "x")) == one_form(R2, 0, 1)
    assert lie_derivative(d_x, one_form(R2, 0, 1)).is_zero()


def test_sharp_conventions(R2):
    dx = one_form(R2, 1, 0)
    assert sharp_bivector(bivector(R2, {(0, 1): 1}))(dx) == VectorField.basis(R2, 1)
    assert sharp_form(form2(R2, {(0, 1): 1}))(VectorField.basis(R2, 0)) == one_form(R2, 0, 1)
    assert sharp_bivector(Bivector.zero(R2)).is_zero()


def test_invert_2form_sign(R2):
    pi = invert_2form(form2(R2, {(0, 1): 1}))
    P = sharp_bivector(pi)
    assert P(one_form(R2, 0, 1)) == VectorField.basis(R2, 0)
    assert P(one_form(R2, 1, 0)) == -VectorField.basis(R2, 1)
    assert pi == bivector(R2, {(0, 1): -1})


def test_invert_block_and_involution(R4):
    omega = form2(R4, {(0, 1): 1, (2, 3): 2})
    pi = invert_2form(omega)
    assert pi == bivector(R4, {(0, 1): -1, (2, 3): Fraction(-1, 2)})
    assert invert_bivector(pi) == omega


def test_invert_needs_constant_determinant(R2):
    with pytest.raises(NondegenerateInverseUnavailable):
        invert_2form(form2(R2, {(0, 1): "1 + x"}))


def test_pullback_examples(R2):
    line = Chart(("t",))
    f = PolyMap(line, R2, (line.poly("t"), line.poly("t^2")))
    assert pullback(f, one_form(R2, 0, 1)) == one_form(line, "2*t")
    alpha = one_form(R2, "y", "x*y")
    assert pullback(f, exterior_d(alpha)) == exterior_d(pullback(f, alpha))
    assert pullback(PolyMap.identity(R2), alpha) == alpha


def test_pullback_chart_mismatch(R2, R3):
    with pytest.raises(ChartMismatch):
        pullback(PolyMap.identity(R2), one_form(R3, 1, 0, 0))


def test_pushforward_examples(R2, R3):
    pi = bivector(R2, {(0, 1): "x*y"})
    assert pushforward_bivector_check(PolyMap.identity(R2), pi, pi).certified
    line = Chart(("t",))
    proj = PolyMap(R2, line, (R2.poly("x"),))
    assert pushforward_bivector_check(proj, pi, Bivector.zero(line)).certified
    incl = PolyMap(R2, R3, (R2.poly("x"), R2.poly("y"), R2.zero()))
    assert pushforward_bivector_check(incl, bivector(R2, {(0, 1): 1}), bivector(R3, {(0, 1): 1})).certified
    bad = pushforward_bivector_check(incl, bivector(R2, {(0, 1): 1}), bivector(R3, {(0, 1): 2}))
    assert not bad.certified and bad.failed_labels() == ["f-related bivectors"]


# properties ---------------------------------------------------------------


@given(fuzzers())
def test_d_squared_vanishes(fz):
    for k in range(min(fz.n - 1, 2) + 1):
        assert exterior_d(exterior_d(fz.form(k))).is_zero()


@given(fuzzers(dims=(3, 4)))
def test_koszul_matches_exterior_d(fz):
    sigma = fz.form(2)
    X, Y, Z = fz.vector(), fz.vector(), fz.vector()
    assert exterior_d(sigma)(X, Y, Z) == koszul_d2(sigma, X, Y, Z)


@given(fuzzers(dims=(3, 4)))
def test_differential_identity(fz):
    sigma = fz.form(2)
    X, Y = fz.vector(), fz.vector()
    lhs = contract2(X, Y, exterior_d(sigma))
    rhs = (lie_derivative(X, interior(Y, sigma)) - lie_derivative(Y, interior(X, sigma))
           + exterior_d(contract2(X, Y, sigma)) - interior(lie_bracket(X, Y), sigma))
    assert lhs == rhs


@given(fuzzers())
def test_jacobi_for_vector_fields(fz):
    X, Y, Z = fz.vector(), fz.vector(), fz.vector()
    total = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X))
             + lie_bracket(Z, lie_bracket(X, Y)))
    assert total.is_zero()


@given(fuzzers())
def test_cartan_formula(fz):
    X = fz.vector()
    for k in range(0, min(fz.n, 3)):
        alpha = fz.form(k)
        assert lie_derivative(X, alpha) == lie_derivative_cartan(X, alpha)


@given(fuzzers(dims=(3, 4)))
def test_lie_derivative_is_a_derivation_of_wedge(fz):
    X, a, b = fz.vector(), fz.form(1), fz.form(1)
    lhs = lie_derivative(X, wedge(a, b))
    assert lhs == wedge(lie_derivative(X, a), b) + wedge(a, lie_derivative(X, b))


@given(fuzzers())
def test_pullback_commutes_with_d(fz):
    f = fz.shear()
    alpha = fz.form(1)
    assert pullback(f, exterior_d(alpha)) == exterior_d(pullback(f, alpha))


@given(fuzzers())
def test_sharp_maps_match_evaluation(fz):
    sigma, pi = fz.form(2), fz.bivector()
    X, Y = fz.vector(), fz.vector()
    assert sharp_form(sigma)(X)(Y) == sigma(X, Y)
    xi, eta = fz.form(1), fz.form(1)
    assert eta(sharp_bivector(pi)(xi)) == pi(xi, eta)
