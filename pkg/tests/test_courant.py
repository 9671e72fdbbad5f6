from fractions import Fraction

import pytest
from hypothesis import given

from conftest import bivector, darboux, endo, form2, fuzzers, rotation
from gck.courant import (
    GeneralizedStructure,
    GSection,
    apply_J,
    check_C1,
    check_C2,
    check_C3,
    check_C4,
    check_dirac,
    check_gcs,
    check_integrability,
    courant_bracket,
    eigenspace_check,
    gauge,
    gauge_by_conjugation,
    gauge_report,
    integrability_defect,
    opposite,
    pairing,
    pi_bracket,
    pointwise_report,
    proof_component_reports,
    structure_from_block,
)
from gck import linalg
from gck.fuzz import Fuzzer, FuzzConfig
from gck.tensorfield import (
    Bivector,
    EndoField,
    KForm,
    VectorField,
    d_function,
    invert_2form,
    lie_bracket,
    sharp_bivector,
    sharp_form,
)


def symplectic(chart):
    omega = darboux(chart)
    return GeneralizedStructure(EndoField.zero(chart), invert_2form(omega), -omega)


def complex_structure(chart):
    return GeneralizedStructure(rotation(chart), Bivector.zero(chart), KForm.zero(chart, 2))


def broken(chart):
    s = symplectic(chart)
    return GeneralizedStructure(s.a, s.pi, s.sigma + form2(chart, {(0, 1): "x"}))


def one_form(chart, *comps):
    return KForm.one_form(chart, [chart.poly(str(c)) for c in comps])


def test_pairing_examples(R2):
    dx_vec = GSection.of_vector(VectorField.basis(R2, 0))
    assert pairing(dx_vec, GSection.of_form(one_form(R2, 1, 0))) == R2.const(1)
    alpha = GSection(VectorField.basis(R2, 0), one_form(R2, 0, 1))
    assert pairing(alpha, alpha).is_zero()


def test_bracket_examples(R2):
    d_x = GSection.of_vector(VectorField.basis(R2, 0))
    assert courant_bracket(d_x, GSection.of_form(one_form(R2, 0, "x"))) == GSection.of_form(one_form(R2, 0, 1))
    alpha = GSection(VectorField(R2, (R2.poly("y"), R2.poly("x^2"))), one_form(R2, "x*y", 1))
    assert courant_bracket(alpha, alpha).is_zero()
    X = VectorField(R2, (R2.poly("y"), R2.zero()))
    Y = VectorField(R2, (R2.zero(), R2.poly("x")))
    assert courant_bracket(GSection.of_vector(X), GSection.of_vector(Y)) == GSection.of_vector(lie_bracket(X, Y))


def test_apply_J_blocks(R2):
    s = symplectic(R2)
    X = VectorField(R2, (R2.poly("x"), R2.poly("1")))
    assert apply_J(s, GSection.of_vector(X)) == GSection.of_form(-sharp_form(darboux(R2))(X))
    c = complex_structure(R2)
    xi = one_form(R2, "y", 2)
    assert apply_J(c, GSection(X, xi)) == GSection(c.a(X), -c.a.dual()(xi))


@pytest.mark.parametrize("build", [symplectic, complex_structure])
def test_standard_structures_are_integrable(R2, build):
    s = build(R2)
    for i in range(4):
        for j in range(4):
            assert integrability_defect(s, GSection.basis(R2, i), GSection.basis(R2, j)).is_zero()
    assert check_gcs(s).certified


def test_perturbed_sigma_breaks_integrability(R2):
    s = broken(R2)
    defects = [integrability_defect(s, GSection.basis(R2, i), GSection.basis(R2, j))
               for i in range(4) for j in range(4)]
    assert any(not d.is_zero() for d in defects)
    report = check_C3(s.pi, s.a, s.sigma)
    assert report.failed_labels() == ["(3.1)"]
    assert dict(report.witness.point)["x"] != 0


def test_C1_examples(R2, R3):
    assert check_C1(bivector(R2, {(0, 1): 1})).certified
    assert check_C1(bivector(R2, {(0, 1): "x"})).certified
    bad = check_C1(bivector(R3, {(0, 1): 1, (1, 2): "y"}))
    assert not bad.certified and bad.failed_labels() == ["(C1)"]


def test_pi_bracket_examples(R2):
    pi = bivector(R2, {(0, 1): 1})
    assert pi_bracket(pi, one_form(R2, 1, 0), one_form(R2, 0, "x")).is_zero()
    x, y = R2.poly("x"), R2.poly("y")
    lhs = pi_bracket(pi, d_function(x, R2), d_function(y, R2))
    assert lhs == d_function(pi(d_function(x, R2), d_function(y, R2)), R2)
    xi = one_form(R2, "x*y", "y")
    assert pi_bracket(pi, xi, xi).is_zero()


def test_C2_examples(R2):
    pi = bivector(R2, {(0, 1): "x"})
    assert check_C2(pi, EndoField.zero(R2)).certified
    assert check_C2(bivector(R2, {(0, 1): 1}), EndoField.identity(R2)).certified
    bad = check_C2(bivector(R2, {(0, 1): 1}), endo(R2, [["1", "0"], ["0", "x"]]))
    assert not bad.certified


def test_C3_examples(R2):
    for s in (symplectic(R2), complex_structure(R2)):
        assert check_C3(s.pi, s.a, s.sigma).certified


def test_C4_examples(R2, R4):
    closed = form2(R4, {(0, 1): 1, (2, 3): "z"})
    assert check_C4(EndoField.identity(R4), closed).certified
    # a = Id turns (4.2) into d sigma = 3 d sigma
    assert check_C4(EndoField.identity(R4), form2(R4, {(2, 3): "x"})).failed_labels() == ["(4.2)"]
    s = symplectic(R2)
    assert check_C4(s.a, s.sigma).certified
    # x dx^dy does not commute with the rotation: a*sigma# = -sigma# a there
    planar = check_C4(rotation(R2), form2(R2, {(0, 1): "x"}))
    assert planar.failed_labels() == ["(4.1)"]
    block = check_C4(rotation(R4), form2(R4, {(0, 1): "x"}))
    assert not block.certified and "(4.1)" in block.failed_labels()


def test_C4_four_dimensional_commuting_example(R4):
    J = rotation(R4)
    beta = form2(R4, {(0, 2): "x", (1, 3): 1})
    from gck.tensorfield import form_pullback_by_endo
    sigma = beta - form_pullback_by_endo(J, beta)
    report = check_C4(J, sigma)
    assert report.label_certified("(4.1)")
    assert report.certified  # J is integrable, so (4.2) holds for every commuting sigma


def test_gcs_refutation_names_condition(R2):
    report = check_gcs(broken(R2))
    assert not report.certified
    assert "(3.1)" in report.failed_labels()


def test_opposite_examples(R2):
    s = symplectic(R2)
    o = opposite(s)
    assert o.pi == -s.pi and o.sigma == -s.sigma and check_gcs(o).certified
    c = complex_structure(R2)
    assert opposite(c) == c


def test_gauge_examples(R2):
    s = symplectic(R2)
    assert gauge(s, KForm.zero(R2, 2)) == s
    B = form2(R2, {(0, 1): 1})
    assert check_gcs(gauge(s, B)).certified
    assert gauge_report(s, B).certified


def test_dirac_examples(R2, R3):
    # a = Id gives the graph of pi; a = 0 gives the image of pi#, here all of TM
    assert check_dirac(bivector(R2, {(0, 1): "x"}), EndoField.identity(R2)).certified
    assert check_dirac(Bivector.zero(R2), EndoField.identity(R2)).certified
    assert check_dirac(bivector(R2, {(0, 1): 1}), EndoField.zero(R2)).certified
    assert check_dirac(bivector(R2, {(0, 1): "x"}), EndoField.zero(R2)).failed_labels() == []
    assert not check_dirac(bivector(R2, {(0, 1): 1}), endo(R2, [["1", "0"], ["0", "x"]])).certified


def test_dirac_rank_is_separate_from_C2(R3):
    pi = bivector(R3, {(0, 1): "x"})
    report = check_dirac(pi, EndoField.zero(R3))
    assert check_C2(pi, EndoField.zero(R3)).certified
    assert report.label_certified("isotropy") and report.label_certified("involutivity")
    assert report.failed_labels() == ["rank"]


@pytest.mark.parametrize("build", [symplectic, complex_structure])
@pytest.mark.parametrize("point", [(0, 0), (1, -2), ("1/2", 3)])
def test_eigenspace_examples(R2, build, point):
    assert eigenspace_check(build(R2), point).certified


def test_eigenspace_detects_broken_square(R2):
    report = eigenspace_check(broken(R2), (2, 0))
    assert not report.certified
    assert eigenspace_check(broken(R2), (0, 0)).certified  # the defect vanishes on x = 0


def test_block_round_trip(R2):
    s = gauge(symplectic(R2), form2(R2, {(0, 1): "x"}))
    assert structure_from_block(R2, s.block_matrix()) == s


# the component equations of the integrability condition -------------------


def test_int2_needs_31(R2):
    s = GeneralizedStructure(endo(R2, [["x", "0"], ["0", "1"]]), Bivector.zero(R2), form2(R2, {(0, 1): 1}))
    assert check_C1(s.pi).certified and check_C2(s.pi, s.a).certified
    assert not pointwise_report(s).label_certified("(3.1)")
    r = proof_component_reports(s)
    assert not r["(int2)"].certified and r["(int3)"].certified


def test_int4_needs_41(R2):
    s = GeneralizedStructure(rotation(R2), Bivector.zero(R2), form2(R2, {(0, 1): "x"}))
    assert check_C2(s.pi, s.a).certified
    assert not pointwise_report(s).label_certified("(4.1)")
    r = proof_component_reports(s)
    assert not r["(int4)"].certified
    assert check_C4(s.a, s.sigma).label_certified("(4.2)")


# properties ---------------------------------------------------------------


@given(fuzzers(dims=(2, 3)))
def test_courant_bracket_leibniz(fz):
    a = GSection(fz.vector(), fz.form(1))
    b = GSection(fz.vector(), fz.form(1))
    f = fz.poly()
    lhs = courant_bracket(a, b.scale(f))
    df = d_function(f, fz.chart)
    # with this pairing and the 1/2 d(...) bracket the anomaly carries a factor 1/2
    rhs = (courant_bracket(a, b).scale(f) + b.scale(a.vector.apply(f))
           - GSection.of_form(df.scale(pairing(a, b) * Fraction(1, 2))))
    assert lhs == rhs


@given(fuzzers())
def test_pairing_symmetric(fz):
    a = GSection(fz.vector(), fz.form(1))
    b = GSection(fz.vector(), fz.form(1))
    assert pairing(a, b) == pairing(b, a)


@given(fuzzers(dims=(2, 4)))
def test_valid_structures_square_to_minus_one(fz):
    s = fz.valid_gcs()
    alpha = GSection(fz.vector(), fz.form(1))
    assert apply_J(s, apply_J(s, alpha)) == -alpha


@given(fuzzers(dims=(2, 4), degrees=(0, 1)))
def test_check_gcs_matches_integrability(fz):
    s = fz.structure()
    direct = pointwise_report(s).certified and check_integrability(s).certified
    assert check_gcs(s).certified == direct


@given(fuzzers(dims=(2, 4), degrees=(0, 1)))
def test_opposite_preserves_verdict(fz):
    s = fz.structure()
    assert check_gcs(opposite(s)).certified == check_gcs(s).certified
    assert opposite(opposite(s)) == s


@given(fuzzers(dims=(2, 4), degrees=(0, 1)))
def test_gauge_preserves_verdict_and_inverts(fz):
    s = fz.structure()
    B = fz.closed_two_form()
    g = gauge(s, B)
    assert check_gcs(g).certified == check_gcs(s).certified
    assert gauge(g, -B) == s
    assert structure_from_block(fz.chart, gauge_by_conjugation(s, B)) == g


@given(fuzzers(dims=(2, 3, 4), degrees=(0, 1)))
def test_C2_implies_lagrangian_involutive(fz):
    pi, a = fz.poisson_endo_pair()
    d = check_dirac(pi, a)
    if check_C2(pi, a).certified:
        assert d.label_certified("isotropy") and d.label_certified("involutivity")


@given(fuzzers(dims=(2, 4), degrees=(0, 1)))
def test_dirac_matches_C2_for_nondegenerate_pi(fz):
    pi = invert_2form(fz.symplectic_form())
    P = sharp_bivector(pi).as_lists()
    verdicts = set()
    for beta in (fz.closed_two_form(), fz.form(2)):
        A = linalg.matmul(P, sharp_form(beta).as_lists(), fz.chart.coordinates)
        a = EndoField(fz.chart, A) + EndoField.identity(fz.chart)
        c2 = check_C2(pi, a).certified
        assert check_dirac(pi, a).certified == c2
        verdicts.add(c2)
    assert True in verdicts


def test_dirac_without_C2_for_degenerate_pi(R3):
    pi = bivector(R3, {(0, 1): "-1/2*x"})
    a = endo(R3, [["2", "0", "1/2*x^2 - x"], ["0", "2", "0"], ["0", "0", "2"]])
    assert check_dirac(pi, a).certified
    assert check_C2(pi, a).failed_labels() == ["(2.2)"]


@given(fuzzers(dims=(2, 4), degrees=(0, 1)))
def test_component_equations_on_audit_instances(fz):
    s = fz.audit_structure()
    r = proof_component_reports(s)
    c3 = check_C3(s.pi, s.a, s.sigma)
    c4 = check_C4(s.a, s.sigma)
    assert r["(int2)"].certified == r["(int3)"].certified == c3.label_certified("(3.2)")
    assert r["(int4)"].certified == c4.label_certified("(4.2)")


def test_fuzzed_eigenspace_r4():
    s = Fuzzer(FuzzConfig(seed=3, dim=4, degree=1)).valid_gcs()
    assert check_gcs(s).certified
    for pt in [(0, 0, 0, 0), (1, 2, 3, 4), (-1, "1/2", 0, 2)]:
        assert eigenspace_check(s, pt).certified
