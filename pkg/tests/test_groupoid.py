from dataclasses import replace

import pytest
from hypothesis import given

from conftest import darboux, endo, form2, fuzzers
from gck.courant import check_C3, check_gcs, twisted_form
from gck.errors import NonClosedB
from gck.groupoid import (
    PairGroupoid,
    build_pair_hitchin_groupoid,
    check_hitchin_groupoid,
    check_multiplicative_endo,
    check_multiplicative_form,
    check_proof_identity,
    check_ts_gholomorphic,
    groupoid_gauge,
    isotropy_complex_check,
    ts_target_structure,
)
from gck.courant import GeneralizedStructure, opposite
from gck.fuzz import FuzzConfig, Fuzzer
from gck.hitchin import HitchinPair, twist
from gck.morphism import GHolMapCandidate, check_gholomorphic
from gck.tensorfield import EndoField, KForm, PolyMap, invert_2form, pullback


def full_suite(c):
    return [check_multiplicative_form(c.groupoid, c.omega_S), check_multiplicative_endo(c.groupoid, c.J_S),
            check_hitchin_groupoid(c), check_ts_gholomorphic(c)]


def test_pair_groupoid_axioms(R2):
    g = PairGroupoid(R2)
    assert g.axioms.certified
    assert g.total.coordinates == ("x_1", "y_1", "x_2", "y_2")


def test_symplectic_base(R2):
    c = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.zero(R2)))
    T = c.groupoid.total
    assert c.omega_S == form2(T, {(2, 3): 1, (0, 1): -1})
    assert c.J_S.is_zero()
    assert c.sigma == form2(R2, {(0, 1): -1})
    assert all(r.certified for r in full_suite(c))


def test_identity_base(R2):
    c = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.identity(R2)))
    assert c.sigma == form2(R2, {(0, 1): -2})
    assert check_hitchin_groupoid(c).label_certified("twist identity")


def test_four_dimensional_base():
    pair = Fuzzer(FuzzConfig(seed=11, dim=4, degree=1)).hitchin_pair()
    c = build_pair_hitchin_groupoid(pair)
    assert all(r.certified for r in full_suite(c))


def test_multiplicative_form_examples(R2):
    g = PairGroupoid(R2)
    phi = form2(R2, {(0, 1): "x^2 + y"})
    assert check_multiplicative_form(g, pullback(g.s, phi) - pullback(g.t, phi)).certified
    assert not check_multiplicative_form(g, pullback(g.t, darboux(R2))).certified


def test_multiplicative_endo_examples(R2):
    g = PairGroupoid(R2)
    a = endo(R2, [["x", "1"], ["0", "y"]])
    b = endo(R2, [["1", "0"], ["0", "2"]])
    assert check_multiplicative_endo(g, g.block_endo(a, a)).certified
    assert check_multiplicative_endo(g, EndoField.zero(g.total)).certified
    mixed = check_multiplicative_endo(g, g.block_endo(a, b))
    assert "tangent to composable pairs" in mixed.failed_labels()


def test_hitchin_groupoid_refutations(R2):
    c = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.identity(R2)))
    shifted = replace(c, sigma=c.sigma + darboux(R2))
    assert check_hitchin_groupoid(shifted).failed_labels() == ["twist identity"]
    flat = replace(c, J_S=EndoField.zero(c.groupoid.total))
    assert "twist identity" in check_hitchin_groupoid(flat).failed_labels()


def test_ts_leg_isolation(R2):
    c = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.identity(R2, 3)))
    assert check_ts_gholomorphic(c).certified
    shifted = replace(c, sigma=c.sigma + darboux(R2))
    report = check_ts_gholomorphic(shifted)
    assert report.failed_labels() == ["f*sigma2 = sigma1"]
    assert report.label_certified("dt J = a dt") and report.label_certified("ds J = a ds")


def test_ts_orientation(R2):
    """The product target must carry the opposite structure on the t factor."""
    c = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.identity(R2, 2)))
    base = c.base_structure()
    g = c.groupoid
    source = GeneralizedStructure(c.J_S, invert_2form(c.omega_S), twist(HitchinPair(c.omega_S, c.J_S)))
    ident = PolyMap.identity(g.total)
    assert check_gholomorphic(GHolMapCandidate(ident, source, ts_target_structure(c))).certified
    mirrored = g.product_structure(base, opposite(base))
    assert not check_gholomorphic(GHolMapCandidate(ident, source, mirrored)).certified


def test_groupoid_gauge_examples(R2, R4):
    c = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.zero(R2)))
    assert groupoid_gauge(c, KForm.zero(R2, 2)) == c
    B = darboux(R2)
    gauged = groupoid_gauge(c, B)
    assert check_hitchin_groupoid(gauged).certified
    assert groupoid_gauge(gauged, -B) == c
    c4 = build_pair_hitchin_groupoid(HitchinPair(darboux(R4), EndoField.zero(R4)))
    with pytest.raises(NonClosedB):
        groupoid_gauge(c4, form2(R4, {(2, 3): "x"}))


def test_isotropy_examples(R2):
    c = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.identity(R2)))
    for x in [(0, 0), (1, -1), ("1/2", 2)]:
        assert isotropy_complex_check(c, x).certified
    sym = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.zero(R2)))
    assert isotropy_complex_check(sym, (3, 1)).certified
    bad = replace(c, sigma=c.sigma + darboux(R2))
    assert not isotropy_complex_check(bad, (0, 0)).certified


def test_proof_identity(R2):
    c = build_pair_hitchin_groupoid(HitchinPair(darboux(R2), EndoField.identity(R2, 2)))
    assert check_proof_identity(c).certified


# properties ---------------------------------------------------------------


@given(fuzzers(dims=(2,), degrees=(0, 1)))
def test_fuzzed_groupoids_certify(fz):
    c = build_pair_hitchin_groupoid(fz.hitchin_pair())
    assert all(r.certified for r in full_suite(c))
    assert check_proof_identity(c).certified


@given(fuzzers(dims=(2,), degrees=(0, 1)))
def test_constant_sigma_shift_flips_three_checks(fz):
    c = build_pair_hitchin_groupoid(fz.hitchin_pair())
    shift = KForm(fz.chart, 2, {(0, 1): fz.coeff()})
    bad = replace(c, sigma=c.sigma + shift)
    base = bad.base_structure()
    assert not check_C3(base.pi, base.a, base.sigma).certified
    assert not check_hitchin_groupoid(bad).label_certified("twist identity")
    ts = check_ts_gholomorphic(bad)
    assert not ts.label_certified("f*sigma2 = sigma1")
    assert ts.label_certified("dt J = a dt") and ts.label_certified("ds J = a ds")


@given(fuzzers(dims=(2,), degrees=(0, 1)))
def test_gauge_coherence(fz):
    pair = fz.hitchin_pair()
    c = build_pair_hitchin_groupoid(pair)
    B = fz.closed_two_form()
    gauged = groupoid_gauge(c, B)
    assert check_hitchin_groupoid(gauged).certified
    assert check_gcs(gauged.base_structure()).certified
    assert groupoid_gauge(gauged, -B) == c


@given(fuzzers(dims=(2,), degrees=(0, 1)))
def test_twisted_form_multiplicative_iff_endo_multiplicative(fz):
    pair = fz.hitchin_pair()
    g = PairGroupoid(fz.chart)
    omega_S = pullback(g.s, pair.omega) - pullback(g.t, pair.omega)
    other = pair.a if fz.rng.random() < 0.5 else fz.hitchin_pair_with(pair.omega).a
    J = g.block_endo(other, pair.a)
    lhs = check_multiplicative_form(g, twisted_form(J, omega_S)).certified
    assert lhs == check_multiplicative_endo(g, J).certified


def test_source_poisson_target_anti_poisson(R2):
    """The sign of omega_S is forced by the twist identity."""
    from gck.tensorfield import pushforward_bivector_check

    w = darboux(R2)
    c = build_pair_hitchin_groupoid(HitchinPair(w, EndoField.identity(R2, 2)))
    g = c.groupoid
    pi_S = invert_2form(c.omega_S)
    assert pushforward_bivector_check(g.s, pi_S, invert_2form(w)).certified
    assert pushforward_bivector_check(g.t, pi_S, -invert_2form(w)).certified
    assert not pushforward_bivector_check(g.t, pi_S, invert_2form(w)).certified
    flipped = replace(c, omega_S=-c.omega_S)
    assert check_hitchin_groupoid(flipped).failed_labels() == ["twist identity"]
