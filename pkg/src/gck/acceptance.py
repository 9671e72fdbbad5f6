"""The acceptance suite as plain functions, shared by the tests and scripts/run_acceptance.py.

Every criterion returns a :class:`CriterionResult`; none of them raises on a
mathematical failure, so a runner can print one PASS/FAIL line per criterion.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable

from .algebroid import IMFormCandidate, PoissonAlgebroid, check_im_form
from .cli import main as cli_main
from .courant import (
    GeneralizedStructure,
    check_C2,
    check_C3,
    check_C4,
    check_gcs,
    check_integrability,
    eigenspace_check,
    gauge,
    pointwise_report,
    proof_component_reports,
)
from .fileformat import StructureFile, fixture_path, parse_structure_file, print_structure_file
from .fuzz import Fuzzer, FuzzConfig
from .groupoid import (
    build_pair_hitchin_groupoid,
    check_hitchin_groupoid,
    check_multiplicative_endo,
    check_multiplicative_form,
    check_ts_gholomorphic,
    groupoid_gauge,
)
from .hitchin import check_hitchin_pair, gcs_to_hitchin, hitchin_to_gcs, torsion_identity_defect
from .tensorfield import (
    Bivector,
    Chart,
    EndoField,
    KForm,
    contract2,
    exterior_d,
    interior,
    invert_2form,
    koszul_d2,
    lie_bracket,
    lie_derivative,
)

SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float = 0.0
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:>2} {verdict}  {self.title}: {self.detail} ({self.elapsed:.1f}s)"


def _fuzzer(dim: int, degree: int, salt: int) -> Fuzzer:
    return Fuzzer(FuzzConfig(seed=SEED + 1000 * salt + 10 * dim + degree, dim=dim, degree=degree))


def _stream(dim: int, salt: int, degrees=(0, 1, 2)):
    """Fuzzers cycling through the coefficient degrees, one per instance."""
    fzs = [_fuzzer(dim, d, salt) for d in degrees]
    k = 0
    while True:
        yield fzs[k % len(fzs)]
        k += 1


def _canonical(s: GeneralizedStructure) -> str:
    sf = StructureFile()
    sf.add_chart("M", s.chart)
    sf.add_gcs("s", s)
    return print_structure_file(sf)


# criteria -----------------------------------------------------------------


def criterion_1(count: int = 50) -> CriterionResult:
    details, failures, ok = [], [], True
    for dim in (2, 4):
        start = time.perf_counter()
        agree = certified = 0
        stream = _stream(dim, 1)
        for k in range(count):
            s = next(stream).structure()
            gcs_ok = check_gcs(s).certified
            direct = pointwise_report(s).certified and check_integrability(s).certified
            certified += gcs_ok
            if gcs_ok == direct:
                agree += 1
            else:
                failures.append(f"n={dim} instance {k}")
        elapsed = time.perf_counter() - start
        ok &= agree == count and elapsed < 60 and 0 < certified < count
        details.append(f"n={dim}: {agree}/{count} agree, {certified} certified, {elapsed:.1f}s")
    return CriterionResult(1, "check_gcs vs integrability", ok, "; ".join(details), failures=failures)


def criterion_2(count: int = 50) -> CriterionResult:
    good, failures = 0, []
    for k in range(count):
        dim = 2 if k % 2 == 0 else 4
        fz = _fuzzer(dim, k % 3, 2 + k)
        pair = fz.hitchin_pair()
        s = hitchin_to_gcs(pair)
        ok = (check_hitchin_pair(pair).certified and check_gcs(s).certified
              and gcs_to_hitchin(s) == pair and hitchin_to_gcs(gcs_to_hitchin(s)) == s)
        good += ok
        if not ok:
            failures.append(f"instance {k}")
    return CriterionResult(2, "Hitchin round trip", good == count, f"{good}/{count} round trips exact",
                           failures=failures)


def criterion_3(count: int = 100) -> CriterionResult:
    good, nonclosed, failures = 0, 0, []
    for k in range(count):
        fz = _fuzzer(2 + k % 3, (k // 3) % 3, 3 + k)
        p = fz.commuting_pair()
        nonclosed += not exterior_d(p.omega).is_zero()
        if all(d.vanishes for d in torsion_identity_defect(p.omega, p.a)):
            good += 1
        else:
            failures.append(f"instance {k}")
    ok = good == count and nonclosed > 0
    return CriterionResult(3, "torsion identity", ok, f"{good}/{count} vanish, {nonclosed} with non-closed omega",
                           failures=failures)


def criterion_4(count: int = 100) -> CriterionResult:
    kos = diff = 0
    for k in range(count):
        fz = _fuzzer(3 + k % 2, (k // 2) % 3, 4 + k)
        sigma = fz.form(2)
        X, Y, Z = fz.vector(), fz.vector(), fz.vector()
        kos += exterior_d(sigma)(X, Y, Z) == koszul_d2(sigma, X, Y, Z)
        lhs = contract2(X, Y, exterior_d(sigma))
        rhs = (lie_derivative(X, interior(Y, sigma)) - lie_derivative(Y, interior(X, sigma))
               + exterior_d(contract2(X, Y, sigma)) - interior(lie_bracket(X, Y), sigma))
        diff += lhs == rhs
    ok = kos == count and diff == count
    return CriterionResult(4, "Koszul and differential identities", ok,
                           f"Koszul {kos}/{count}, differential {diff}/{count}")


def criterion_5(count: int = 50) -> CriterionResult:
    agree, verdicts, failures = 0, {True: 0, False: 0}, []
    for k in range(count):
        fz = _fuzzer(2 + k % 3, (k // 3) % 3, 5 + k)
        pi, a = fz.poisson_endo_pair(compatible=k % 2 == 0)
        c2 = check_C2(pi, a).certified
        im = check_im_form(PoissonAlgebroid(pi), IMFormCandidate.dual_of(a)).certified
        verdicts[c2] += 1
        if c2 == im:
            agree += 1
        else:
            failures.append(f"instance {k}")
    ok = agree == count and verdicts[True] > 0 and verdicts[False] > 0
    return CriterionResult(5, "(C2) vs IM form", ok,
                           f"{agree}/{count} agree, {verdicts[True]} certified, {verdicts[False]} refuted",
                           failures=failures)


def criterion_6(count: int = 20) -> CriterionResult:
    good = flipped = 0
    failures = []
    for k in range(count):
        dim = 2 if k % 4 else 4
        fz = _fuzzer(dim, k % 2, 6 + k)
        c = build_pair_hitchin_groupoid(fz.hitchin_pair())
        g = c.groupoid
        reports = [check_multiplicative_form(g, c.omega_S), check_multiplicative_endo(g, c.J_S),
                   check_hitchin_groupoid(c), check_ts_gholomorphic(c)]
        base_ok = check_gcs(c.base_structure()).certified
        if base_ok and all(r.certified for r in reports):
            good += 1
        else:
            failures.append(f"instance {k} certify")
        shift = KForm(fz.chart, 2, {(0, 1): fz.coeff()})
        bad = replace(c, sigma=c.sigma + shift)
        b = bad.base_structure()
        ts = check_ts_gholomorphic(bad)
        if (not check_C3(b.pi, b.a, b.sigma).certified
                and not check_hitchin_groupoid(bad).label_certified("twist identity")
                and not ts.label_certified("f*sigma2 = sigma1")):
            flipped += 1
        else:
            failures.append(f"instance {k} perturbation")
    ok = good == count and flipped == count
    return CriterionResult(6, "pair Hitchin groupoid", ok,
                           f"{good}/{count} certified, {flipped}/{count} perturbations flip all three",
                           failures=failures)


def criterion_7(count: int = 20) -> CriterionResult:
    good, failures = 0, []
    for k in range(count):
        dim = (2, 4)[k % 2]
        fz = _fuzzer(dim, k % 3, 7 + k)
        s = fz.valid_gcs()
        B = fz.closed_two_form()
        zero = KForm.zero(fz.chart, 2)
        gauged = gauge(s, B)
        ok = (check_gcs(s).certified and check_gcs(gauged).certified
              and _canonical(gauge(s, zero)) == _canonical(s)
              and _canonical(gauge(gauged, -B)) == _canonical(s))
        if dim == 2:
            c = build_pair_hitchin_groupoid(fz.hitchin_pair())
            cg = groupoid_gauge(c, B)
            ok = ok and (check_hitchin_groupoid(cg).certified and groupoid_gauge(c, zero) == c
                         and groupoid_gauge(cg, -B) == c)
        good += ok
        if not ok:
            failures.append(f"instance {k}")
    return CriterionResult(7, "gauge coherence", good == count, f"{good}/{count} instances coherent",
                           failures=failures)


def criterion_8(count: int = 50) -> CriterionResult:
    agree = used = 0
    spread: dict[tuple, int] = {}
    failures = []
    k = 0
    while used < count:
        fz = _fuzzer(2 + 2 * (k % 2), (k // 2) % 2, 8 + k)
        k += 1
        s = fz.audit_structure()
        if not (check_C2(s.pi, s.a).certified and pointwise_report(s).label_certified("(C1)")):
            continue
        used += 1
        r = proof_component_reports(s)
        c3 = check_C3(s.pi, s.a, s.sigma).label_certified("(3.2)")
        c4 = check_C4(s.a, s.sigma).label_certified("(4.2)")
        key = (r["(int2)"].certified, r["(int3)"].certified, c3, r["(int4)"].certified, c4)
        spread[key] = spread.get(key, 0) + 1
        if key[0] == key[1] == key[2] and key[3] == key[4]:
            agree += 1
        else:
            failures.append(f"instance {k}: {key}")
    ok = agree == count and len(spread) > 1
    return CriterionResult(8, "component equation audit", ok,
                           f"{agree}/{count} agree, {len(spread)} distinct verdict patterns", failures=failures)


POINTS_2 = [(0, 0), (1, 0), (0, 1), (-1, 2), ("1/2", "-3")]
POINTS_4 = [(0, 0, 0, 0), (1, 2, 3, 4), (-1, "1/2", 0, 2), (2, -2, 1, "1/3"), (0, 1, -1, 5)]


def _standard_r2() -> list[tuple[str, GeneralizedStructure]]:
    R2 = Chart(("x", "y"))
    c0, c1 = R2.const(0), R2.const(1)
    omega = KForm(R2, 2, {(0, 1): 1})
    J = EndoField(R2, [[c0, -c1], [c1, c0]])
    symplectic = GeneralizedStructure(EndoField.zero(R2), invert_2form(omega), -omega)
    complex_ = GeneralizedStructure(J, Bivector.zero(R2), KForm.zero(R2, 2))
    return [("symplectic R2", symplectic), ("complex R2", complex_)]


def criterion_9() -> CriterionResult:
    cases = _standard_r2() + [("fuzzed R4", _fuzzer(4, 1, 9).valid_gcs())]
    details, failures, ok = [], [], True
    for name, s in cases:
        pts = POINTS_2 if s.chart.dimension == 2 else POINTS_4
        passed = sum(eigenspace_check(s, p).certified for p in pts)
        ok &= check_gcs(s).certified and passed == len(pts)
        details.append(f"{name} {passed}/{len(pts)}")
        if passed != len(pts):
            failures.append(name)
    return CriterionResult(9, "eigenspace", ok, ", ".join(details), failures=failures)


CLI_CASES = [
    (["check", "symplectic_r2", "--target", "symplectic", "--suite", "gcs"], 0),
    (["check", "broken_sigma", "--target", "symplectic", "--suite", "gcs"], 1),
    (["check", "missing_tensor", "--target", "symplectic", "--suite", "gcs"], 2),
    (["check", "malformed", "--target", "symplectic", "--suite", "gcs"], 2),
    (["check", "hitchin_id_r2", "--target", "pair", "--suite", "groupoid"], 0),
    (["convert", "complex_r2", "--target", "complex", "--op", "gcs-to-hitchin"], 1),
]
ROUND_TRIP_FIXTURES = ["symplectic_r2", "broken_sigma", "hitchin_id_r2", "complex_r2", "maps_r4",
                       "holomorphic_symplectic_r4", "missing_tensor"]


def criterion_10(run: Callable[[list[str]], int] = cli_main) -> CriterionResult:
    import contextlib
    import io

    failures = []
    for argv, code in CLI_CASES:
        with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
            got = run(argv)
        if got != code:
            failures.append(f"{' '.join(argv[:2])}: exit {got}, expected {code}")
    stable = 0
    for name in ROUND_TRIP_FIXTURES:
        text = fixture_path(name).read_text()
        once = print_structure_file(parse_structure_file(text))
        if once == text and print_structure_file(parse_structure_file(once)) == once:
            stable += 1
        else:
            failures.append(f"{name} round trip")
    ok = not failures
    return CriterionResult(10, "CLI contract", ok,
                           f"{len(CLI_CASES) - sum('exit' in f for f in failures)}/{len(CLI_CASES)} exit codes, "
                           f"{stable}/{len(ROUND_TRIP_FIXTURES)} byte-stable round trips", failures=failures)


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def run_criterion(number: int) -> CriterionResult:
    start = time.perf_counter()
    result = CRITERIA[number]()
    result.elapsed = time.perf_counter() - start
    return result
