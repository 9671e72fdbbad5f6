"""``gck`` command line: check, convert and fuzz.

Exit codes: 0 certified, 1 refuted or domain error, 2 usage, parse or resolution error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from pathlib import Path

from .algebroid import IMFormCandidate, PoissonAlgebroid, check_im_form
from .courant import check_C2, check_dirac, check_gcs, check_integrability, gauge, opposite, pointwise_report
from .errors import GCKError, NonClosedB, ParseError, ResolutionError
from .fileformat import StructureFile, fixture_path, load, print_structure_file
from .fuzz import Fuzzer, FuzzConfig
from .groupoid import (
    build_pair_hitchin_groupoid,
    check_hitchin_groupoid,
    check_multiplicative_endo,
    check_multiplicative_form,
    check_ts_gholomorphic,
)
from .hitchin import (
    HitchinPair,
    check_hitchin_pair,
    gcs_to_hitchin,
    hitchin_to_gcs,
    sc_structure_check,
    torsion_identity_defect,
)
from .morphism import check_gholomorphic
from .report import CheckReport
from .tensorfield import exterior_d

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2

SUITES = ("gcs", "hitchin", "sc", "dirac", "im", "morphism", "groupoid")
OPS = ("hitchin-to-gcs", "gcs-to-hitchin", "opposite", "gauge", "build-groupoid")


def _resolve_path(raw: str) -> Path:
    """A path on disk, or the name of a bundled fixture."""
    p = Path(raw)
    if p.exists():
        return p
    bundled = fixture_path(raw)
    if bundled.exists():
        return bundled
    raise ResolutionError(f"no such file or bundled fixture: {raw}")


def run_suite(sf: StructureFile, target: str, suite: str) -> CheckReport:
    if suite == "gcs":
        return check_gcs(sf.gcs(target))
    if suite == "dirac":
        s = sf.gcs(target)
        return check_dirac(s.pi, s.a)
    if suite == "im":
        s = sf.gcs(target)
        return check_im_form(PoissonAlgebroid(s.pi), IMFormCandidate.dual_of(s.a))
    if suite == "hitchin":
        return check_hitchin_pair(sf.hitchin(target))
    if suite == "sc":
        p = sf.hitchin(target)
        return sc_structure_check(p.omega, p.a)
    if suite == "morphism":
        return check_gholomorphic(sf.morphism(target))
    if suite == "groupoid":
        pair = sf.hitchin(target)
        base = check_hitchin_pair(pair)
        if not base.certified:
            return CheckReport.combine("groupoid", [base])
        cand = build_pair_hitchin_groupoid(pair)
        g = cand.groupoid
        return CheckReport.combine("groupoid", [
            base,
            check_multiplicative_form(g, cand.omega_S),
            check_multiplicative_endo(g, cand.J_S),
            check_hitchin_groupoid(cand),
            check_ts_gholomorphic(cand),
        ])
    raise ResolutionError(f"unknown suite {suite!r}")


def cmd_check(args) -> int:
    sf = load(_resolve_path(args.file))
    start = time.perf_counter()
    report = run_suite(sf, args.target, args.suite)
    elapsed = time.perf_counter() - start
    print(report.summary())
    if args.json:
        doc = {"file": str(args.file), "target": args.target, "suite": args.suite,
               "elapsed_seconds": round(elapsed, 6), "report": report.to_dict()}
        Path(args.json).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if report.certified else EXIT_REFUTED


def _precheck(report: CheckReport, force: bool) -> None:
    if not report.certified and not force:
        raise _Refused(report)


class _Refused(Exception):
    def __init__(self, report: CheckReport):
        super().__init__(report.name)
        self.report = report


def convert(sf: StructureFile, target: str, op: str, B: str | None = None, force: bool = False) -> StructureFile:
    out = StructureFile()
    if op in ("hitchin-to-gcs", "build-groupoid"):
        pair = sf.hitchin(target)
        _precheck(check_hitchin_pair(pair), force)
        out.add_chart(sf.chart_name(pair.chart), pair.chart)
        if op == "hitchin-to-gcs":
            out.add_gcs(target, hitchin_to_gcs(pair))
            return out
        cand = build_pair_hitchin_groupoid(pair)
        out.add_chart("Sigma", cand.groupoid.total)
        out.add_hitchin(target, pair)
        out.add_hitchin(target + "_groupoid", HitchinPair(cand.omega_S, cand.J_S), prefix="groupoid_")
        out.tensors["twist"] = cand.sigma
        return out
    s = sf.gcs(target)
    _precheck(check_gcs(s), force)
    out.add_chart(sf.chart_name(s.chart), s.chart)
    if op == "gcs-to-hitchin":
        out.add_hitchin(target, gcs_to_hitchin(s))
    elif op == "opposite":
        out.add_gcs(target, opposite(s))
    elif op == "gauge":
        if B is None:
            raise ResolutionError("--B is required for the gauge operation")
        form = sf.form(B, 2)
        if not exterior_d(form).is_zero() and not force:
            raise NonClosedB(f"{B} is not closed")
        out.add_gcs(target, gauge(s, form))
    else:
        raise ResolutionError(f"unknown operation {op!r}")
    return out


def cmd_convert(args) -> int:
    sf = load(_resolve_path(args.file))
    try:
        out = convert(sf, args.target, args.op, args.B, args.force)
    except _Refused as exc:
        print(exc.report.summary(), file=sys.stderr)
        print("input is not certified; use --force to convert anyway", file=sys.stderr)
        return EXIT_REFUTED
    text = print_structure_file(out)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def fuzz_report(seed: int, dim: int, degree: int, count: int) -> dict:
    """Cross-checker agreement counts; deterministic for fixed arguments."""
    fz = Fuzzer(FuzzConfig(seed=seed, dim=dim, degree=degree))
    tally: Counter = Counter()
    for _ in range(count):
        s = fz.structure()
        gcs_ok = check_gcs(s).certified
        direct = pointwise_report(s).certified and check_integrability(s).certified
        tally["gcs vs integrability", gcs_ok == direct] += 1
        tally["certified structures", True] += int(gcs_ok)

        pi, a = fz.poisson_endo_pair()
        im = check_im_form(PoissonAlgebroid(pi), IMFormCandidate.dual_of(a)).certified
        tally["(C2) vs IM form", check_C2(pi, a).certified == im] += 1

        p = fz.commuting_pair()
        tally["torsion identity", all(d.vanishes for d in torsion_identity_defect(p.omega, p.a))] += 1

        if dim % 2 == 0:
            pair = fz.hitchin_pair()
            s2 = hitchin_to_gcs(pair)
            ok = check_gcs(s2).certified and gcs_to_hitchin(s2) == pair and hitchin_to_gcs(gcs_to_hitchin(s2)) == s2
            tally["hitchin round trip", ok] += 1
    props = sorted({k for k, _ in tally if k != "certified structures"})
    return {
        "seed": seed, "dim": dim, "degree": degree, "count": count,
        "certified_structures": tally["certified structures", True],
        "properties": {k: {"pass": tally[k, True], "fail": tally[k, False]} for k in props},
    }


def cmd_fuzz(args) -> int:
    if args.dim not in (2, 3, 4) or not 0 <= args.degree <= 2 or args.count < 0:
        print("fuzz needs --dim in {2,3,4}, --degree in 0..2 and --count >= 0", file=sys.stderr)
        return EXIT_USAGE
    rep = fuzz_report(args.seed, args.dim, args.degree, args.count)
    print(f"fuzz seed={rep['seed']} dim={rep['dim']} degree={rep['degree']} count={rep['count']}")
    for name, c in rep["properties"].items():
        print(f"  {name:<24} pass {c['pass']:>4}  fail {c['fail']:>4}")
    print(f"  certified structures: {rep['certified_structures']}")
    if args.json:
        Path(args.json).write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    failed = any(c["fail"] for c in rep["properties"].values())
    return EXIT_REFUTED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gck", description="Exact checks for generalized complex structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run a check suite on a structure")
    p.add_argument("file", help="structure file, or the name of a bundled fixture")
    p.add_argument("--target", required=True)
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--json", metavar="OUT", help="also write a JSON report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convert", help="convert between presentations")
    p.add_argument("file")
    p.add_argument("--target", required=True)
    p.add_argument("--op", required=True, choices=OPS)
    p.add_argument("--B", help="closed 2-form for --op gauge")
    p.add_argument("--force", action="store_true", help="convert even if the input is refuted")
    p.add_argument("--output", "-o", help="write here instead of stdout")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("fuzz", help="cross-check equivalent checkers on random data")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ResolutionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GCKError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_REFUTED


if __name__ == "__main__":
    sys.exit(main())
