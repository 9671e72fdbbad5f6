"""Run the acceptance criteria and print one PASS/FAIL line each.

    python3 scripts/run_acceptance.py            # all criteria
    python3 scripts/run_acceptance.py 1 6        # a selection
"""
from __future__ import annotations

import argparse
import sys

from gck.acceptance import CRITERIA, run_criterion


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    parser.add_argument("--verbose", "-v", action="store_true", help="list failing instances")
    args = parser.parse_args()
    chosen = args.criteria or sorted(CRITERIA)
    unknown = [n for n in chosen if n not in CRITERIA]
    if unknown:
        parser.error(f"unknown criteria: {unknown}")
    failed = 0
    for n in chosen:
        result = run_criterion(n)
        print(result.line(), flush=True)
        if not result.passed:
            failed += 1
            if args.verbose:
                for f in result.failures:
                    print(f"    {f}")
    print(f"{len(chosen) - failed}/{len(chosen)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
