"""Sweep the fuzz cross-checks over seeds, dimensions and degrees; write a CSV of the counts."""
from __future__ import annotations

import argparse
import csv
import sys
import time

from gck.cli import fuzz_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=5, help="seeds 0..N-1")
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    parser.add_argument("--degrees", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--out", default="-", help="CSV path, or - for stdout")
    args = parser.parse_args()

    rows, disagreements = [], 0
    for dim in args.dims:
        for degree in args.degrees:
            for seed in range(args.seeds):
                start = time.perf_counter()
                rep = fuzz_report(seed, dim, degree, args.count)
                elapsed = time.perf_counter() - start
                for name, c in rep["properties"].items():
                    disagreements += c["fail"]
                    rows.append({"dim": dim, "degree": degree, "seed": seed, "property": name,
                                 "pass": c["pass"], "fail": c["fail"],
                                 "certified_structures": rep["certified_structures"],
                                 "seconds": f"{elapsed:.3f}"})
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=list(rows[0]) if rows else ["dim"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"total disagreements: {disagreements}", file=sys.stderr)
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
