#!/usr/bin/env python3
"""Run every verification suite and write one CSV per suite.

Usage: python3 scripts/run_all_suites.py [--seed N] [--trials N] [--outdir DIR]
"""

import argparse
import os
import sys

from dvconv import experiments


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--outdir", default="suite_results")
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    all_pass = True
    for name, fn in experiments.SUITES.items():
        kwargs = {}
        if name not in ("stability", "min-output"):
            kwargs = {"seed": args.seed, "trials": args.trials}
        report = fn(**kwargs)
        path = os.path.join(args.outdir, f"{name}.csv")
        with open(path, "w") as fh:
            fh.write(report.to_csv())
        status = "PASS" if report.passed else "FAIL"
        print(f"{name:14s} {status}  records={len(report.records):5d}  "
              f"max_violation={report.max_violation:.3e}  "
              f"wall={report.wall_time:.1f}s")
        all_pass &= report.passed
    return 0 if all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
