#!/usr/bin/env python3
"""End-to-end sharpness demonstration for a handful of s values.

For each s this script:
  1. verifies the comparison holds on the grid exactly at the closed-form
     cutoffs p and q;
  2. nudges each cutoff by +/- 1e-3 into the failing region and shows the
     counterexample gap the falsifier finds (with its extended-precision
     margin);
  3. certifies the sign rigorously on the compact interval [0.01, 0.99]
     just inside the lower cutoff, via outward-rounded interval bisection.

    python scripts/sharpness_report.py --s 1 2 5
"""

import argparse
import sys

from meanbounds import (
    certificate_leaves,
    certificate_succeeded,
    certify_sign,
    falsify,
    sharp_thresholds,
    verify_family_inequality,
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=float, nargs="+", default=[1.0, 2.0, 5.0])
    ap.add_argument("--budget", type=int, default=100_000)
    args = ap.parse_args(argv)

    failures = 0
    for s in args.s:
        ts = sharp_thresholds(s)
        print(f"\n=== s = {s:g}:  p = {ts.p:.12f}   q = {ts.q:.12f} ===")

        for t, side in ((ts.p, "lower"), (ts.q, "upper")):
            rep = verify_family_inequality(t, s, side)
            print(f"  at sharp {side} cutoff: {rep.verdict} "
                  f"(worst margin {rep.worst_margin:.3e})")
            failures += rep.verdict != "holds_on_grid"

        for t, side in ((ts.p + 1e-3, "lower"), (ts.q - 1e-3, "upper")):
            res = falsify(t, s, side)
            if res.found:
                w = res.witness
                print(f"  {side} cutoff shifted by 1e-3: counterexample at "
                      f"gap x = {w.x:.12g} (margin {w.margin_recheck:.3e})")
            else:
                print(f"  {side} cutoff shifted by 1e-3: no witness found "
                      f"({res.note})")
                failures += 1

        nodes = certify_sign(ts.p - 0.01, s, 0.01, 0.99, "negative",
                             budget=args.budget)
        ok = certificate_succeeded(nodes, "negative")
        print(f"  certificate at t = p - 0.01 on [0.01, 0.99]: "
              f"{'proved negative' if ok else 'INCOMPLETE'} "
              f"({len(certificate_leaves(nodes))} leaves, "
              f"{len(nodes)} nodes)")
        failures += not ok

    print(f"\n{'all checks passed' if failures == 0 else f'{failures} checks FAILED'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
