"""Compare the closed-form R2 test with the brute-force oracle on all abelian groups up to a bound."""
from __future__ import annotations

import argparse
import csv
import sys
import time

from quotsing.abelian import abelian_groups_up_to, faithful_diagonal_reps, is_R2_abelian, is_R2_abelian_bruteforce


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=120)
    ap.add_argument("--csv", default=None, help="write one row per group")
    args = ap.parse_args(argv)

    rows, disagreements = [], 0
    t0 = time.perf_counter()
    for g in abelian_groups_up_to(args.max_order):
        if g.order == 1:
            continue
        formula, brute = is_R2_abelian(g), is_R2_abelian_bruteforce(g)
        disagreements += formula != brute
        rows.append((str(g), g.order, len(faithful_diagonal_reps(g)), formula, brute))
    dt = time.perf_counter() - t0

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["group", "order", "faithful_pairs", "formula_R2", "bruteforce_R2"])
            w.writerows(rows)
    not_r2 = [r[0] for r in rows if not r[3]]
    print(f"{len(rows)} groups of order <= {args.max_order}, {disagreements} disagreements, {dt:.1f}s")
    print(f"not R2 ({len(not_r2)}): {', '.join(not_r2[:20])}{' ...' if len(not_r2) > 20 else ''}")
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
