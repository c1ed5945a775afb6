"""Census of critical pairs: counts per n, the two criteria side by side, and the
2-power expansions.
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from math import gcd

from quotsing.hjcf import hj_expand, is_critical_pair, is_critical_pair_arith, nonlift_divisibility_witness, two_adic_part


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=1000)
    ap.add_argument("--show", type=int, default=24, help="print critical pairs for n up to this value")
    args = ap.parse_args(argv)

    per_two_part: Counter = Counter()
    total = disagree = 0
    for n in range(2, args.max_n + 1):
        for d in range(1, n):
            if gcd(n, d) != 1:
                continue
            shape, arith = is_critical_pair(n, d), is_critical_pair_arith(n, d)
            disagree += shape != arith
            if shape:
                total += 1
                per_two_part[two_adic_part(n)] += 1
                if n <= args.show:
                    o = nonlift_divisibility_witness(n, d)
                    print(f"({n}, {d})  {hj_expand(n, d)}  o={o}")
    print(f"\n{total} critical pairs with n <= {args.max_n}; criteria disagree on {disagree}")
    print("by 2-part of n:", dict(sorted(per_two_part.items())))
    print("\n2-power expansions:")
    for a in range(1, 8):
        n = 2**a
        for d in sorted({1, n // 2 - 1, n // 2 + 1, n - 1}):
            if 1 <= d < n and d % 2:
                e = hj_expand(n, d)
                shown = e if len(e) <= 9 else e[:3] + ("...",) + e[-3:]
                print(f"  {n}/{d}: length {len(e)}, {shown}, critical={is_critical_pair(n, d)}")
    return 1 if disagree else 0


if __name__ == "__main__":
    sys.exit(main())
