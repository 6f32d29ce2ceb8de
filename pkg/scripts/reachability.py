"""Which c1c2 = 24k the realization planner reaches, per group size g + r.

Prints one line per g + r with the unreachable k in the scanned range.
"""

import argparse

from chernplan.fpgroup import Presentation
from chernplan.planner import SearchExhaustedError, Target6, plan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=30)
    ap.add_argument("--gr-max", type=int, default=4)
    args = ap.parse_args()
    for gr in range(args.gr_max + 1):
        group = Presentation(tuple(f"a{i}" for i in range(gr)))
        missing = []
        families = {}
        for k in range(-args.k_max, args.k_max + 1):
            try:
                p = plan(Target6(0, 24 * k, 0, group))
            except SearchExhaustedError:
                missing.append(k)
                continue
            families.setdefault(p.family, []).append(k)
        spans = ", ".join(f"{f}: {min(ks)}..{max(ks)}" for f, ks in sorted(families.items()))
        print(f"g+r={gr}  unreachable k={missing}  ({spans})")


if __name__ == "__main__":
    main()
