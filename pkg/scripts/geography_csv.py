"""Write the realized (c1^2, chi_h) lattice for a window in both coordinatizations."""

import argparse
import csv
import sys

from chernplan.planner import Window, enumerate_region_4d


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--chi-min", type=int, default=2)
    ap.add_argument("--chi-max", type=int, default=6)
    ap.add_argument("--gr", type=int, default=0, help="g + r of the prescribed group")
    ap.add_argument("--spin", action="store_true")
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["coordinates", "c1sq", "chi_h", "e", "sigma", "family"])
    for coords in ("euler_shift", "c1sq_shift"):
        for p in enumerate_region_4d(Window(args.chi_min, args.chi_max), g=args.gr, spin=args.spin, coordinates=coords):
            out.writerow([coords, p.c1sq, p.chi_h, p.e, p.sigma, p.family])


if __name__ == "__main__":
    main()
