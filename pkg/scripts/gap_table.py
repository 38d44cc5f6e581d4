"""Tabulate the slope gap where the discriminant is negative, for a range of n and g."""

import argparse

from curvechow.stability import bogomolov_gap, gap_radicand


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=12)
    parser.add_argument("--g-max", type=int, default=4)
    args = parser.parse_args()

    print(f"{'n':>3} {'g':>3} {'radicand':>9}  gap")
    for n in range(2, args.n_max + 1):
        for g in range(args.g_max + 1):
            gap = bogomolov_gap(n, g)
            if gap is None:
                shown = "empty"
            else:
                lo, hi = gap.endpoints()
                lo_f, hi_f = gap.approx()
                shown = f"({lo}, {hi})  ~ ({lo_f:.3f}, {hi_f:.3f})"
            print(f"{n:>3} {g:>3} {gap_radicand(n, g):>9}  {shown}")


if __name__ == "__main__":
    main()
