"""Fit the decay of |p_asym - p_inf| in r_o for each register increment q.

Also prints the leading-plus-first-correction residual, which should fall
faster than the correction itself.
"""

import argparse

from shorbench.asymptotics import convergence_slope, expansion, p_asym

EXPECTED = {2: -4, 1: -4, 0: -2, -1: -1, -2: -1, -3: -1}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=11)
    ap.add_argument("--hi", type=int, default=201)
    args = ap.parse_args()
    r_o = range(args.lo | 1, args.hi + 1, 2)
    print(f"{'q':>3} {'slope':>9} {'expected':>9}")
    for q, want in EXPECTED.items():
        print(f"{q:>3} {convergence_slope(q, r_o):>9.4f} {want:>9d}")
    print()
    print(f"{'q':>3} {'r_o':>5} {'p_asym':>14} {'expansion':>14} {'residual':>10}")
    for q in EXPECTED:
        for n in (args.lo | 1, args.hi | 1):
            e = expansion(n, q)
            pa = p_asym(n, q)
            print(f"{q:>3} {n:>5} {pa:>14.10f} {e.value:>14.10f} {pa - e.value:>10.2e}")


if __name__ == "__main__":
    main()
