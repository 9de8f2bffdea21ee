"""Scheme A/B campaigns over generated semiprimes, plus a random-base baseline.

For each (c_p, c_q) the script draws a few semiprimes, runs the matching
scheme and a random-base control, and reports success fractions. The schemes
should succeed every time; the control follows the unconditional rate.
"""

import argparse

from shorbench.factor_bench import choose_random, factor_attempt, gen_semiprime, run_campaign
from shorbench.sampler import make_rng


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--specs", type=int, default=5)
    ap.add_argument("--runs", type=int, default=200)
    ap.add_argument("--d-max", type=int, default=2001)
    args = ap.parse_args()
    rng = make_rng(args.seed, 1 << 40)
    print(f"{'c_p':>3} {'c_q':>3} {'N':>10} {'scheme':>6} {'rate':>6} {'random':>7}")
    for c_p, c_q in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 4), (5, 3)]:
        for _ in range(args.specs):
            spec = gen_semiprime(c_p, c_q, args.d_max, rng)
            rep = run_campaign(spec, spec.scheme, args.runs, args.seed)
            ctrl_rng = make_rng(args.seed, 1 << 41)
            ctrl = sum(factor_attempt(choose_random(spec, ctrl_rng), spec).success for _ in range(args.runs))
            print(f"{c_p:>3} {c_q:>3} {spec.N:>10} {spec.scheme:>6} "
                  f"{rep.success_fraction:>6.3f} {ctrl / args.runs:>7.3f}")


if __name__ == "__main__":
    main()
