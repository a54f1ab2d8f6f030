#!/usr/bin/env python3
"""Compare how the two winner semantics scale with the number of voters.

  python3 scripts/mew_vs_mpw.py [--m 9] [--max-n 10]

Expected-score winner determination is linear in the number of voters, while
the winning-probability computation convolves per-voter score distributions
and its state space blows up; this script prints both runtimes side by side.
"""

import argparse
import time

import mewvote as mv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=9)
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument("--phi", type=float, default=0.5)
    parser.add_argument("--p-max", type=float, default=0.1)
    args = parser.parse_args()

    rule = mv.make_rule("plurality", args.m)
    print(f"{'n':>4} {'t_mew[s]':>10} {'t_mpw[s]':>10} {'mpw_states':>11}")
    for n in range(1, args.max_n + 1):
        prof = mv.generate(mv.GenSpec(kind="poset", m=args.m, n=n,
                                      phi=args.phi, p_max=args.p_max, seed=1000 + n))
        t0 = time.perf_counter()
        mv.mew(prof, rule, pruning=False, grouping=False)
        t_mew = time.perf_counter() - t0
        t0 = time.perf_counter()
        result = mv.mpw(prof, rule)
        t_mpw = time.perf_counter() - t0
        print(f"{n:>4} {t_mew:>10.4f} {t_mpw:>10.4f} {result.worlds_explored:>11}")


if __name__ == "__main__":
    main()
