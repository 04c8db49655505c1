#!/usr/bin/env python3
"""Sweep the sample/time trade-off across a grid of t values.

Halving t roughly halves the closed-form mistake bound's kn/t term's
denominator — samples go up — while shrinking the covering family, so
each round costs less.  This script runs the bench driver over a grid
and prints the table together with the logged family-size rates.

Usage:  python3 scripts/tradeoff_sweep.py [--n 96] [--k 3] \
            [--t-grid 24,12,6] [--alpha 2] [--trials 10] [--seed 0]
"""

import argparse
import logging

from sparseparity.harness import BENCH_HEADER, bench_tradeoff


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=96)
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--t-grid", default="24,12,6")
    parser.add_argument("--alpha", type=int, default=2)
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format="%(message)s")
    t_values = tuple(int(part) for part in args.t_grid.split(","))
    table = bench_tradeoff(
        n=args.n, k=args.k, t_values=t_values, alpha=args.alpha,
        trials=args.trials, seed=args.seed,
    )
    widths = [max(len(h), 12) for h in BENCH_HEADER]
    print("  ".join(h.rjust(w) for h, w in zip(BENCH_HEADER, widths)))
    for row in table:
        cells = []
        for name, w in zip(BENCH_HEADER, widths):
            value = row[name]
            text = f"{value:.2f}" if isinstance(value, float) else str(value)
            cells.append(text.rjust(w))
        print("  ".join(cells))


if __name__ == "__main__":
    main()
