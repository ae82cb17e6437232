"""Tuple counts of the incremental biclique index against graph size.

For a d-degenerate graph each vertex creates at most 2^d - d - 1 tuples, so
the count should grow linearly in n. Prints one row per size.

Usage: python3 scripts/tuple_growth.py [--degeneracy D] [--seed S]
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from confluent import graph as gc
from confluent.enumeration import build_index, degeneracy


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degeneracy", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100, 200, 400, 800])
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bound = 2**args.degeneracy - args.degeneracy - 1
    rows = []
    print(f"{'n':>5} {'d':>2} {'tuples':>7} {'per n':>6} {'bicliques':>9} {'secs':>6}")
    for n in args.sizes:
        g = gc.random_degenerate(n, args.degeneracy, rng)
        t0 = time.perf_counter()
        idx = build_index(g)
        dt = time.perf_counter() - t0
        rows.append((n, idx.tuple_count()))
        print(f"{n:>5} {degeneracy(g):>2} {idx.tuple_count():>7} {idx.tuple_count() / n:>6.2f} {len(idx):>9} {dt:>6.2f}")
    ns, counts = np.array(rows, dtype=float).T
    slope, _ = np.polyfit(ns, counts, 1)
    print(f"least-squares slope {slope:.2f} tuples per vertex (bound {bound})")


if __name__ == "__main__":
    main()
