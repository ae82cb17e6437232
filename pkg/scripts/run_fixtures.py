"""Heuristic and exhaustive verdicts on the standard fixture graphs.

Usage: python3 scripts/run_fixtures.py [--max-states N]
"""
from __future__ import annotations

import argparse
import time

from confluent import graph as gc
from confluent.oracle import Budget, decide_confluence, merge_candidates
from confluent.reduction import reduce_undirected

FIXTURES = {
    "K5": gc.complete_graph(5),
    "K6": gc.complete_graph(6),
    "K3,3": gc.complete_bipartite(3, 3),
    "K4,4": gc.complete_bipartite(4, 4),
    "petersen": gc.petersen(),
    "petersen-v": gc.petersen_minus_vertex(),
    "subdiv K5": gc.subdivide(gc.complete_graph(5)),
    "subdiv K3,3": gc.subdivide(gc.complete_bipartite(3, 3)),
    "tri K5": gc.add_edge_triangles(gc.complete_graph(5)),
    "Q4": gc.hypercube(4),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-states", type=int, default=10**6)
    args = ap.parse_args()
    print(f"{'graph':<12} {'n':>3} {'m':>3} {'cands':>5} {'heuristic':>10} {'oracle':>16} {'states':>7} {'secs':>6}")
    for name, g in FIXTURES.items():
        t0 = time.perf_counter()
        heuristic = reduce_undirected(g)
        verdict = decide_confluence(g, Budget(max_states=args.max_states))
        dt = time.perf_counter() - t0
        print(
            f"{name:<12} {g.n:>3} {g.m:>3} {len(merge_candidates(g)):>5} {heuristic.status.value:>10}"
            f" {verdict.describe():>16} {verdict.stats.states:>7} {dt:>6.2f}"
        )


if __name__ == "__main__":
    main()
