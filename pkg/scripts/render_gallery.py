"""Write SVG drawings of the drawable fixtures and the four constructions.

Usage: python3 scripts/render_gallery.py [OUT_DIR]
"""
from __future__ import annotations

import argparse
from pathlib import Path

from confluent import graph as gc
from confluent.reduction import reduce_undirected
from confluent.render import draw_network
from confluent.tracks import (
    build_cocycle_track,
    build_cograph_track,
    build_cotree_track,
    build_interval_track,
    from_reduction,
)


def networks():
    for name, g in [
        ("k5", gc.complete_graph(5)),
        ("k7", gc.complete_graph(7)),
        ("k33", gc.complete_bipartite(3, 3)),
        ("k45", gc.complete_bipartite(4, 5)),
        ("k33_plus_edge", gc.Graph.from_edges(6, gc.complete_bipartite(3, 3).edges | {(0, 1)})),
    ]:
        yield name, from_reduction(reduce_undirected(g)), None
    model = gc.IntervalModel.of([(0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (6, 11)])
    yield "interval", build_interval_track(model), None
    expr = gc.parse_cograph("~U(~U(a, b), ~U(~U(c, d), ~U(e, f), g))")
    yield "cograph", build_cograph_track(expr), gc.cograph(expr).labels
    yield "cotree_path8", build_cotree_track(gc.path_graph(8)), None
    yield "cocycle9", build_cocycle_track(9), None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", nargs="?", default="gallery")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, net, labels in networks():
        path = out / f"{name}.svg"
        path.write_text(draw_network(net, labels=labels))
        print(f"{path}  {len(net.terminals)} terminals, {len(net.junctions)} junctions, {len(net.segments)} segments")


if __name__ == "__main__":
    main()
