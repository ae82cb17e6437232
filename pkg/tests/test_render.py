from __future__ import annotations

import math
import xml.etree.ElementTree as ET

import pytest

from confluent import graph as gc
from confluent.graph import Graph
from confluent.planarity import embed
from confluent.reduction import reduce_directed, reduce_undirected
from confluent.render import (
    TUTTE,
    LayoutError,
    RenderOptions,
    emit_svg,
    layout,
)
from confluent.tracks import (
    NetworkBuilder,
    build_cocycle_track,
    build_cotree_track,
    build_interval_track,
    from_reduction,
)

from oracles import segments_cross

SVG = "{http://www.w3.org/2000/svg}"


def network(g):
    return from_reduction(reduce_undirected(g))


def crossings(l):
    segs = l.network.segments
    pos = l.positions
    found = 0
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if set(segs[i]) & set(segs[j]):
                continue
            a, b = segs[i]
            c, d = segs[j]
            found += segments_cross(pos[a], pos[b], pos[c], pos[d])
    return found


def assert_separated(l):
    pts = list(l.positions.values())
    eps = 1e-6 * math.sqrt(2)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            assert math.dist(pts[i], pts[j]) > eps


def test_c4_layout():
    l = layout(network(gc.cycle_graph(4)))
    assert len(l.positions) == 4
    assert_separated(l)
    assert crossings(l) == 0


def test_k5_junction_is_central():
    l = layout(network(gc.complete_graph(5)))
    j = l.positions[5]
    xs = [l.positions[v][0] for v in range(5)]
    ys = [l.positions[v][1] for v in range(5)]
    assert min(xs) < j[0] < max(xs) and min(ys) < j[1] < max(ys)


def test_cube_layout_is_convex_and_crossing_free():
    l = layout(network(gc.hypercube(3)))
    assert l.method == TUTTE
    assert crossings(l) == 0
    assert_separated(l)


@pytest.mark.parametrize(
    "t",
    [
        network(gc.complete_bipartite(3, 3)),
        network(gc.complete_graph(7)),
        build_cotree_track(gc.path_graph(7)),
        build_cocycle_track(9),
        build_interval_track(gc.IntervalModel.of([(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)])),
    ],
)
def test_layouts_are_crossing_free(t):
    l = layout(t)
    assert crossings(l) == 0
    assert_separated(l)
    for (a, b), curve in zip(t.segments, l.curves):
        assert curve[0] == l.positions[a] and curve[3] == l.positions[b]


def test_random_three_connected_planar_graphs(rng):
    for _ in range(10):
        # wheels are 3-connected
        n = rng.randint(4, 12)
        rim = [(i, (i + 1) % n) for i in range(n)]
        spokes = [(i, n) for i in range(n)]
        g = Graph.from_edges(n + 1, rim + spokes)
        l = layout(network(g))
        assert l.method == TUTTE and crossings(l) == 0


def test_layout_rejects_mismatched_embedding():
    with pytest.raises(LayoutError):
        layout(network(gc.cycle_graph(4)), embed(gc.cycle_graph(5)))
    with pytest.raises(LayoutError):
        layout(network(gc.cycle_graph(4)), embed(gc.path_graph(4)))


def parse(svg: str):
    return ET.fromstring(svg.encode())


def test_empty_graph_svg():
    svg = emit_svg(layout(NetworkBuilder(0).build()))
    root = parse(svg)
    (canvas,) = root.iter(SVG + "g")
    assert canvas.get("id") == "canvas" and len(canvas) == 0


def test_k5_svg_structure():
    svg = emit_svg(layout(network(gc.complete_graph(5))))
    root = parse(svg)
    assert len(list(root.iter(SVG + "circle"))) == 1
    spokes = [p for p in root.iter(SVG + "path") if p.get("class") == "segment"]
    assert len(spokes) == 5


def test_segment_ids_unique_and_glyph_counts():
    t = network(gc.add_edge_triangles(gc.complete_bipartite(2, 3)))
    root = parse(emit_svg(layout(t)))
    ids = [p.get("id") for p in root.iter(SVG + "path") if p.get("class") == "segment"]
    assert sorted(ids) == sorted(f"seg-{i}" for i in range(len(t.segments)))
    glyphs = [e for e in root.iter() if (e.get("class") or "").startswith("junction")]
    assert len(glyphs) == len(t.junctions)


def test_directed_segments_get_arrowheads():
    d = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)], directed=True)
    t = from_reduction(reduce_directed(d))
    root = parse(emit_svg(layout(t)))
    arrows = [p for p in root.iter(SVG + "path") if p.get("class") == "arrow"]
    assert len(arrows) == len(t.segments)
    root = parse(emit_svg(layout(t), RenderOptions(arrowheads=False)))
    assert not [p for p in root.iter(SVG + "path") if p.get("class") == "arrow"]


def test_svg_is_deterministic():
    t = build_cotree_track(gc.path_graph(6))
    assert emit_svg(layout(t)) == emit_svg(layout(t))


def test_options_validate():
    with pytest.raises(ValueError):
        RenderOptions(width=0)
    with pytest.raises(ValueError):
        RenderOptions(margin=400)


def test_labels_toggle():
    t = network(gc.complete_graph(5))
    with_labels = emit_svg(layout(t, labels={0: "a<b"}))
    assert "a&lt;b" in with_labels
    assert "<text" not in emit_svg(layout(t), RenderOptions(labels=False))
