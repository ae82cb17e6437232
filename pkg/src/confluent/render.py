"""Planar layout of track networks and SVG output.

Positions come from Tutte's barycentric method: the outer face is pinned to
a convex polygon and every other node sits at the average of its
neighbours. Networks that are not 3-connected first get extra edges making
them biconnected with triangulated inner faces; those edges only shape the
layout and are not drawn. The barycentric drawing of such a graph with a
convex outer face is crossing-free, hence so is every subgraph of it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import networkx as nx
import numpy as np
from networkx.algorithms.planar_drawing import triangulate_embedding

from .planarity import Embedding, embed
from .tracks import JUNCTION, TERMINAL, TrackNetwork

Point = tuple[float, float]

TUTTE = "tutte"
TUTTE_AUGMENTED = "tutte-augmented"
TRIVIAL = "trivial"


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class RenderOptions:
    width: float = 640.0
    height: float = 640.0
    margin: float = 32.0
    junction_radius: float = 6.0
    terminal_size: float = 10.0
    stroke_width: float = 2.0
    arrowheads: bool = True
    labels: bool = True

    def __post_init__(self):
        for name in ("width", "height", "junction_radius", "terminal_size", "stroke_width"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.margin < 0 or 2 * self.margin >= min(self.width, self.height):
            raise ValueError("margin must leave room for the drawing")


@dataclass(frozen=True)
class Layout:
    """Node positions in the unit square plus one cubic curve per segment."""

    network: TrackNetwork
    positions: dict[int, Point]
    curves: tuple[tuple[Point, Point, Point, Point], ...]
    method: str
    labels: dict[int, str] = field(default_factory=dict)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        if not self.positions:
            return (0.0, 0.0, 1.0, 1.0)
        xs = [p[0] for p in self.positions.values()]
        ys = [p[1] for p in self.positions.values()]
        return (min(xs), min(ys), max(xs), max(ys))


def _polygon(k: int) -> np.ndarray:
    angles = np.pi / 2 + 2 * np.pi * np.arange(k) / k
    return np.column_stack([np.cos(angles), np.sin(angles)])


def _tutte(graph: nx.Graph, outer: list[int]) -> dict[int, np.ndarray]:
    nodes = sorted(graph.nodes)
    pinned = {v: p for v, p in zip(outer, _polygon(len(outer)))}
    free = [v for v in nodes if v not in pinned]
    pos = dict(pinned)
    if free:
        index = {v: i for i, v in enumerate(free)}
        lap = np.zeros((len(free), len(free)))
        rhs = np.zeros((len(free), 2))
        for v in free:
            i = index[v]
            for w in graph.neighbors(v):
                lap[i, i] += 1
                if w in index:
                    lap[i, index[w]] -= 1
                else:
                    rhs[i] += pinned[w]
        sol = np.linalg.solve(lap, rhs)
        for v in free:
            pos[v] = sol[index[v]]
    return pos


def _outer_cycle(walk: list[int]) -> list[int]:
    seen, out = set(), []
    for v in walk:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _place(n: int, e: Embedding) -> tuple[dict[int, np.ndarray], str]:
    if n == 0:
        return {}, TRIVIAL
    if n <= 2:
        return {v: p for v, p in zip(range(n), _polygon(n) if n == 2 else [np.zeros(2)])}, TRIVIAL
    g = nx.Graph(e.nx_embedding)
    g.add_nodes_from(range(n))
    if n >= 4 and nx.is_connected(g) and nx.node_connectivity(g) >= 3:
        outer = _outer_cycle(e.face_vertices(e.outer_face))
        return _tutte(g, outer), TUTTE
    tri, outer = triangulate_embedding(e.nx_embedding.copy(), fully_triangulate=False)
    return _tutte(nx.Graph(tri), list(outer)), TUTTE_AUGMENTED


def _side_classes(t: TrackNetwork, v: int) -> dict[int, int] | None:
    """Two-colour the segments at ``v`` so that transitions join opposite colours."""
    pairs = t.transitions.get(v, ())
    if not pairs:
        return None
    h = nx.Graph()
    h.add_edges_from(pairs)
    if not nx.is_bipartite(h):
        return None
    colour = {}
    for comp in sorted(nx.connected_components(h), key=min):
        left, _ = nx.bipartite.sets(h.subgraph(comp))
        for s in comp:
            colour[s] = 0 if s in left else 1
    return colour


def _unit(v: np.ndarray) -> np.ndarray:
    norm = float(np.hypot(*v))
    return v / norm if norm > 1e-12 else np.zeros(2)


def layout(t: TrackNetwork, e: Embedding | None = None, labels: dict[int, str] | None = None) -> Layout:
    """Barycentric placement with tangent-aware cubic curves."""
    n = len(t.nodes)
    if e is None:
        e = embed(t.underlying())
    if e.n != n:
        raise LayoutError(f"embedding has {e.n} nodes, network has {n}")
    expected = {frozenset(s) for s in t.segments}
    got = {frozenset((v, w)) for v in e.rotation for w in e.rotation[v]}
    if expected != got:
        raise LayoutError("embedding does not match the network's segments")
    raw, method = _place(n, e)

    # normalise into the unit square
    if raw:
        pts = np.array([raw[v] for v in range(n)], dtype=float)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = float(max(hi - lo)) or 1.0
        pts = (pts - lo) / span
        pts += (1 - (hi - lo) / span) / 2
    else:
        pts = np.zeros((0, 2))

    tangent: dict[tuple[int, int], np.ndarray] = {}
    for node in t.nodes:
        v = node.id
        segs = t.incident.get(v, [])
        classes = _side_classes(t, v) if node.type == JUNCTION else None
        if not classes:
            continue
        means = {}
        for c in (0, 1):
            ends = [pts[_other(t, s, v)] for s in segs if classes.get(s) == c]
            if ends:
                means[c] = np.mean(ends, axis=0)
        if len(means) < 2:
            continue
        axis = _unit(means[1] - means[0])
        for s in segs:
            if s in classes:
                direct = _unit(pts[_other(t, s, v)] - pts[v])
                tangent[(s, v)] = _unit(direct + (axis if classes[s] == 1 else -axis))

    curves = []
    for s, (a, b) in enumerate(t.segments):
        pa, pb = pts[a], pts[b]
        length = float(np.hypot(*(pb - pa))) / 3
        ta = tangent.get((s, a), _unit(pb - pa))
        tb = tangent.get((s, b), _unit(pa - pb))
        c1, c2 = pa + ta * length, pb + tb * length
        curves.append(tuple((float(p[0]), float(p[1])) for p in (pa, c1, c2, pb)))
    positions = {v: (float(pts[v][0]), float(pts[v][1])) for v in range(n)}
    return Layout(t, positions, tuple(curves), method, dict(labels or {}))


def _other(t: TrackNetwork, s: int, v: int) -> int:
    a, b = t.segments[s]
    return b if a == v else a


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _bezier(c, u: float) -> tuple[np.ndarray, np.ndarray]:
    p = [np.array(q) for q in c]
    w = 1 - u
    point = w**3 * p[0] + 3 * w * w * u * p[1] + 3 * w * u * u * p[2] + u**3 * p[3]
    deriv = 3 * w * w * (p[1] - p[0]) + 6 * w * u * (p[2] - p[1]) + 3 * u * u * (p[3] - p[2])
    return point, deriv


def emit_svg(l: Layout, o: RenderOptions | None = None) -> str:
    """Deterministic SVG 1.1 document for a layout."""
    o = o or RenderOptions()
    t = l.network
    inner = min(o.width, o.height) - 2 * o.margin
    ox = (o.width - inner) / 2
    oy = (o.height - inner) / 2

    def xy(p) -> tuple[float, float]:
        # flip y so that larger coordinates point up
        return ox + p[0] * inner, oy + (1 - p[1]) * inner

    def pt(p) -> str:
        x, y = xy(p)
        return f"{_fmt(x)} {_fmt(y)}"

    meta = json.dumps({"layout": l.method, "nodes": len(t.nodes), "segments": len(t.segments)}, sort_keys=True)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(o.width)}" '
        f'height="{_fmt(o.height)}" viewBox="0 0 {_fmt(o.width)} {_fmt(o.height)}">',
        f"<metadata>{escape(meta)}</metadata>",
        "<style>.segment{fill:none;stroke:#234;stroke-width:%s}"
        ".junction{fill:#fff;stroke:#234;stroke-width:1}"
        ".terminal{fill:#e8eef7;stroke:#234;stroke-width:1}"
        ".arrow{fill:#234}.label{font:10px sans-serif;text-anchor:middle}</style>" % _fmt(o.stroke_width),
        '<g id="canvas">',
    ]
    for s, c in enumerate(l.curves):
        out.append(f'<path id="seg-{s}" class="segment" d="M {pt(c[0])} C {pt(c[1])} {pt(c[2])} {pt(c[3])}"/>')
    if t.directed and o.arrowheads:
        for s, c in enumerate(l.curves):
            point, deriv = _bezier(c, 0.6)
            d = _unit(np.array([deriv[0], -deriv[1]]))
            if not d.any():
                continue
            x, y = xy(point)
            size = 2.5 * o.stroke_width
            nrm = np.array([-d[1], d[0]])
            tip = np.array([x, y]) + d * size
            back = np.array([x, y]) - d * size
            left, right = back + nrm * size * 0.7, back - nrm * size * 0.7
            out.append(
                f'<path class="arrow" data-segment="{s}" d="M {_fmt(tip[0])} {_fmt(tip[1])} '
                f'L {_fmt(left[0])} {_fmt(left[1])} L {_fmt(right[0])} {_fmt(right[1])} Z"/>'
            )
    r = o.junction_radius
    for node in t.junctions:
        x, y = xy(l.positions[node.id])
        if node.kind == "clique":
            out.append(
                f'<circle id="node-{node.id}" class="junction clique" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}"/>'
            )
        else:
            h = r * 0.6
            out.append(
                f'<path id="node-{node.id}" class="junction {escape(node.kind or "plain")}" '
                f'd="M {_fmt(x - r)} {_fmt(y - h)} L {_fmt(x)} {_fmt(y)} L {_fmt(x - r)} {_fmt(y + h)} Z '
                f'M {_fmt(x + r)} {_fmt(y - h)} L {_fmt(x)} {_fmt(y)} L {_fmt(x + r)} {_fmt(y + h)} Z"/>'
            )
    half = o.terminal_size / 2
    for node in t.nodes:
        if node.type != TERMINAL:
            continue
        x, y = xy(l.positions[node.id])
        out.append(
            f'<rect id="node-{node.id}" class="terminal" x="{_fmt(x - half)}" y="{_fmt(y - half)}" '
            f'width="{_fmt(o.terminal_size)}" height="{_fmt(o.terminal_size)}"/>'
        )
        if o.labels:
            text = escape(l.labels.get(node.id, str(node.id)))
            out.append(f'<text class="label" x="{_fmt(x)}" y="{_fmt(y - half - 3)}">{text}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def draw_network(t: TrackNetwork, options: RenderOptions | None = None, labels: dict[int, str] | None = None) -> str:
    return emit_svg(layout(t, labels=labels), options)


def straight_crossings(l: Layout) -> list[tuple[int, int]]:
    """Pairs of segments whose straight chords cross (sharing an endpoint is fine)."""

    def orient(p, q, r) -> float:
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    def on_segment(p, q, r) -> bool:
        return min(p[0], r[0]) - 1e-12 <= q[0] <= max(p[0], r[0]) + 1e-12 and min(p[1], r[1]) - 1e-12 <= q[
            1
        ] <= max(p[1], r[1]) + 1e-12

    def cross(a, b, c, d) -> bool:
        d1, d2 = orient(c, d, a), orient(c, d, b)
        d3, d4 = orient(a, b, c), orient(a, b, d)
        if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
            return True
        eps = 1e-12
        return any(
            abs(o) < eps and on_segment(x, y, z)
            for o, x, y, z in ((d1, c, a, d), (d2, c, b, d), (d3, a, c, b), (d4, a, d, b))
        )

    pos = l.positions
    segs = l.network.segments
    out = []
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if set(segs[i]) & set(segs[j]):
                continue
            if cross(pos[segs[i][0]], pos[segs[i][1]], pos[segs[j][0]], pos[segs[j][1]]):
                out.append((i, j))
    return out
