"""Track networks: a combinatorial model of confluent drawings.

A network has terminal nodes (the drawn vertices), junction nodes, and
segments between nodes. At every node a set of transitions lists which pairs
of incident segments a smooth curve may pass between. Two terminals are
adjacent in the realized graph when a curve runs from one to the other using
only allowed transitions and never reusing a segment.

Terminals carry no transitions unless a construction adds them explicitly,
so a curve ends at the first terminal it reaches.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .graph import (
    Complement,
    CographExpr,
    Edge,
    Graph,
    IntervalModel,
    Leaf,
    cograph_leaves,
    is_tree,
)
from .reduction import BICLIQUE, CLIQUE, DIRECTED, ReductionResult, replay

TERMINAL = "terminal"
JUNCTION = "junction"


class TrackError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    id: int
    type: str
    kind: str | None = None


@dataclass(frozen=True)
class TrackNetwork:
    """Nodes ``0..n_terminals-1`` are terminals for vertices of the same id.

    ``segments[i]`` is the node pair of segment ``i`` (tail, head when
    directed). ``transitions[v]`` holds segment pairs, unordered (stored
    sorted) for undirected networks and ``(incoming, outgoing)`` otherwise.
    """

    nodes: tuple[Node, ...]
    segments: tuple[Edge, ...]
    transitions: dict[int, frozenset[tuple[int, int]]] = field(hash=False)
    directed: bool = False

    def __post_init__(self):
        for i, node in enumerate(self.nodes):
            if node.id != i:
                raise TrackError(f"node ids must be dense, found {node.id} at {i}")
        seen = set()
        for a, b in self.segments:
            if a == b or not (0 <= a < len(self.nodes) and 0 <= b < len(self.nodes)):
                raise TrackError(f"bad segment ({a}, {b})")
            key = (a, b) if self.directed else (min(a, b), max(a, b))
            if key in seen:
                raise TrackError(f"parallel segment ({a}, {b})")
            seen.add(key)
        for v, pairs in self.transitions.items():
            for s, t in pairs:
                if s == t:
                    raise TrackError(f"transition at {v} repeats segment {s}")
                if self.directed:
                    if self.segments[s][1] != v or self.segments[t][0] != v:
                        raise TrackError(f"transition ({s}, {t}) at {v} does not pass through it")
                elif v not in self.segments[s] or v not in self.segments[t]:
                    raise TrackError(f"transition ({s}, {t}) at {v} uses a segment not incident to it")

    @property
    def terminals(self) -> list[int]:
        return [n.id for n in self.nodes if n.type == TERMINAL]

    @property
    def junctions(self) -> list[Node]:
        return [n for n in self.nodes if n.type == JUNCTION]

    @cached_property
    def incident(self) -> dict[int, list[int]]:
        inc: dict[int, list[int]] = defaultdict(list)
        for i, (a, b) in enumerate(self.segments):
            inc[a].append(i)
            inc[b].append(i)
        return inc

    def allows(self, v: int, s: int, t: int) -> bool:
        pairs = self.transitions.get(v, ())
        if self.directed:
            return (s, t) in pairs
        return (min(s, t), max(s, t)) in pairs

    def underlying(self) -> Graph:
        """Node/segment graph with directions dropped."""
        return Graph.from_edges(len(self.nodes), self.segments, directed=False)

    def to_json(self) -> dict:
        nodes = []
        for n in self.nodes:
            d: dict = {"id": n.id, "type": n.type}
            if n.kind is not None:
                d["kind"] = n.kind
            nodes.append(d)
        segments = []
        for i, (a, b) in enumerate(self.segments):
            d = {"id": i, "a": a, "b": b}
            if self.directed:
                d["directed"] = True
            segments.append(d)
        transitions = {str(v): [list(p) for p in sorted(ps)] for v, ps in sorted(self.transitions.items()) if ps}
        return {"nodes": nodes, "segments": segments, "transitions": transitions}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, d: dict) -> "TrackNetwork":
        nodes = tuple(Node(x["id"], x["type"], x.get("kind")) for x in d["nodes"])
        segs = tuple((s["a"], s["b"]) for s in sorted(d["segments"], key=lambda s: s["id"]))
        directed = any(s.get("directed") for s in d["segments"])
        trans = {int(v): frozenset(tuple(p) for p in ps) for v, ps in d["transitions"].items()}
        return cls(nodes, segs, trans, directed)


class NetworkBuilder:
    """Incremental construction helper; ``build`` drops unusable junctions."""

    def __init__(self, n_terminals: int, directed: bool = False):
        self.directed = directed
        self.nodes: list[Node] = [Node(i, TERMINAL) for i in range(n_terminals)]
        self.segments: dict[Edge, int] = {}
        self.seg_list: list[Edge] = []
        self.trans: dict[int, set[tuple[int, int]]] = defaultdict(set)

    def junction(self, kind: str) -> int:
        j = len(self.nodes)
        self.nodes.append(Node(j, JUNCTION, kind))
        return j

    def segment(self, a: int, b: int) -> int:
        key = (a, b) if self.directed else (min(a, b), max(a, b))
        if key not in self.segments:
            self.segments[key] = len(self.seg_list)
            self.seg_list.append((a, b))
        return self.segments[key]

    def allow(self, v: int, s: int, t: int) -> None:
        self.trans[v].add((s, t) if self.directed else (min(s, t), max(s, t)))

    def allow_all(self, v: int, segs: Iterable[int]) -> None:
        for s, t in itertools.combinations(sorted(set(segs)), 2):
            self.allow(v, s, t)

    def allow_cross(self, v: int, left: Iterable[int], right: Iterable[int]) -> None:
        right = list(right)
        for s in left:
            for t in right:
                if s != t:
                    self.allow(v, s, t)

    def build(self, prune: bool = True) -> TrackNetwork:
        nodes, segs, trans = self.nodes, self.seg_list, self.trans
        if prune:
            nodes, segs, trans = _prune(nodes, segs, trans, self.directed)
        return TrackNetwork(
            tuple(nodes),
            tuple(segs),
            {v: frozenset(p) for v, p in trans.items() if p},
            self.directed,
        )


def _prune(nodes, segs, trans, directed):
    """Remove junctions that no curve can cross, then renumber densely."""
    alive_seg = set(range(len(segs)))
    alive_node = {n.id for n in nodes}
    changed = True
    while changed:
        changed = False
        for n in nodes:
            if n.type != JUNCTION or n.id not in alive_node:
                continue
            live_pairs = [p for p in trans.get(n.id, ()) if p[0] in alive_seg and p[1] in alive_seg]
            used = {s for p in live_pairs for s in p}
            incident = {i for i in alive_seg if n.id in segs[i]}
            if not live_pairs:
                alive_node.discard(n.id)
                alive_seg -= incident
                changed = True
            elif incident - used:
                alive_seg -= incident - used
                changed = True
    node_map = {}
    new_nodes = []
    for n in nodes:
        if n.id in alive_node:
            node_map[n.id] = len(new_nodes)
            new_nodes.append(Node(len(new_nodes), n.type, n.kind))
    seg_map = {}
    new_segs = []
    for i in sorted(alive_seg):
        seg_map[i] = len(new_segs)
        a, b = segs[i]
        new_segs.append((node_map[a], node_map[b]))
    new_trans: dict[int, set] = {}
    for v, pairs in trans.items():
        if v not in node_map:
            continue
        kept = {(seg_map[s], seg_map[t]) for s, t in pairs if s in seg_map and t in seg_map}
        if not directed:
            kept = {(min(p), max(p)) for p in kept}
        new_trans[node_map[v]] = kept
    return new_nodes, new_segs, new_trans


# -- realized edges -----------------------------------------------------------


def _moves(t: TrackNetwork):
    """State graph over (segment, node the curve is heading into)."""
    nxt: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for v, pairs in t.transitions.items():
        for s, u in pairs:
            orders = [(s, u)] if t.directed else [(s, u), (u, s)]
            for x, y in orders:
                a, b = t.segments[y]
                nxt[(x, v)].append((y, b if a == v else a))
    return nxt


def _starts(t: TrackNetwork, u: int) -> list[tuple[int, int]]:
    out = []
    for s in t.incident.get(u, ()):
        a, b = t.segments[s]
        if t.directed:
            if a == u:
                out.append((s, b))
        else:
            out.append((s, b if a == u else a))
    return out


def _is_forest(t: TrackNetwork) -> bool:
    parent = list(range(len(t.nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in t.segments:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def realized_edges(t: TrackNetwork) -> set[Edge]:
    """Terminal pairs joined by a transition-respecting, segment-simple curve.

    Undirected results are normalised to ``(min, max)``.
    """
    terminal = {n.id for n in t.nodes if n.type == TERMINAL}
    nxt = _moves(t)
    forest = _is_forest(t)
    prev: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    if not forest:
        for x, ys in nxt.items():
            for y in ys:
                prev[y].append(x)
    result: set[Edge] = set()
    for u in sorted(terminal):
        starts = _starts(t, u)
        seen = set(starts)
        queue = deque(starts)
        candidates = set()
        while queue:
            state = queue.popleft()
            if state[1] in terminal and state[1] != u:
                candidates.add(state[1])
            for y in nxt.get(state, ()):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        for v in candidates:
            if forest or _trail_exists(t, nxt, prev, starts, v):
                result.add((u, v) if t.directed else (min(u, v), max(u, v)))
    return result


def _trail_exists(t, nxt, prev, starts, target) -> bool:
    """Depth-first search for a curve that never repeats a segment."""
    goal = {s for s in nxt.keys() | set(starts) if s[1] == target}
    goal |= {(s, target) for s in t.incident.get(target, ())}
    # states that can still reach the target, ignoring segment reuse
    useful = {s for s in goal}
    queue = deque(useful)
    while queue:
        y = queue.popleft()
        for x in prev.get(y, ()):
            if x not in useful:
                useful.add(x)
                queue.append(x)
    used: set[int] = set()

    def dfs(state) -> bool:
        seg, node = state
        if node == target:
            return True
        used.add(seg)
        for y in nxt.get(state, ()):
            if y[0] not in used and y in useful and dfs(y):
                return True
        used.discard(seg)
        return False

    return any(s in useful and dfs(s) for s in starts)


def realized_graph(t: TrackNetwork, n: int | None = None) -> Graph:
    n = len(t.terminals) if n is None else n
    return Graph.from_edges(n, realized_edges(t), t.directed)


# -- from a reduction ---------------------------------------------------------


def from_reduction(r: ReductionResult) -> TrackNetwork:
    """Network whose junctions are the junction vertices of a successful reduction."""
    if not r.succeeded:
        raise TrackError("only successful reductions can be turned into track networks")
    ws = replay(r.original, r.steps)
    g = ws.graph()
    b = NetworkBuilder(r.original.n, g.directed)
    for j in range(r.original.n, g.n):
        b.junction(ws.kind[j])
    seg = {}
    for u, v in g.sorted_edges():
        seg[(u, v)] = b.segment(u, v)
    for j in range(r.original.n, g.n):
        side = ws.side[j]
        kind = ws.kind[j]
        if kind == DIRECTED:
            ins = [seg[(x, j)] for x, lab in side.items() if lab == "in"]
            outs = [seg[(j, y)] for y, lab in side.items() if lab == "out"]
            b.allow_cross(j, ins, outs)
            continue
        nbrs = sorted(side)
        for x, y in itertools.combinations(nbrs, 2):
            if kind == CLIQUE or side[x] != side[y]:
                b.allow(j, seg[(min(x, j), max(x, j))], seg[(min(y, j), max(y, j))])
    return b.build(prune=False)


# -- closed-form constructions -------------------------------------------------


def build_interval_track(model: IntervalModel) -> TrackNetwork:
    """Pascal-triangle lattice over left-endpoint ranks.

    Node ``(l, r)`` reaches, going down, exactly the ranks ``l..r``; a curve
    turns back upward only at a bottom node ``(p, p)``. Each interval hangs
    off the node spanning the ranks of the left endpoints it contains.
    """
    iv = model.intervals
    n = len(iv)
    if n == 0:
        raise TrackError("need at least one interval")
    order = sorted(range(n), key=lambda i: (iv[i][0], i))
    lefts = [iv[i][0] for i in order]
    pos = {i: p for p, i in enumerate(order)}
    span = {}
    for i in range(n):
        right = max(p for p in range(n) if lefts[p] <= iv[i][1])
        span[i] = (pos[i], right)

    needed = set()
    for l, r in span.values():
        for a in range(l, r + 1):
            for c in range(a, r + 1):
                needed.add((a, c))
    b = NetworkBuilder(n)
    node = {key: b.junction("lattice") for key in sorted(needed)}
    up: dict[tuple[int, int], list[int]] = defaultdict(list)
    down: dict[tuple[int, int], list[int]] = defaultdict(list)
    for (l, r), v in node.items():
        if r > l:
            for child in ((l, r - 1), (l + 1, r)):
                s = b.segment(v, node[child])
                down[(l, r)].append(s)
                up[child].append(s)
    hang: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i in range(n):
        hang[span[i]].append(b.segment(i, node[span[i]]))
    for key, v in node.items():
        b.allow_cross(v, up[key], down[key])
        if key[0] == key[1]:
            b.allow_all(v, up[key])
        b.allow_all(v, hang[key])
        b.allow_cross(v, hang[key], up[key] + down[key])
    return b.build()


def build_cograph_track(expr: CographExpr) -> TrackNetwork:
    """Tree of tails: a junction per union, with sibling turns enabled when complemented."""
    leaves = cograph_leaves(expr)
    index = {name: i for i, name in enumerate(leaves)}
    b = NetworkBuilder(len(leaves))

    def build(e: CographExpr, negated: bool) -> int:
        """Return the node whose upward tail represents ``e``."""
        if isinstance(e, Leaf):
            return index[e.label]
        if isinstance(e, Complement):
            return build(e.child, not negated)
        kind = "join" if negated else "union"
        j = b.junction(kind)
        tails = [b.segment(build(c, negated), j) for c in e.children]
        pending.append((j, tails, negated))
        return j

    pending: list[tuple[int, list[int], bool]] = []
    root = build(expr, False)
    parent_tail: dict[int, int] = {}
    for j, tails in ((j, t) for j, t, _ in pending):
        for s in tails:
            a, c = b.seg_list[s]
            child = a if c == j else c
            if b.nodes[child].type == JUNCTION:
                parent_tail[child] = s
    for j, tails, negated in pending:
        if j != root:
            b.allow_cross(j, tails, [parent_tail[j]])
        if negated:
            b.allow_all(j, tails)
    return b.build()


def _rooted(tree: Graph, root: int) -> tuple[dict[int, int | None], dict[int, list[int]]]:
    parent: dict[int, int | None] = {root: None}
    children: dict[int, list[int]] = defaultdict(list)
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(tree.adjacency[x]):
            if y not in parent:
                parent[y] = x
                children[x].append(y)
                queue.append(y)
    return parent, children


def build_cotree_track(tree: Graph, root: int = 0) -> TrackNetwork:
    """Connector construction realizing the complement of ``tree``.

    Per vertex ``x`` with children: ``G(x)`` is a connector standing for the
    proper descendants of ``x``; ``F(x)`` stands for the whole subtree and
    joins ``x`` and ``G(x)`` to the parent's connector; ``D(x)`` lets ``x``
    reach its grandchildren and everything below them.
    """
    if tree.directed or not is_tree(tree):
        raise TrackError("cotree construction needs an undirected tree")
    b = NetworkBuilder(tree.n)
    if tree.n == 1:
        return b.build()
    parent, children = _rooted(tree, root)
    F: dict[int, int] = {}
    G: dict[int, int] = {}
    D: dict[int, int] = {}
    for x in range(tree.n):
        if not children[x]:
            F[x] = x
            continue
        G[x] = b.junction("connector")
        F[x] = x if parent[x] is None else b.junction("connector")
        if any(children[c] for c in children[x]):
            D[x] = b.junction("connector")

    for x in range(tree.n):
        if x in G:
            kids = [b.segment(F[c], G[x]) for c in children[x]]
            b.allow_all(G[x], kids)
            if parent[x] is not None:
                f_port = b.segment(F[x], G[x])
                b.allow_cross(G[x], [f_port], kids)
                to_x = b.segment(x, F[x])
                up = b.segment(F[x], G[parent[x]])
                b.allow_cross(F[x], [up], [to_x, f_port])
            if parent[x] is not None and parent[x] in D:
                d_port = b.segment(G[x], D[parent[x]])
                b.allow_cross(G[x], [d_port], kids)
        if x in D:
            x_seg = b.segment(x, D[x])
            downs = [b.segment(D[x], G[c]) for c in children[x] if c in G]
            b.allow_cross(D[x], [x_seg], downs)
    return b.build()


def build_cocycle_track(n: int) -> TrackNetwork:
    """Complement of the cycle ``0..n-1``: a path cotree plus a fan for vertex 0."""
    if n < 3:
        raise TrackError("cycles need at least three vertices")
    # path 1..n-1 renumbered 0..n-2, then shifted by one
    path = Graph.from_edges(n - 1, ((i, i + 1) for i in range(n - 2)))
    inner = build_cotree_track(path)
    b = NetworkBuilder(n)
    shift = {}
    for node in inner.nodes:
        shift[node.id] = node.id + 1 if node.type == TERMINAL else b.junction(node.kind)
    segs = [b.segment(shift[a], shift[c]) for a, c in inner.segments]
    for v, pairs in inner.transitions.items():
        for s, t in pairs:
            b.allow(shift[v], segs[s], segs[t])
    targets = list(range(2, n - 1))
    if targets:
        fan = b.junction("fan")
        hub = b.segment(0, fan)
        b.allow_cross(fan, [hub], [b.segment(fan, v) for v in targets])
    return b.build()


def relabel_terminals(t: TrackNetwork, mapping: dict[int, int]) -> TrackNetwork:
    """Renumber terminals by a permutation; junction ids are unchanged."""
    terms = t.terminals
    if sorted(mapping) != terms or sorted(mapping.values()) != terms:
        raise TrackError("mapping must permute the terminal ids")
    move = {v: mapping.get(v, v) for v in range(len(t.nodes))}
    nodes = sorted((Node(move[n.id], n.type, n.kind) for n in t.nodes), key=lambda n: n.id)
    segs = tuple((move[a], move[b]) for a, b in t.segments)
    trans = {move[v]: p for v, p in t.transitions.items()}
    return TrackNetwork(tuple(nodes), segs, trans, t.directed)


def cycle_order(g: Graph) -> list[int]:
    """Vertices of a cycle graph in cyclic order starting at 0."""
    if g.directed or g.n < 3 or g.m != g.n or any(g.degree(v) != 2 for v in g.vertices):
        raise TrackError("input is not a cycle")
    order = [0]
    prev, cur = None, 0
    while True:
        nxt = min(w for w in g.adjacency[cur] if w != prev) if prev is None else next(
            w for w in g.adjacency[cur] if w != prev
        )
        if nxt == 0:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != g.n:
        raise TrackError("input is not a single cycle")
    return order


def build_cocycle_track_for(g: Graph) -> TrackNetwork:
    """Cocycle construction for an arbitrary labelling of a cycle."""
    order = cycle_order(g)
    return relabel_terminals(build_cocycle_track(g.n), dict(enumerate(order)))
