"""Brute-force reference implementations used as test oracles.

Nothing here imports the package's algorithms; only plain sets and loops.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def edge_set(n: int, edges) -> frozenset[tuple[int, int]]:
    return frozenset((min(u, v), max(u, v)) for u, v in edges)


def neighbours(n: int, edges) -> dict[int, set[int]]:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def brute_maximal_cliques(n: int, edges, min_size: int = 1) -> set[frozenset[int]]:
    adj = neighbours(n, edges)
    cliques = []
    for k in range(1, n + 1):
        for c in itertools.combinations(range(n), k):
            if all(b in adj[a] for a, b in itertools.combinations(c, 2)):
                cliques.append(frozenset(c))
    cset = set(cliques)
    out = set()
    for c in cliques:
        if len(c) < min_size:
            continue
        if not any(c | {v} in cset for v in range(n) if v not in c):
            out.add(c)
    return out


def brute_maximal_bicliques(n: int, edges) -> set[frozenset[frozenset[int]]]:
    """Closed pairs (A, B): B is the common neighbourhood of A and vice versa."""
    adj = neighbours(n, edges)

    def common(s):
        out = set(range(n))
        for v in s:
            out &= adj[v]
        return frozenset(out)

    found = set()
    for k in range(2, n + 1):
        for a in itertools.combinations(range(n), k):
            b = common(a)
            if len(b) >= 2 and common(b) == frozenset(a):
                found.add(frozenset((frozenset(a), b)))
    return found


def brute_one_way_bicliques(n: int, arcs) -> set[tuple[frozenset, frozenset]]:
    """All maximal (A, B) with every a -> b present, both sides >= 2."""
    arcset = set(arcs)
    succ = {v: {w for u, w in arcset if u == v} for v in range(n)}
    found = set()
    for k in range(2, n + 1):
        for a in itertools.combinations(range(n), k):
            b = set(range(n))
            for v in a:
                b &= succ[v]
            if len(b) < 2:
                continue
            back = {v for v in range(n) if b <= succ[v]}
            if back == set(a):
                found.add((frozenset(a), frozenset(b)))
    return found


def _normalise(edges: frozenset) -> frozenset:
    """Strip vertices of degree <= 2 (they never matter for K5/K3,3 minors) and relabel."""
    edges = set(edges)
    while True:
        deg: dict[int, list[int]] = {}
        for u, v in edges:
            deg.setdefault(u, []).append(v)
            deg.setdefault(v, []).append(u)
        low = next((x for x, ns in sorted(deg.items()) if len(ns) <= 2), None)
        if low is None:
            break
        ns = deg[low]
        edges = {e for e in edges if low not in e}
        if len(ns) == 2:
            a, b = sorted(ns)
            edges.add((a, b))
    verts = sorted({x for e in edges for x in e})
    rename = {v: i for i, v in enumerate(verts)}
    return frozenset((min(rename[u], rename[v]), max(rename[u], rename[v])) for u, v in edges)


def _is_k5(edges) -> bool:
    verts = {x for e in edges for x in e}
    return len(verts) == 5 and len(edges) == 10


def _is_k33(edges) -> bool:
    verts = sorted({x for e in edges for x in e})
    if len(verts) != 6 or len(edges) != 9:
        return False
    # a 3-regular bipartite graph on six vertices is K3,3
    adj = neighbours(max(verts) + 1, edges)
    return all(len(adj[v]) == 3 for v in verts) and _bipartite(adj, verts)


def _bipartite(adj, verts) -> bool:
    colour = {}
    for s in verts:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
                elif colour[y] == colour[x]:
                    return False
    return True


@lru_cache(maxsize=None)
def _has_kuratowski_minor(edges: frozenset) -> bool:
    if len(edges) < 9:
        return False
    if _is_k5(edges) or _is_k33(edges):
        return True
    for e in sorted(edges):
        if _has_kuratowski_minor(_normalise(edges - {e})):
            return True
    for u, v in sorted(edges):
        merged = set()
        for a, b in edges:
            a, b = (u if a == v else a), (u if b == v else b)
            if a != b:
                merged.add((min(a, b), max(a, b)))
        if _has_kuratowski_minor(_normalise(frozenset(merged))):
            return True
    return False


def brute_is_planar(n: int, edges) -> bool:
    """Planarity by searching deletion/contraction minors for K5 or K3,3."""
    return not _has_kuratowski_minor(_normalise(edge_set(n, edges)))


def interval_edges(intervals) -> set[tuple[int, int]]:
    out = set()
    for i, (a, b) in enumerate(intervals):
        for j in range(i + 1, len(intervals)):
            c, d = intervals[j]
            if c <= b and a <= d:
                out.add((i, j))
    return out


def cograph_edges(expr) -> tuple[list[str], set[frozenset[str]]]:
    """Evaluate an expression by explicit union and complement on leaf labels."""
    kind = type(expr).__name__
    if kind == "Leaf":
        return [expr.label], set()
    if kind == "Complement":
        verts, edges = cograph_edges(expr.child)
        full = {frozenset(p) for p in itertools.combinations(verts, 2)}
        return verts, full - edges
    verts, edges = [], set()
    for child in expr.children:
        v, e = cograph_edges(child)
        verts += v
        edges |= e
    return verts, edges


def complement_edges(n: int, edges) -> set[tuple[int, int]]:
    es = edge_set(n, edges)
    return {p for p in itertools.combinations(range(n), 2) if p not in es}


def count_four_cycles(n: int, edges) -> int:
    adj = neighbours(n, edges)
    count = 0
    for a, b, c, d in itertools.permutations(range(n), 4):
        if b in adj[a] and c in adj[b] and d in adj[c] and a in adj[d]:
            count += 1
    return count // 8


def segments_cross(p, q, r, s) -> bool:
    """Proper crossing of straight segments pq and rs (shared endpoints excluded by caller)."""

    def o(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 1e-12) - (v < -1e-12)

    o1, o2, o3, o4 = o(p, q, r), o(p, q, s), o(r, s, p), o(r, s, q)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True

    def on(a, b, c):
        return min(a[0], c[0]) <= b[0] <= max(a[0], c[0]) and min(a[1], c[1]) <= b[1] <= max(a[1], c[1])

    return (o1 == 0 and on(p, r, q)) or (o2 == 0 and on(p, s, q)) or (o3 == 0 and on(r, p, s)) or (
        o4 == 0 and on(r, q, s)
    )
