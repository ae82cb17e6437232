"""Clique and biclique enumeration for sparse graphs.

Bicliques are found through a bounded-outdegree acyclic orientation: in any
such orientation one side of every maximal biclique is a *tuple*, i.e. a
subset of some vertex's outgoing neighbours. :class:`BicliqueIndex` keeps the
tuple table alive across clique/biclique replacements so that the reduction
loop never recomputes from scratch.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .graph import Edge, Graph

Tuple_ = tuple[int, ...]


@dataclass(frozen=True)
class Orientation:
    out: dict[int, frozenset[int]]
    order: dict[int, int]
    d: int

    def direction(self, u: int, v: int) -> Edge:
        """The edge ``{u, v}`` as the arc it is oriented to."""
        return (u, v) if v in self.out[u] else (v, u)

    def is_acyclic(self) -> bool:
        return all(self.order[u] < self.order[v] for u in self.out for v in self.out[u])


def orient(g: Graph) -> Orientation:
    """Degeneracy orientation by repeated minimum-degree peeling.

    Each arc points from the earlier-peeled endpoint to the later one, so the
    outdegree bound equals the degeneracy of ``g``.
    """
    g = g.underlying()
    degree = {v: len(g.adjacency[v]) for v in g.vertices}
    buckets: dict[int, set[int]] = defaultdict(set)
    for v, k in degree.items():
        buckets[k].add(v)
    removed: set[int] = set()
    order: dict[int, int] = {}
    out: dict[int, frozenset[int]] = {}
    low = 0
    for step in range(g.n):
        low = max(low - 1, 0)
        while not buckets[low]:
            low += 1
        v = min(buckets[low])
        buckets[low].remove(v)
        removed.add(v)
        order[v] = step
        later = frozenset(w for w in g.adjacency[v] if w not in removed)
        out[v] = later
        for w in later:
            buckets[degree[w]].remove(w)
            degree[w] -= 1
            buckets[degree[w]].add(w)
    d = max((len(s) for s in out.values()), default=0)
    return Orientation(out, order, d)


def degeneracy(g: Graph) -> int:
    return orient(g).d


# ---------------------------------------------------------------------------
# cliques
# ---------------------------------------------------------------------------


def _bron_kerbosch(adj, r: set[int], p: set[int], x: set[int], found: list[frozenset[int]]) -> None:
    if not p and not x:
        found.append(frozenset(r))
        return
    pivot = max(p | x, key=lambda u: (len(p & adj[u]), -u))
    for v in sorted(p - adj[pivot]):
        _bron_kerbosch(adj, r | {v}, p & adj[v], x & adj[v], found)
        p = p - {v}
        x = x | {v}


def maximal_cliques(adj: dict[int, Iterable[int]]) -> list[frozenset[int]]:
    """All maximal cliques of an adjacency map, via Bron-Kerbosch over a degeneracy order."""
    adj = {v: set(ws) for v, ws in adj.items()}
    ids = sorted(adj)
    index = {v: i for i, v in enumerate(ids)}
    g = Graph.from_edges(len(ids), ((index[u], index[w]) for u in ids for w in adj[u] if index[u] < index[w]))
    ori = orient(g)
    found: list[frozenset[int]] = []
    for v in sorted(ids, key=lambda u: ori.order[index[u]]):
        later = {w for w in adj[v] if ori.order[index[w]] > ori.order[index[v]]}
        earlier = adj[v] - later
        _bron_kerbosch(adj, {v}, later, earlier, found)
    return found


def clique_sort_key(c: Iterable[int]) -> tuple:
    s = sorted(c)
    return (-len(s), s)


def list_max_cliques(g: Graph, min_size: int = 1) -> list[frozenset[int]]:
    """Maximal cliques with at least ``min_size`` vertices, largest first."""
    found = [c for c in maximal_cliques(g.underlying().adjacency) if len(c) >= min_size]
    return sorted(found, key=clique_sort_key)


# ---------------------------------------------------------------------------
# bicliques
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Biclique:
    side_a: frozenset[int]
    side_b: frozenset[int]

    def __post_init__(self):
        if not self.side_a or not self.side_b:
            raise ValueError("biclique sides must be non-empty")
        if self.side_a & self.side_b:
            raise ValueError("biclique sides must be disjoint")

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int]) -> "Biclique":
        """Canonical form: ``side_a`` is the side whose sorted ids compare smaller."""
        a, b = frozenset(a), frozenset(b)
        if sorted(b) < sorted(a):
            a, b = b, a
        return cls(a, b)

    @property
    def edge_count(self) -> int:
        return len(self.side_a) * len(self.side_b)

    @property
    def vertex_count(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def edges(self) -> list[Edge]:
        return sorted((min(a, b), max(a, b)) for a in self.side_a for b in self.side_b)

    def sort_key(self) -> tuple:
        return (-self.edge_count, -self.vertex_count, sorted(self.side_a), sorted(self.side_b))


def _common_neighbours(adj, vertices: Iterable[int]) -> set[int]:
    it = iter(vertices)
    common = set(adj[next(it)])
    for v in it:
        common &= adj[v]
    return common


def _tuple_biclique(adj, out, creators: Iterable[int], tup: Tuple_) -> Biclique | None:
    """Evaluate one tuple: the maximal biclique it spans, if any.

    The opposite side is the tuple's creators plus those outgoing neighbours
    of tuple members that are adjacent to every member.
    """
    members = set(tup)
    other = set(creators)
    for t in tup:
        for w in out[t]:
            if w not in other and members <= adj[w]:
                other.add(w)
    if len(other) < 2:
        return None
    if _common_neighbours(adj, other) != members:
        return None
    return Biclique.of(members, other)


def _tuples_of(out_set: Iterable[int]) -> Iterable[Tuple_]:
    s = sorted(out_set)
    for k in range(2, len(s) + 1):
        yield from itertools.combinations(s, k)


def list_max_bicliques(g: Graph) -> list[Biclique]:
    """Maximal complete bipartite subgraphs with both sides of size at least two."""
    g = g.underlying()
    adj = {v: set(g.adjacency[v]) for v in g.vertices}
    ori = orient(g)
    creators: dict[Tuple_, set[int]] = defaultdict(set)
    for v in g.vertices:
        for t in _tuples_of(ori.out[v]):
            creators[t].add(v)
    found = set()
    for t, cs in creators.items():
        b = _tuple_biclique(adj, ori.out, cs, t)
        if b is not None:
            found.add(b)
    return sorted(found, key=Biclique.sort_key)


class ReplacementError(ValueError):
    pass


class BicliqueIndex:
    """Dynamic table of maximal bicliques keyed by orientation tuples.

    For every tuple the table holds its creator set and the maximal biclique
    it spans (if any). Maximal bicliques are kept in buckets keyed by
    ``(edge count, vertex count)`` so the largest one is found without
    scanning the table. The index owns a private copy of the graph; it must
    not be mutated concurrently.
    """

    def __init__(self, g: Graph):
        g = g.underlying()
        self.adj: dict[int, set[int]] = {v: set(g.adjacency[v]) for v in g.vertices}
        ori = orient(g)
        self.out: dict[int, set[int]] = {v: set(ori.out[v]) for v in g.vertices}
        self.rank: dict[int, Fraction] = {v: Fraction(ori.order[v]) for v in g.vertices}
        self.d = ori.d
        self.creators: dict[Tuple_, set[int]] = defaultdict(set)
        self.containing: dict[int, set[Tuple_]] = defaultdict(set)
        self.result: dict[Tuple_, Biclique] = {}
        self.sources: dict[Biclique, set[Tuple_]] = {}
        self.buckets: dict[tuple[int, int], set[Biclique]] = defaultdict(set)
        for v in self.adj:
            for t in _tuples_of(self.out[v]):
                self._add_creator(t, v)
        for t in list(self.creators):
            self._evaluate(t)

    # -- bookkeeping ------------------------------------------------------

    def _add_creator(self, t: Tuple_, v: int) -> None:
        if not self.creators[t]:
            for x in t:
                self.containing[x].add(t)
        self.creators[t].add(v)

    def _drop_creator(self, t: Tuple_, v: int) -> None:
        cs = self.creators[t]
        cs.discard(v)
        if not cs:
            del self.creators[t]
            for x in t:
                self.containing[x].discard(t)

    def _set_result(self, t: Tuple_, b: Biclique | None) -> None:
        old = self.result.get(t)
        if old == b:
            return
        if old is not None:
            srcs = self.sources[old]
            srcs.discard(t)
            if not srcs:
                del self.sources[old]
                bucket = self.buckets[(old.edge_count, old.vertex_count)]
                bucket.discard(old)
                if not bucket:
                    del self.buckets[(old.edge_count, old.vertex_count)]
            del self.result[t]
        if b is not None:
            self.result[t] = b
            if b not in self.sources:
                self.sources[b] = set()
                self.buckets[(b.edge_count, b.vertex_count)].add(b)
            self.sources[b].add(t)

    def _evaluate(self, t: Tuple_) -> None:
        cs = self.creators.get(t)
        if not cs or any(x not in self.adj for x in t):
            self._set_result(t, None)
            return
        self._set_result(t, _tuple_biclique(self.adj, self.out, cs, t))

    def _touching(self, w: int) -> set[Tuple_]:
        """Tuples containing ``w`` or lying inside its neighbourhood."""
        hits = set(self.containing.get(w, ()))
        nbrs = self.adj.get(w, set())
        for u in nbrs:
            for t in self.containing.get(u, ()):
                if nbrs.issuperset(t):
                    hits.add(t)
        return hits

    # -- queries ----------------------------------------------------------

    def bicliques(self) -> set[Biclique]:
        return set(self.sources)

    def __len__(self) -> int:
        return len(self.sources)

    def tuple_count(self) -> int:
        return len(self.creators)

    def largest(self, accept: Callable[[Biclique], bool] | None = None) -> Biclique | None:
        """Largest stored biclique (edges, then vertices, then lexicographic) passing ``accept``."""
        for key in sorted(self.buckets, reverse=True):
            for b in sorted(self.buckets[key], key=Biclique.sort_key):
                if accept is None or accept(b):
                    return b
        return None

    def orientation(self) -> Orientation:
        """The maintained orientation, with ``d`` the bound fixed at construction."""
        ranked = sorted(self.adj, key=lambda v: (self.rank[v], v))
        order = {v: i for i, v in enumerate(ranked)}
        return Orientation({v: frozenset(self.out[v]) for v in self.adj}, order, self.d)

    def graph(self) -> Graph:
        n = max(self.adj, default=-1) + 1
        if set(self.adj) != set(range(n)):
            raise ValueError("index vertex ids are not dense")
        return Graph.from_edges(n, ((u, v) for u in self.adj for v in self.adj[u] if u < v))

    # -- updates ----------------------------------------------------------

    def apply_replacement(self, removed_edges: Iterable[Edge], new_vertex: int, new_edges: Iterable[Edge]) -> None:
        """Replace a clique or biclique by a new vertex, updating the table in place.

        Edges towards the new vertex are oriented away from each member that
        still had an outgoing removed edge, and into the members that had
        none, which keeps the orientation acyclic and its outdegree bound.
        """
        removed = [tuple(e) for e in removed_edges]
        added = [tuple(e) for e in new_edges]
        if new_vertex in self.adj:
            raise ReplacementError(f"vertex {new_vertex} already exists")
        for u, v in removed:
            if u not in self.adj or v not in self.adj[u]:
                raise ReplacementError(f"edge ({u}, {v}) is not in the graph")
        members: set[int] = set()
        for e in added:
            if new_vertex not in e:
                raise ReplacementError(f"new edge {e} does not touch vertex {new_vertex}")
            (c,) = [x for x in e if x != new_vertex]
            if c not in self.adj:
                raise ReplacementError(f"new edge {e} references unknown vertex {c}")
            members.add(c)
        if not removed and not members:
            self.adj[new_vertex] = set()
            self.out[new_vertex] = set()
            self.rank[new_vertex] = max(self.rank.values(), default=Fraction(0)) + 1
            return

        has_out = set()
        for u, v in removed:
            has_out.add(u if v in self.out[u] else v)
        sources = [c for c in members if c in has_out]
        sinks = [c for c in members if c not in has_out]
        lo = max((self.rank[c] for c in sources), default=None)
        hi = min((self.rank[c] for c in sinks), default=None)
        if lo is not None and hi is not None and not lo < hi:
            raise ReplacementError("edit is not a clique/biclique replacement: orientation would become cyclic")
        if lo is None:
            rank = hi - 1
        elif hi is None:
            rank = lo + 1
        else:
            rank = (lo + hi) / 2

        touched = members | {x for e in removed for x in e}
        dirty: set[Tuple_] = set()
        for w in touched:
            dirty |= self._touching(w)
        old_out = {w: set(self.out[w]) for w in touched}

        for u, v in removed:
            self.adj[u].discard(v)
            self.adj[v].discard(u)
            self.out[u].discard(v)
            self.out[v].discard(u)
        self.adj[new_vertex] = set(members)
        self.out[new_vertex] = set(sinks)
        self.rank[new_vertex] = rank
        for c in members:
            self.adj[c].add(new_vertex)
            if c in has_out:
                self.out[c].add(new_vertex)

        for w in touched:
            before = set(_tuples_of(old_out[w]))
            after = set(_tuples_of(self.out[w]))
            for t in before - after:
                self._drop_creator(t, w)
                dirty.add(t)
            for t in after - before:
                self._add_creator(t, w)
                dirty.add(t)
        for t in _tuples_of(self.out[new_vertex]):
            self._add_creator(t, new_vertex)
            dirty.add(t)
        for w in touched | {new_vertex}:
            dirty |= self._touching(w)
        for t in dirty:
            self._evaluate(t)
        self.d = max(self.d, len(self.out[new_vertex]))


def build_index(g: Graph) -> BicliqueIndex:
    return BicliqueIndex(g)


# ---------------------------------------------------------------------------
# directed bicliques
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectedBiclique:
    """All arcs run from ``side_a`` to ``side_b``."""

    side_a: frozenset[int]
    side_b: frozenset[int]

    @property
    def edge_count(self) -> int:
        return len(self.side_a) * len(self.side_b)

    @property
    def vertex_count(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def arcs(self) -> list[Edge]:
        return sorted((a, b) for a in self.side_a for b in self.side_b)

    def sort_key(self) -> tuple:
        return (-self.edge_count, -self.vertex_count, sorted(self.side_a), sorted(self.side_b))


def directed_bicliques(d: Graph) -> list[DirectedBiclique]:
    """One-way bicliques extracted from the maximal bicliques of the underlying graph.

    For each undirected maximal biclique the larger side (on a tie, the side
    holding the smallest id) is grouped by its exact arc-direction pattern
    towards the other side. A group of at least two vertices yields a directed
    biclique towards the vertices it points at and one from the vertices
    pointing at it, whenever that sub-side has at least two vertices.
    """
    if not d.directed:
        raise ValueError("directed_bicliques needs a directed graph")
    succ, pred = d.successors, d.predecessors
    found: set[DirectedBiclique] = set()
    for b in list_max_bicliques(d.underlying()):
        big, small = b.side_a, b.side_b
        if len(small) > len(big) or (len(small) == len(big) and min(small) < min(big)):
            big, small = small, big
        small_sorted = sorted(small)
        groups: dict[tuple[tuple[bool, bool], ...], list[int]] = defaultdict(list)
        for v in sorted(big):
            pattern = tuple((s in succ[v], s in pred[v]) for s in small_sorted)
            groups[pattern].append(v)
        for pattern, members in groups.items():
            if len(members) < 2:
                continue
            targets = [s for s, (fwd, _) in zip(small_sorted, pattern) if fwd]
            origins = [s for s, (_, back) in zip(small_sorted, pattern) if back]
            if len(targets) >= 2:
                found.add(DirectedBiclique(frozenset(members), frozenset(targets)))
            if len(origins) >= 2:
                found.add(DirectedBiclique(frozenset(origins), frozenset(members)))
    return sorted(found, key=DirectedBiclique.sort_key)
