"""Planarity testing and combinatorial embeddings.

The test itself is delegated to networkx's left-right planarity algorithm;
this module adapts it to :class:`~confluent.graph.Graph` and exposes the
rotation system and face walks the rest of the package consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .graph import Edge, Graph


class NonPlanarError(ValueError):
    """Raised by :func:`embed` on non-planar input.

    ``witness`` holds the edges of a Kuratowski subgraph when one was found.
    """

    def __init__(self, message: str, witness: list[Edge] | None = None):
        super().__init__(message)
        self.witness = witness or []


@dataclass(frozen=True)
class Embedding:
    """A rotation system plus the face walks it induces.

    ``rotation[v]`` lists the neighbours of ``v`` in clockwise order. Each
    face is a tuple of darts ``(u, v)``; every dart lies on exactly one face.
    """

    n: int
    rotation: dict[int, tuple[int, ...]]
    faces: tuple[tuple[Edge, ...], ...]
    outer_face: int | None
    nx_embedding: nx.PlanarEmbedding = field(compare=False, repr=False)

    def face_vertices(self, index: int) -> list[int]:
        return [u for u, _ in self.faces[index]]


def _edge_bound_violated(g: Graph) -> bool:
    return g.n >= 3 and g.m > 3 * g.n - 6


def _simple_undirected(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def is_planar(g: Graph) -> bool:
    """True iff ``g`` (or its underlying undirected graph) is planar."""
    if g.directed:
        g = g.underlying()
    if _edge_bound_violated(g):
        return False
    if g.m <= 8 or g.n <= 4:
        return True
    planar, _ = nx.check_planarity(_simple_undirected(g))
    return planar


def kuratowski_witness(g: Graph) -> list[Edge] | None:
    if g.directed:
        g = g.underlying()
    planar, certificate = nx.check_planarity(_simple_undirected(g), counterexample=True)
    if planar:
        return None
    return sorted(tuple(sorted(e)) for e in certificate.edges)


def _faces(emb: nx.PlanarEmbedding) -> list[tuple[Edge, ...]]:
    seen: set[Edge] = set()
    faces = []
    for v in sorted(emb.nodes):
        for w in emb.neighbors_cw_order(v):
            if (v, w) in seen:
                continue
            walk = []
            u, x = v, w
            while (u, x) not in seen:
                seen.add((u, x))
                walk.append((u, x))
                u, x = x, emb[x][u]["ccw"]
            faces.append(tuple(walk))
    return faces


def embed(g: Graph) -> Embedding:
    """Combinatorial planar embedding of ``g``.

    The outer face is the face with the longest walk (lowest index on ties);
    components are embedded independently.
    """
    if g.directed:
        g = g.underlying()
    planar, emb = nx.check_planarity(_simple_undirected(g))
    if not planar:
        raise NonPlanarError("graph is not planar", kuratowski_witness(g))
    rotation = {v: tuple(emb.neighbors_cw_order(v)) for v in range(g.n)}
    faces = _faces(emb)
    outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i)) if faces else None
    return Embedding(g.n, rotation, tuple(faces), outer, emb)


def euler_holds(g: Graph, e: Embedding) -> bool:
    """Check V - E + F = 2 for every component that has at least one edge."""
    h = _simple_undirected(g.underlying())
    comps = [c for c in nx.connected_components(h) if len(c) > 1]
    v = sum(len(c) for c in comps)
    return v - g.m + len(e.faces) == 2 * len(comps)
