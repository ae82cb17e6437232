"""Replace cliques and bicliques by junction vertices until the graph is planar.

A junction stands for a traffic circle (clique) or a two-sided merge
(biclique). Each junction remembers, for every neighbour, which side of the
junction that neighbour hangs off; this is what later lets the track model
route curves through it, and it is what decides whether a junction may take
part in a later replacement: the edges being bundled at a junction must all
hang off the same side of it, otherwise no smooth track can carry them.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Iterable

from .enumeration import (
    Biclique,
    BicliqueIndex,
    DirectedBiclique,
    degeneracy,
    directed_bicliques,
    list_max_bicliques,
    list_max_cliques,
)
from .graph import Edge, Graph, format_graph, parse_graph
from .planarity import is_planar

log = logging.getLogger(__name__)

CLIQUE = "clique"
BICLIQUE = "biclique"
DIRECTED = "directed"

# degeneracy above which the heuristic recomputes bicliques every round
INDEX_DEGENERACY_LIMIT = 8


class Status(str, enum.Enum):
    PLANAR = "planar"
    FAILED = "failed"


class ReductionLogError(ValueError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"step {index}: {message}")


@dataclass(frozen=True)
class ReductionStep:
    """One replacement. For cliques ``side_a`` holds the members and ``side_b`` is empty."""

    kind: str
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    junction: int
    removed_edges: tuple[Edge, ...]

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(sorted(self.side_a + self.side_b))

    def new_edges(self) -> list[Edge]:
        j = self.junction
        if self.kind == DIRECTED:
            return [(a, j) for a in self.side_a] + [(j, b) for b in self.side_b]
        return [(m, j) for m in self.members]

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "junction": self.junction}
        if self.kind == CLIQUE:
            out["members"] = list(self.side_a)
        else:
            out["sides"] = [list(self.side_a), list(self.side_b)]
        out["removed"] = [list(e) for e in self.removed_edges]
        return out

    @classmethod
    def from_json(cls, d: dict) -> "ReductionStep":
        if d["kind"] == CLIQUE:
            a, b = tuple(d["members"]), ()
        else:
            a, b = (tuple(s) for s in d["sides"])
        return cls(d["kind"], a, b, int(d["junction"]), tuple(tuple(e) for e in d["removed"]))


@dataclass(frozen=True)
class ReductionResult:
    original: Graph
    steps: tuple[ReductionStep, ...]
    reduced: Graph
    status: Status

    @property
    def succeeded(self) -> bool:
        return self.status is Status.PLANAR

    def to_json(self) -> dict:
        return {
            "original": format_graph(self.original),
            "steps": [s.to_json() for s in self.steps],
            "reduced": format_graph(self.reduced),
            "status": self.status.value,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, d: dict) -> "ReductionResult":
        return cls(
            parse_graph(d["original"]),
            tuple(ReductionStep.from_json(s) for s in d["steps"]),
            parse_graph(d["reduced"]),
            Status(d["status"]),
        )


def _internal_edges(kind: str, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[Edge, ...]:
    """Edges a replacement of this kind removes, sorted."""
    if kind == CLIQUE:
        return tuple((u, v) for i, u in enumerate(a) for v in a[i + 1 :])
    if kind == BICLIQUE:
        return tuple(sorted((min(x, y), max(x, y)) for x in a for y in b))
    return tuple(sorted((x, y) for x in a for y in b))


class Workspace:
    """Mutable graph with junction bookkeeping, shared by the heuristic and the oracle."""

    def __init__(self, g: Graph):
        self.directed = g.directed
        self.original_n = g.n
        self.next_id = g.n
        self.succ: dict[int, set[int]] = {v: set(g.successors[v]) for v in g.vertices}
        self.pred: dict[int, set[int]] = (
            {v: set(g.predecessors[v]) for v in g.vertices} if g.directed else self.succ
        )
        self.kind: dict[int, str] = {}
        # junction -> neighbour -> side label
        self.side: dict[int, dict[int, str]] = {}

    def copy(self) -> "Workspace":
        ws = Workspace.__new__(Workspace)
        ws.directed = self.directed
        ws.original_n = self.original_n
        ws.next_id = self.next_id
        ws.succ = {v: set(s) for v, s in self.succ.items()}
        ws.pred = {v: set(s) for v, s in self.pred.items()} if self.directed else ws.succ
        ws.kind = dict(self.kind)
        ws.side = {j: dict(s) for j, s in self.side.items()}
        return ws

    @property
    def adj(self) -> dict[int, set[int]]:
        if self.directed:
            raise AttributeError("adj is only defined for undirected workspaces")
        return self.succ

    def neighbours(self, v: int) -> set[int]:
        return self.succ[v] | self.pred[v] if self.directed else self.succ[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.succ.get(u, ())

    def graph(self) -> Graph:
        edges = ((u, v) for u in self.succ for v in self.succ[u] if self.directed or u < v)
        return Graph.from_edges(self.next_id, edges, self.directed)

    def edge_count(self) -> int:
        total = sum(len(s) for s in self.succ.values())
        return total if self.directed else total // 2

    # -- candidate validation ---------------------------------------------

    def is_clique(self, members: Iterable[int]) -> bool:
        ms = list(members)
        return all(self.has_edge(u, v) for i, u in enumerate(ms) for v in ms[i + 1 :])

    def is_biclique(self, a: Iterable[int], b: Iterable[int]) -> bool:
        b = list(b)
        return all(self.has_edge(x, y) for x in a for y in b)

    def _bundles(self, kind: str, a: tuple[int, ...], b: tuple[int, ...]) -> dict[int, set[int]]:
        """For each member: the neighbours whose edges to it the replacement removes."""
        if kind == CLIQUE:
            ms = set(a)
            return {x: ms - {x} for x in ms}
        out = {x: set(b) for x in a}
        out.update({y: set(a) for y in b})
        return out

    def admissible(self, kind: str, a: Iterable[int], b: Iterable[int] = ()) -> bool:
        """Whether every junction member bundles edges from a single side of itself."""
        for x, bundle in self._bundles(kind, tuple(a), tuple(b)).items():
            jk = self.kind.get(x)
            if jk is None:
                continue
            if jk == CLIQUE:
                return False
            if len({self.side[x][y] for y in bundle}) != 1:
                return False
        return True

    # -- edits --------------------------------------------------------------

    def make_step(self, kind: str, a: Iterable[int], b: Iterable[int] = ()) -> ReductionStep:
        a, b = tuple(sorted(a)), tuple(sorted(b))
        return ReductionStep(kind, a, b, self.next_id, _internal_edges(kind, a, b))

    def apply(self, step: ReductionStep, index: int = 0) -> None:
        """Perform ``step``; raises :class:`ReductionLogError` when it does not fit."""
        if step.junction != self.next_id:
            raise ReductionLogError(index, f"junction id {step.junction} expected {self.next_id}")
        if step.kind not in (CLIQUE, BICLIQUE, DIRECTED) or (step.kind == DIRECTED) != self.directed:
            raise ReductionLogError(index, f"step kind {step.kind!r} does not match the graph")
        if step.kind == CLIQUE and (len(step.side_a) < 4 or step.side_b):
            raise ReductionLogError(index, "clique steps need at least four members")
        if step.kind != CLIQUE and (len(step.side_a) < 2 or len(step.side_b) < 2):
            raise ReductionLogError(index, "biclique steps need two vertices on each side")
        if set(step.side_a) & set(step.side_b):
            raise ReductionLogError(index, "biclique sides overlap")
        for x in step.members:
            if x not in self.succ:
                raise ReductionLogError(index, f"vertex {x} does not exist")
        expected = self.make_step(step.kind, step.side_a, step.side_b).removed_edges
        if tuple(sorted(step.removed_edges)) != expected:
            raise ReductionLogError(index, "removed edges do not match the members")
        for u, v in step.removed_edges:
            if not self.has_edge(u, v):
                raise ReductionLogError(index, f"edge ({u}, {v}) is missing")
        bundles = self._bundles(step.kind, step.side_a, step.side_b)
        labels: dict[int, str] = {}
        for x, bundle in bundles.items():
            if x not in self.kind:
                continue
            sides = {self.side[x][y] for y in bundle}
            if self.kind[x] == CLIQUE or len(sides) != 1:
                raise ReductionLogError(index, f"junction {x} cannot bundle edges from different sides")
            labels[x] = sides.pop()

        for u, v in step.removed_edges:
            self.succ[u].discard(v)
            self.pred[v].discard(u)
            if not self.directed:
                self.succ[v].discard(u)
        j = step.junction
        self.succ[j] = set()
        if self.directed:
            self.pred[j] = set()
        for u, v in step.new_edges():
            self.succ[u].add(v)
            self.pred[v].add(u)
            if not self.directed:
                self.succ[v].add(u)
        for x, label in labels.items():
            for y in bundles[x]:
                del self.side[x][y]
            self.side[x][j] = label
        self.kind[j] = step.kind
        if step.kind == CLIQUE:
            self.side[j] = {x: "*" for x in step.side_a}
        elif step.kind == BICLIQUE:
            self.side[j] = {x: "A" for x in step.side_a} | {y: "B" for y in step.side_b}
        else:
            self.side[j] = {x: "in" for x in step.side_a} | {y: "out" for y in step.side_b}
        self.next_id += 1

    def replace(self, kind: str, a: Iterable[int], b: Iterable[int] = ()) -> ReductionStep:
        step = self.make_step(kind, a, b)
        self.apply(step)
        return step


def replay(original: Graph, steps: Iterable[ReductionStep]) -> Workspace:
    ws = Workspace(original)
    for i, step in enumerate(steps):
        ws.apply(step, i)
    return ws


def _planar(ws: Workspace) -> bool:
    return is_planar(ws.graph())


def _step_cap(g: Graph) -> int:
    return 4 * g.m + 16


def reduce_undirected(g: Graph) -> ReductionResult:
    """Greedy clique-then-biclique replacement until the graph becomes planar."""
    if g.directed:
        raise ValueError("reduce_undirected needs an undirected graph")
    ws = Workspace(g)
    steps: list[ReductionStep] = []

    def done(status: Status) -> ReductionResult:
        return ReductionResult(g, tuple(steps), ws.graph(), status)

    if _planar(ws):
        return done(Status.PLANAR)
    for clique in list_max_cliques(g, 4):
        if ws.is_clique(clique) and ws.admissible(CLIQUE, clique):
            steps.append(ws.replace(CLIQUE, clique))
            if _planar(ws):
                return done(Status.PLANAR)

    use_index = degeneracy(ws.graph()) <= INDEX_DEGENERACY_LIMIT
    index = BicliqueIndex(ws.graph()) if use_index else None

    def accept(b: Biclique) -> bool:
        return ws.admissible(BICLIQUE, b.side_a, b.side_b)

    for _ in range(_step_cap(g)):
        if index is not None:
            best = index.largest(accept)
        else:
            best = next((b for b in list_max_bicliques(ws.graph()) if accept(b)), None)
        if best is None:
            return done(Status.FAILED)
        step = ws.replace(BICLIQUE, best.side_a, best.side_b)
        steps.append(step)
        if index is not None:
            index.apply_replacement(step.removed_edges, step.junction, step.new_edges())
        if _planar(ws):
            return done(Status.PLANAR)
    log.warning("biclique replacement did not settle after %d steps", _step_cap(g))
    return done(Status.FAILED)


def reduce_directed(d: Graph) -> ReductionResult:
    """Directed variant: only one-way bicliques are merged."""
    if not d.directed:
        raise ValueError("reduce_directed needs a directed graph")
    ws = Workspace(d)
    steps: list[ReductionStep] = []
    for _ in range(_step_cap(d) + 1):
        if _planar(ws):
            return ReductionResult(d, tuple(steps), ws.graph(), Status.PLANAR)
        best: DirectedBiclique | None = next(
            (b for b in directed_bicliques(ws.graph()) if ws.admissible(DIRECTED, b.side_a, b.side_b)),
            None,
        )
        if best is None:
            break
        steps.append(ws.replace(DIRECTED, best.side_a, best.side_b))
    return ReductionResult(d, tuple(steps), ws.graph(), Status.FAILED)


def reduce_graph(g: Graph) -> ReductionResult:
    return reduce_directed(g) if g.directed else reduce_undirected(g)


def expand(r: ReductionResult) -> Graph:
    """Undo the steps of ``r`` in reverse, recovering the original graph."""
    g = r.reduced
    succ = {v: set(g.successors[v]) for v in g.vertices}
    pred = {v: set(g.predecessors[v]) for v in g.vertices}
    n = g.n
    for i in range(len(r.steps) - 1, -1, -1):
        step = r.steps[i]
        j = step.junction
        if j != n - 1:
            raise ReductionLogError(i, f"junction {j} is not the newest vertex {n - 1}")
        expected = _internal_edges(step.kind, tuple(sorted(step.side_a)), tuple(sorted(step.side_b)))
        if tuple(sorted(step.removed_edges)) != expected:
            raise ReductionLogError(i, "removed edges do not match the members")
        if step.kind == DIRECTED:
            if succ[j] != set(step.side_b) or pred[j] != set(step.side_a):
                raise ReductionLogError(i, f"arcs at junction {j} do not match its sides")
        elif succ[j] != set(step.members):
            raise ReductionLogError(i, f"neighbours of junction {j} do not match its members")
        for x in succ.pop(j):
            pred[x].discard(j)
        for x in pred.pop(j):
            succ[x].discard(j)
        for u, v in step.removed_edges:
            if v in succ[u]:
                raise ReductionLogError(i, f"edge ({u}, {v}) already present")
            succ[u].add(v)
            pred[v].add(u)
            if not g.directed:
                succ[v].add(u)
                pred[u].add(v)
        n -= 1
    edges = ((u, v) for u in succ for v in succ[u] if g.directed or u < v)
    out = Graph.from_edges(n, edges, g.directed, r.original.labels)
    if out != r.original:
        raise ReductionLogError(0, "expanding every step does not give back the original graph")
    return out
