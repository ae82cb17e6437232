"""Exact confluence decision for small graphs by exhaustive merge search.

Every clique (at least four vertices) and every biclique (two or more on each
side, maximal or not) is a candidate merge. The search tries merge sequences
depth first and reports the first one whose result is planar. States are
memoised up to isomorphism of the junction-typed graph: a Weisfeiler-Lehman
hash buckets the states and an exact colour-preserving isomorphism test
decides membership within a bucket.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import networkx as nx

from .enumeration import Biclique, clique_sort_key, list_max_bicliques, list_max_cliques
from .graph import Graph
from .planarity import is_planar
from .reduction import BICLIQUE, CLIQUE, ReductionStep, Workspace

log = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 10**6
DEFAULT_MAX_DEPTH = 12
DEFAULT_SIZE_CAP = 16

REDUCIBLE = "reducible"
NOT_REDUCIBLE = "not-reducible"
INCONCLUSIVE = "inconclusive"
NODE_BUDGET = "node-budget"
DEPTH_BUDGET = "depth-budget"


@dataclass(frozen=True)
class Candidate:
    kind: str
    side_a: tuple[int, ...]
    side_b: tuple[int, ...] = ()

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(sorted(self.side_a + self.side_b))


@dataclass(frozen=True)
class Budget:
    max_states: int = DEFAULT_MAX_STATES
    max_depth: int = DEFAULT_MAX_DEPTH
    size_cap: int = DEFAULT_SIZE_CAP
    memo: bool = True


@dataclass
class SearchStats:
    states: int = 0
    memo_hits: int = 0
    planarity_tests: int = 0


@dataclass(frozen=True)
class OracleVerdict:
    outcome: str
    steps: tuple[ReductionStep, ...] = ()
    reason: str | None = None
    stats: SearchStats = field(default_factory=SearchStats, compare=False)

    @property
    def reducible(self) -> bool:
        return self.outcome == REDUCIBLE

    def describe(self) -> str:
        if self.outcome == INCONCLUSIVE:
            return f"inconclusive({self.reason})"
        return self.outcome


class SizeCapError(ValueError):
    pass


def _clique_candidates(g: Graph) -> list[Candidate]:
    found: set[tuple[int, ...]] = set()
    for c in list_max_cliques(g, 4):
        members = sorted(c)
        for k in range(4, len(members) + 1):
            found.update(itertools.combinations(members, k))
    return [Candidate(CLIQUE, c) for c in sorted(found, key=clique_sort_key)]


def _sub_bicliques(b: Biclique):
    for ka in range(2, len(b.side_a) + 1):
        for a in itertools.combinations(sorted(b.side_a), ka):
            for kb in range(2, len(b.side_b) + 1):
                for c in itertools.combinations(sorted(b.side_b), kb):
                    yield Biclique.of(a, c)


def merge_candidates(g: Graph) -> list[Candidate]:
    """Every clique of four or more and every biclique with both sides at least two.

    Order: cliques by size, then maximal bicliques, then the remaining
    sub-bicliques, each group largest first.
    """
    if g.directed:
        raise ValueError("merge candidates are defined for undirected graphs")
    maximal = list_max_bicliques(g)
    seen = set(maximal)
    rest: set[Biclique] = set()
    for b in maximal:
        for sub in _sub_bicliques(b):
            if sub not in seen:
                rest.add(sub)
    ordered = maximal + sorted(rest, key=Biclique.sort_key)
    bicliques = [Candidate(BICLIQUE, tuple(sorted(b.side_a)), tuple(sorted(b.side_b))) for b in ordered]
    return _clique_candidates(g) + bicliques


def state_graph(ws: Workspace) -> nx.Graph:
    """Coloured graph whose isomorphism class determines the future of the search.

    Biclique junctions become two half-nodes joined through a middle node;
    each neighbour attaches to the half of the side it hangs off.
    """
    h = nx.Graph()
    half: dict[tuple[int, str], str] = {}
    for v in ws.succ:
        kind = ws.kind.get(v)
        if kind == BICLIQUE:
            labels = sorted(set(ws.side[v].values()))
            h.add_node(f"{v}m", c="mid")
            for lab in labels:
                half[(v, lab)] = f"{v}{lab}"
                h.add_node(f"{v}{lab}", c="half")
                h.add_edge(f"{v}m", f"{v}{lab}")
        else:
            h.add_node(str(v), c=kind or "vertex")

    def port(v: int, other: int) -> str:
        if ws.kind.get(v) == BICLIQUE:
            return half[(v, ws.side[v][other])]
        return str(v)

    for u in ws.succ:
        for v in ws.succ[u]:
            if u < v:
                h.add_edge(port(u, v), port(v, u))
    return h


def _same_colour(a: dict, b: dict) -> bool:
    return a["c"] == b["c"]


class _Memo:
    """Failed states keyed by isomorphism class, with the depth they were explored to."""

    def __init__(self):
        self.buckets: dict[str, list[list]] = {}

    def find(self, h: nx.Graph, key: str):
        for entry in self.buckets.get(key, ()):
            if nx.is_isomorphic(entry[0], h, node_match=_same_colour):
                return entry
        return None

    def store(self, h: nx.Graph, key: str, remaining: int, complete: bool) -> None:
        entry = self.find(h, key)
        if entry is None:
            self.buckets.setdefault(key, []).append([h, remaining, complete])
        else:
            entry[1] = max(entry[1], remaining)
            entry[2] = entry[2] or complete


class _OutOfStates(Exception):
    pass


class _Search:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.stats = SearchStats()
        self.memo = _Memo() if budget.memo else None
        self.cut = False

    def planar(self, ws: Workspace) -> bool:
        self.stats.planarity_tests += 1
        return is_planar(ws.graph())

    def run(self, ws: Workspace, depth: int) -> list[ReductionStep] | None:
        self.stats.states += 1
        if self.stats.states > self.budget.max_states:
            raise _OutOfStates
        if self.planar(ws):
            return []
        remaining = self.budget.max_depth - depth
        if remaining == 0:
            self.cut = True
            return None
        h = key = None
        if self.memo is not None:
            h = state_graph(ws)
            key = nx.weisfeiler_lehman_graph_hash(h, node_attr="c", iterations=4)
            entry = self.memo.find(h, key)
            if entry is not None and (entry[2] or entry[1] >= remaining):
                self.stats.memo_hits += 1
                if not entry[2]:
                    self.cut = True
                return None
        outer_cut, self.cut = self.cut, False
        for cand in merge_candidates(ws.graph()):
            if not ws.admissible(cand.kind, cand.side_a, cand.side_b):
                continue
            child = ws.copy()
            step = child.replace(cand.kind, cand.side_a, cand.side_b)
            found = self.run(child, depth + 1)
            if found is not None:
                return [step] + found
        if self.memo is not None:
            self.memo.store(h, key, remaining, not self.cut)
        self.cut = outer_cut or self.cut
        return None


def decide_confluence(g: Graph, budget: Budget | None = None) -> OracleVerdict:
    """Search all merge sequences of ``g`` for one that yields a planar graph."""
    budget = budget or Budget()
    if g.directed:
        raise ValueError("the oracle handles undirected graphs only")
    if g.n > budget.size_cap:
        raise SizeCapError(f"graph has {g.n} vertices, above the oracle cap of {budget.size_cap}")
    search = _Search(budget)
    try:
        steps = search.run(Workspace(g), 0)
    except _OutOfStates:
        return OracleVerdict(INCONCLUSIVE, reason=NODE_BUDGET, stats=search.stats)
    if steps is not None:
        return OracleVerdict(REDUCIBLE, tuple(steps), stats=search.stats)
    if search.cut:
        return OracleVerdict(INCONCLUSIVE, reason=DEPTH_BUDGET, stats=search.stats)
    return OracleVerdict(NOT_REDUCIBLE, stats=search.stats)
