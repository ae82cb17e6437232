"""Graph representation, the edge-list format, and generators.

Vertices are dense integers ``0..n-1``; string labels live in an optional
sidecar map and never take part in equality.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Raised for malformed edge-list documents; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _norm(u: int, v: int, directed: bool) -> Edge:
    if directed or u < v:
        return (u, v)
    return (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    directed: bool = False
    labels: dict[int, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if not self.directed and u > v:
                raise ValueError(f"undirected edge ({u}, {v}) is not normalized")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        directed: bool = False,
        labels: dict[int, str] | None = None,
    ) -> "Graph":
        normalized = frozenset(_norm(int(u), int(v), directed) for u, v in edges)
        return cls(n, normalized, directed, dict(labels or {}))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        """Neighbors of each vertex, ignoring direction."""
        adj: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def successors(self) -> dict[int, frozenset[int]]:
        if not self.directed:
            return self.adjacency
        out: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            out[u].add(v)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def predecessors(self) -> dict[int, frozenset[int]]:
        if not self.directed:
            return self.adjacency
        inc: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            inc[v].add(u)
        return {v: frozenset(s) for v, s in inc.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v, self.directed) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def underlying(self) -> "Graph":
        """The undirected graph obtained by forgetting arc directions."""
        if not self.directed:
            return self
        return Graph.from_edges(self.n, self.edges, False, self.labels)

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Induced subgraph on ``keep``, relabelled densely in sorted order."""
        order = sorted(set(keep))
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = {index[v]: s for v, s in self.labels.items() if v in index}
        return Graph.from_edges(len(order), edges, self.directed, labels)

    def to_networkx(self):
        import networkx as nx

        g = nx.DiGraph() if self.directed else nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


# ---------------------------------------------------------------------------
# edge-list format
# ---------------------------------------------------------------------------

_LABEL_RE = re.compile(r"#\s*label\s+(\d+)\s+(.+?)\s*$")


def parse_graph(text: str) -> Graph:
    """Parse the ``n m directed|undirected`` edge-list format."""
    header: tuple[int, int, bool] | None = None
    edges: list[Edge] = []
    labels: dict[int, str] = {}
    pending_labels: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _LABEL_RE.match(line)
            if match:
                pending_labels.append((lineno, int(match.group(1)), match.group(2)))
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[2] not in ("directed", "undirected"):
                raise GraphFormatError("expected header 'n m directed|undirected'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError("vertex and edge counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("counts must be non-negative", lineno)
            header = (n, m, parts[2] == "directed")
            continue
        n, _, directed = header
        if len(parts) != 2:
            raise GraphFormatError("expected an edge line 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("vertex ids must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"self loop at vertex {u}", lineno)
        edges.append((u, v))
    if header is None:
        raise GraphFormatError("missing header line", 1)
    n, m, directed = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(edges)} edge lines found")
    for lineno, v, name in pending_labels:
        if not 0 <= v < n:
            raise GraphFormatError(f"label for unknown vertex {v}", lineno)
        labels[v] = name
    return Graph.from_edges(n, edges, directed, labels)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m} {'directed' if g.directed else 'undirected'}"]
    for v in sorted(g.labels):
        lines.append(f"# label {v} {g.labels[v]}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------


def complement(g: Graph) -> Graph:
    if g.directed:
        raise ValueError("complement is defined for undirected graphs only")
    edges = [e for e in itertools.combinations(range(g.n), 2) if e not in g.edges]
    return Graph.from_edges(g.n, edges, False, g.labels)


def subdivide(g: Graph) -> Graph:
    """Replace each edge by a path of length two through a fresh vertex.

    New vertices are numbered ``n..n+m-1`` following sorted edge order.
    """
    if g.directed:
        raise ValueError("subdivide is defined for undirected graphs only")
    edges = []
    for i, (u, v) in enumerate(g.sorted_edges()):
        x = g.n + i
        edges += [(u, x), (x, v)]
    return Graph.from_edges(g.n + g.m, edges, False, g.labels)


def add_edge_triangles(g: Graph) -> Graph:
    """For every edge add a new vertex joined to both of its endpoints."""
    if g.directed:
        raise ValueError("add_edge_triangles is defined for undirected graphs only")
    edges = list(g.edges)
    for i, (u, v) in enumerate(g.sorted_edges()):
        x = g.n + i
        edges += [(u, x), (v, x)]
    return Graph.from_edges(g.n + g.m, edges, False, g.labels)


def disjoint_union(*graphs: Graph) -> Graph:
    offset = 0
    edges: list[Edge] = []
    directed = any(g.directed for g in graphs)
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges, directed)


# ---------------------------------------------------------------------------
# interval models and cograph expressions
# ---------------------------------------------------------------------------

Number = int | Fraction


@dataclass(frozen=True)
class IntervalModel:
    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for a, b in self.intervals:
            if a > b:
                raise ValueError(f"interval [{a}, {b}] has left end after right end")

    @classmethod
    def of(cls, pairs: Iterable[Sequence[Number | str]]) -> "IntervalModel":
        return cls(tuple((Fraction(a), Fraction(b)) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.intervals)


def parse_intervals(text: str) -> IntervalModel:
    """One interval per line as ``a b``; ``#`` starts a comment."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").replace("[", " ").replace("]", " ").split()
        if len(parts) != 2:
            raise GraphFormatError("expected an interval line 'a b'", lineno)
        try:
            a, b = Fraction(parts[0]), Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise GraphFormatError("interval endpoints must be rational numbers", lineno) from None
        if a > b:
            raise GraphFormatError(f"interval [{a}, {b}] is reversed", lineno)
        pairs.append((a, b))
    return IntervalModel(tuple(pairs))


def format_intervals(model: IntervalModel) -> str:
    return "".join(f"{a} {b}\n" for a, b in model.intervals)


@dataclass(frozen=True)
class Leaf:
    label: str


@dataclass(frozen=True)
class Union:
    children: tuple["CographExpr", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("a union needs at least two operands")


@dataclass(frozen=True)
class Complement:
    child: "CographExpr"


CographExpr = Leaf | Union | Complement


def cograph_leaves(expr: CographExpr) -> list[str]:
    if isinstance(expr, Leaf):
        return [expr.label]
    if isinstance(expr, Complement):
        return cograph_leaves(expr.child)
    return [x for c in expr.children for x in cograph_leaves(c)]


def normalize_cograph(expr: CographExpr) -> CographExpr:
    """Cancel double complements and flatten nested unions."""
    if isinstance(expr, Leaf):
        return expr
    if isinstance(expr, Complement):
        inner = normalize_cograph(expr.child)
        if isinstance(inner, Complement):
            return inner.child
        if isinstance(inner, Leaf):
            return inner
        return Complement(inner)
    flat: list[CographExpr] = []
    for child in expr.children:
        child = normalize_cograph(child)
        if isinstance(child, Union):
            flat.extend(child.children)
        else:
            flat.append(child)
    return Union(tuple(flat))


_TOKEN_RE = re.compile(r"\s*(~|U\(|\(|\)|,|[A-Za-z0-9_.]+)")


def parse_cograph(text: str) -> CographExpr:
    """Parse expressions such as ``~U(~U(a,b), c)``.

    ``U(x, y, ...)`` is a disjoint union and ``~x`` a complement.
    """
    tokens: list[str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            raise GraphFormatError(f"unexpected character {text[pos]!r} at offset {pos}")
        tokens.append(match.group(1))
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse(i: int) -> tuple[CographExpr, int]:
        if i >= len(tokens):
            raise GraphFormatError("unexpected end of expression")
        tok = tokens[i]
        if tok == "~":
            child, j = parse(i + 1)
            return Complement(child), j
        if tok == "U(":
            children = []
            j = i + 1
            while True:
                child, j = parse(j)
                children.append(child)
                if j >= len(tokens):
                    raise GraphFormatError("unterminated union")
                if tokens[j] == ",":
                    j += 1
                    continue
                if tokens[j] == ")":
                    break
                raise GraphFormatError(f"unexpected token {tokens[j]!r}")
            if len(children) < 2:
                raise GraphFormatError("a union needs at least two operands")
            return Union(tuple(children)), j + 1
        if tok == "(":
            inner, j = parse(i + 1)
            if j >= len(tokens) or tokens[j] != ")":
                raise GraphFormatError("unbalanced parenthesis")
            return inner, j + 1
        if tok in (")", ","):
            raise GraphFormatError(f"unexpected token {tok!r}")
        return Leaf(tok), i + 1

    expr, end = parse(0)
    if end != len(tokens):
        raise GraphFormatError(f"trailing tokens after expression: {' '.join(tokens[end:])}")
    labels = cograph_leaves(expr)
    if len(set(labels)) != len(labels):
        raise GraphFormatError("leaf labels must be distinct")
    return expr


def format_cograph(expr: CographExpr) -> str:
    if isinstance(expr, Leaf):
        return expr.label
    if isinstance(expr, Complement):
        return "~" + format_cograph(expr.child)
    return "U(" + ", ".join(format_cograph(c) for c in expr.children) + ")"


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def _check_positive(name: str, value: int) -> None:
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")


def complete_graph(n: int) -> Graph:
    _check_positive("n", n)
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    """Sides are ``0..m-1`` and ``m..m+n-1``."""
    _check_positive("m", m)
    _check_positive("n", n)
    return Graph.from_edges(m + n, ((a, m + b) for a in range(m) for b in range(n)))


def path_graph(n: int) -> Graph:
    _check_positive("n", n)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def hypercube(d: int) -> Graph:
    """Vertex ``x`` is the bitstring with integer value ``x``."""
    _check_positive("d", d)
    n = 1 << d
    return Graph.from_edges(n, ((x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < x ^ (1 << b)))


def petersen() -> Graph:
    """Outer 5-cycle ``0..4``, inner pentagram ``5..9``, spokes ``i - i+5``."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def petersen_minus_vertex() -> Graph:
    """The Petersen graph with vertex 9 removed."""
    return petersen().induced(range(9))


def interval_graph(model: IntervalModel | Iterable[Sequence[Number]]) -> Graph:
    if not isinstance(model, IntervalModel):
        model = IntervalModel.of(model)
    iv = model.intervals
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(iv)), 2)
        if iv[j][0] <= iv[i][1] and iv[i][0] <= iv[j][1]
    ]
    return Graph.from_edges(len(iv), edges)


def tree_from_prufer(seq: Sequence[int]) -> Graph:
    n = len(seq) + 2
    for x in seq:
        if not 0 <= x < n:
            raise ValueError(f"Prufer entry {x} out of range for {n} vertices")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def is_tree(g: Graph) -> bool:
    if g.directed or g.n == 0 or g.m != g.n - 1:
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def tree_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    g = Graph.from_edges(n, edges)
    if not is_tree(g):
        raise ValueError("edge list does not form a tree")
    return g


def random_tree(n: int, rng: random.Random) -> Graph:
    _check_positive("n", n)
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    return tree_from_prufer([rng.randrange(n) for _ in range(n - 2)])


def random_gnp(n: int, p: float, rng: random.Random, directed: bool = False) -> Graph:
    if directed:
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    else:
        pairs = list(itertools.combinations(range(n), 2))
    return Graph.from_edges(n, (e for e in pairs if rng.random() < p), directed)


def random_degenerate(n: int, k: int, rng: random.Random) -> Graph:
    """Each vertex joins up to ``k`` random earlier vertices, so degeneracy <= k."""
    edges = []
    for v in range(1, n):
        for u in rng.sample(range(v), min(k, v)):
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def cograph(expr: CographExpr) -> Graph:
    """The graph an expression denotes; leaves numbered in order of appearance."""
    labels = cograph_leaves(expr)

    def build(e: CographExpr, offset: int) -> tuple[set[Edge], int]:
        if isinstance(e, Leaf):
            return set(), 1
        if isinstance(e, Complement):
            inner, size = build(e.child, offset)
            span = range(offset, offset + size)
            return {p for p in itertools.combinations(span, 2) if p not in inner}, size
        edges: set[Edge] = set()
        size = 0
        for child in e.children:
            sub, k = build(child, offset + size)
            edges |= sub
            size += k
        return edges, size

    edges, size = build(expr, 0)
    return Graph.from_edges(size, edges, False, dict(enumerate(labels)))


FAMILIES = (
    "complete",
    "complete_bipartite",
    "path",
    "cycle",
    "hypercube",
    "petersen",
    "petersen_minus_vertex",
    "interval",
    "tree",
    "random_tree",
    "cograph",
    "subdivided",
    "triangle_augmented",
)


def generate(family: str, *params, rng: random.Random | None = None) -> Graph:
    """Build a named graph family.

    ``params`` are positional: integers for the sized families, an
    ``IntervalModel`` (or interval pairs) for ``interval``, a Prufer sequence
    for ``tree``, an expression (object or text) for ``cograph``, and a family
    name plus its parameters for ``subdivided`` / ``triangle_augmented``.
    """
    family = family.replace("-", "_")
    if family == "complete":
        return complete_graph(int(params[0]))
    if family in ("complete_bipartite", "bipartite"):
        return complete_bipartite(int(params[0]), int(params[1]))
    if family == "path":
        return path_graph(int(params[0]))
    if family == "cycle":
        return cycle_graph(int(params[0]))
    if family == "hypercube":
        return hypercube(int(params[0]))
    if family == "petersen":
        return petersen()
    if family == "petersen_minus_vertex":
        return petersen_minus_vertex()
    if family == "interval":
        model = params[0] if len(params) == 1 else params
        return interval_graph(model)
    if family == "tree":
        seq = params[0] if len(params) == 1 and not isinstance(params[0], int) else params
        return tree_from_prufer([int(x) for x in seq])
    if family == "random_tree":
        return random_tree(int(params[0]), rng or random.Random(0))
    if family == "cograph":
        expr = params[0]
        if isinstance(expr, str):
            expr = parse_cograph(expr)
        return cograph(expr)
    if family == "subdivided":
        return subdivide(generate(params[0], *params[1:], rng=rng))
    if family == "triangle_augmented":
        return add_edge_triangles(generate(params[0], *params[1:], rng=rng))
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
