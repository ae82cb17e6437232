from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from confluent import graph as gc
from confluent.graph import Graph, GraphFormatError, parse_graph, format_graph

from conftest import graphs
from oracles import brute_is_planar, cograph_edges, count_four_cycles, interval_edges


def test_parse_path():
    g = parse_graph("3 2 undirected\n0 1\n1 2")
    assert g.n == 3 and g.edges == {(0, 1), (1, 2)} and not g.directed


def test_parse_directed_arc():
    g = parse_graph("2 1 directed\n0 1\n")
    assert g.directed and g.edges == {(0, 1)}


def test_parse_self_loop_names_line():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("2 1 undirected\n0 0")
    assert exc.value.line == 2
    assert "self loop" in str(exc.value)


@pytest.mark.parametrize(
    "text, line",
    [
        ("three 2 undirected\n0 1\n1 2", 1),
        ("3 1 sideways\n0 1", 1),
        ("3 1 undirected\n0 7", 2),
        ("3 2 undirected\n0 1\n1 x", 3),
    ],
)
def test_parse_errors_name_line(text, line):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_parse_labels_and_duplicates():
    g = parse_graph("3 3 undirected\n# label 0 alpha\n0 1\n1 0\n1 2\n")
    assert g.m == 2
    assert g.labels == {0: "alpha"}
    again = parse_graph(format_graph(g))
    assert again == g and again.labels == g.labels


def test_directed_allows_both_directions():
    g = Graph.from_edges(2, [(0, 1), (1, 0)], directed=True)
    assert g.m == 2


@given(graphs(max_n=9))
def test_format_round_trip(g):
    assert parse_graph(format_graph(g)) == g


@given(graphs(max_n=9))
def test_complement_is_involution(g):
    assert gc.complement(gc.complement(g)) == g


def test_complement_examples():
    assert gc.complement(gc.complete_graph(5)).m == 0
    assert gc.complement(gc.path_graph(6)).m == 10
    assert gc.complement(gc.complement(gc.petersen())) == gc.petersen()
    with pytest.raises(ValueError):
        gc.complement(Graph.from_edges(2, [(0, 1)], directed=True))


def test_complement_of_tree_edge_count(rng):
    for _ in range(30):
        n = rng.randint(2, 15)
        t = gc.random_tree(n, rng)
        assert gc.complement(t).m == n * (n - 1) // 2 - t.m


def test_subdivide_examples():
    s = gc.subdivide(gc.complete_graph(5))
    assert (s.n, s.m) == (15, 20)
    tri = gc.subdivide(gc.cycle_graph(3))
    assert (tri.n, tri.m) == (6, 6) and all(tri.degree(v) == 2 for v in tri.vertices)
    assert count_four_cycles(s.n, s.edges) == 0


@given(graphs(max_n=7))
def test_subdivision_is_bipartite_without_four_cycles(g):
    s = gc.subdivide(g)
    assert (s.n, s.m) == (g.n + g.m, 2 * g.m)
    colour = {v: 0 for v in range(g.n)} | {v: 1 for v in range(g.n, s.n)}
    assert all(colour[u] != colour[v] for u, v in s.edges)
    assert count_four_cycles(s.n, s.edges) == 0


def test_named_families():
    q4 = gc.hypercube(4)
    assert (q4.n, q4.m) == (16, 32)
    pv = gc.petersen_minus_vertex()
    assert (pv.n, pv.m) == (9, 12)
    p = gc.petersen()
    assert p.m == 15 and all(p.degree(v) == 3 for v in p.vertices)
    assert gc.complete_bipartite(3, 4).m == 12


def test_petersen_minus_vertex_is_a_k33_subdivision():
    pv = gc.petersen_minus_vertex()
    degree3 = [v for v in pv.vertices if pv.degree(v) == 3]
    assert len(degree3) == 6
    assert not brute_is_planar(pv.n, pv.edges)


@pytest.mark.parametrize("bad", [("complete", 0), ("hypercube", 0), ("cycle", 2), ("path", -1)])
def test_invalid_parameters(bad):
    with pytest.raises(ValueError):
        gc.generate(*bad)


def test_interval_example():
    g = gc.generate("interval", gc.IntervalModel.of([(0, 2), (1, 4), (3, 5)]))
    assert g.edges == {(0, 1), (1, 2)}


def test_touching_intervals_intersect():
    assert gc.interval_graph([(0, 2), (2, 3)]).edges == {(0, 1)}


def test_interval_rationals():
    model = gc.parse_intervals("1/2 1\n[1, 3/2]\n2 2\n")
    assert model.intervals[0] == (Fraction(1, 2), Fraction(1))
    assert gc.interval_graph(model).edges == {(0, 1)}
    with pytest.raises(ValueError):
        gc.IntervalModel.of([(2, 1)])


@given(st.lists(st.tuples(st.integers(0, 12), st.integers(0, 5)), min_size=1, max_size=10))
def test_interval_graph_matches_pairwise_check(pairs):
    intervals = [(a, a + w) for a, w in pairs]
    assert gc.interval_graph(intervals).edges == interval_edges(intervals)


def test_duplicate_intervals_are_twins():
    g = gc.interval_graph([(0, 1), (0, 1), (5, 6)])
    assert g.edges == {(0, 1)}


leaf_names = st.sampled_from("abcdefghij")


@st.composite
def cograph_exprs(draw, max_leaves=10):
    names = draw(st.lists(leaf_names, min_size=1, max_size=max_leaves, unique=True))

    def build(labels):
        if len(labels) == 1:
            e = gc.Leaf(labels[0])
        else:
            cuts = sorted(draw(st.sets(st.integers(1, len(labels) - 1), min_size=1, max_size=3)))
            parts = [labels[i:j] for i, j in zip([0] + cuts, cuts + [len(labels)])]
            e = gc.Union(tuple(build(p) for p in parts))
        return gc.Complement(e) if draw(st.booleans()) else e

    return build(names)


@given(cograph_exprs())
def test_cograph_matches_explicit_evaluation(expr):
    g = gc.cograph(expr)
    labels, expected = cograph_edges(expr)
    got = {frozenset((g.labels[u], g.labels[v])) for u, v in g.edges}
    assert got == expected and g.n == len(labels)


@given(cograph_exprs())
def test_cograph_text_round_trip(expr):
    assert gc.cograph(gc.parse_cograph(gc.format_cograph(expr))) == gc.cograph(expr)


def test_normalize_removes_double_complement():
    e = gc.Complement(gc.Complement(gc.Union((gc.Leaf("a"), gc.Leaf("b")))))
    n = gc.normalize_cograph(e)
    assert not (isinstance(n, gc.Complement) and isinstance(n.child, gc.Complement))
    assert gc.cograph(n) == gc.cograph(e)


def test_cograph_examples():
    assert gc.cograph(gc.parse_cograph("~U(a, b)")).edges == {(0, 1)}
    assert gc.cograph(gc.parse_cograph("U(a, b)")).m == 0
    with pytest.raises(ValueError):
        gc.parse_cograph("U(a)")
    with pytest.raises(ValueError):
        gc.parse_cograph("U(a, a)")


def test_prufer_tree():
    t = gc.tree_from_prufer([3, 3, 3])
    assert t.n == 5 and gc.is_tree(t) and t.degree(3) == 4
    assert gc.tree_graph(3, [(0, 1), (1, 2)]) == gc.path_graph(3)
    with pytest.raises(ValueError):
        gc.tree_graph(3, [(0, 1)])


def test_random_trees_are_trees(rng):
    for n in range(1, 14):
        assert gc.is_tree(gc.random_tree(n, rng))


def test_random_generators_are_seeded():
    a = gc.random_gnp(9, 0.4, random.Random(3))
    b = gc.random_gnp(9, 0.4, random.Random(3))
    assert a == b


def test_triangle_augmentation_counts():
    g = gc.add_edge_triangles(gc.complete_graph(5))
    assert (g.n, g.m) == (15, 30)
    for v in range(5, 15):
        nbrs = sorted(g.adjacency[v])
        assert len(nbrs) == 2 and g.has_edge(*nbrs)


def test_hypercube_labels_are_bitstrings():
    q = gc.hypercube(3)
    for u, v in q.edges:
        assert bin(u ^ v).count("1") == 1
