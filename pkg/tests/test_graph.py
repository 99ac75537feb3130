from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from graphs import k4, random_graph, star_of_triangles, triangles_on_path, two_triangles_bridge

from graph_threading import (
    Graph,
    GraphError,
    ParseError,
    bridges,
    edge_id,
    format_graph,
    london_vertices,
    parse_graph,
)
from graph_threading.graph import connected_components, format_decimal


def test_edge_id_is_canonical_and_idempotent():
    assert edge_id("b", "a") == ("a", "b")
    assert edge_id(*edge_id("b", "a")) == ("a", "b")


def test_parse_triangle():
    g = parse_graph("a b\nb c\nc a\n")
    assert g.m == 3 and g.n == 3
    assert all(g.length(e) == 1 for e in g.edges)


def test_parse_decimal_lengths_are_exact():
    g = parse_graph("a b 1.5\nb c 1.5\nc a 3\n")
    assert g.length(("a", "b")) == Fraction(3, 2)
    assert g.length(("a", "c")) == 3
    assert g.total_length() == 6


def test_parse_comments_and_blank_lines():
    g = parse_graph("# triangle\n\na b  # first\nb c\n\nc a\n")
    assert g.m == 3


@pytest.mark.parametrize(
    "text, message",
    [
        ("a b\nb c\n", "vertex a has degree 1"),
        ("a a\n", "self-loop"),
        ("a b\nb c\nc a\nb a\n", "duplicate edge"),
        ("a b 0\nb c\nc a\n", "nonpositive length"),
        ("a b -1\nb c\nc a\n", "nonpositive length"),
        ("a b\nb c\nc a\nd e\ne f\nf d\n", "disconnected"),
    ],
)
def test_validation_errors_name_the_invariant(text, message):
    with pytest.raises(GraphError, match=message):
        parse_graph(text)


def test_syntax_error_carries_line_number():
    with pytest.raises(ParseError) as info:
        parse_graph("a b\nb c d e\n")
    assert info.value.line == 2
    with pytest.raises(ParseError) as info:
        parse_graph("a b\nb c\nc a x\n")
    assert info.value.line == 3


def test_format_round_trip():
    g = Graph([("a", "b", Fraction(5, 4)), ("b", "c", 1), ("a", "c", Fraction(2, 3))])
    h = parse_graph(format_graph(g))
    assert h.edges == g.edges and h.lengths == g.lengths
    assert parse_graph("a b 2/3\nb c\nc a\n").length(("a", "b")) == Fraction(2, 3)
    assert format_decimal(Fraction(5, 4)) == "1.25"
    assert format_decimal(Fraction(2, 3)) == "2/3"


def test_accessors():
    g = k4()
    assert g.max_degree == 3
    assert g.neighbors("a") == ("b", "c", "d")
    assert g.incident("c") == (("a", "c"), ("b", "c"), ("c", "d"))
    assert g.is_unit()
    assert g.has_edge("d", "a")


def test_bridges_examples():
    assert bridges(k4()) == set()
    assert bridges(two_triangles_bridge()) == {("c", "d")}
    assert bridges(triangles_on_path()) == {("c", "p"), ("p", "q"), ("d", "q")}


def test_london_examples():
    assert london_vertices(k4()) == set()
    assert london_vertices(two_triangles_bridge()) == set()
    assert london_vertices(star_of_triangles()) == {"v"}
    assert london_vertices(triangles_on_path()) == {"p", "q"}


def _brute_bridges(g: Graph) -> set:
    return {e for e in g.edges if len(connected_components(g, removed=e)) > 1}


def test_bridges_match_edge_removal_and_split_in_two():
    rng = random.Random(11)
    for _ in range(150):
        g = random_graph(rng, 10)
        found = bridges(g)
        assert found == _brute_bridges(g)
        for e in found:
            assert len(connected_components(g, removed=e)) == 2
        assert london_vertices(g) == {
            v for v in g.vertices if all(e in found for e in g.incident(v))
        }


def test_bridges_invariant_under_relabeling():
    rng = random.Random(5)
    for _ in range(30):
        g = random_graph(rng, 9)
        names = list(g.vertices)
        shuffled = names[:]
        rng.shuffle(shuffled)
        mapping = {a: f"x{b}" for a, b in zip(names, shuffled)}
        h = g.relabel(mapping)
        assert bridges(h) == {edge_id(mapping[u], mapping[v]) for u, v in bridges(g)}
        assert london_vertices(h) == {mapping[v] for v in london_vertices(g)}


def test_bridges_on_long_path_does_not_recurse():
    n = 5000
    edges = [(f"a{i}", f"a{i + 1}") for i in range(n)]
    edges += [("a0", "x"), ("x", "y"), ("y", "a0"), (f"a{n}", "p"), ("p", "q"), ("q", f"a{n}")]
    assert len(bridges(Graph(edges))) == n


def test_rejects_ids_that_break_text_formats():
    for bad in ("a b", "a,b", "a#"):
        with pytest.raises(GraphError, match="invalid vertex id"):
            Graph([(bad, "c"), ("c", "d"), ("d", bad)])


def test_graph_is_hashable_and_comparable():
    assert k4() == Graph(list(itertools.combinations("dcba", 2)))
    assert len({k4(), k4()}) == 1
