from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from graphs import cycle, k4, random_graph, theta, unit_fixtures, with_lengths

from graph_threading import (
    Graph,
    InfeasibleError,
    MatchingInstance,
    SearchLimitError,
    bounds,
    check_local_threading,
    is_local_threading,
    oracle_matchings,
    oracle_optimal,
    realize,
    threading_length,
    verify_walk,
)
from graph_threading.oracle import SearchBounds, oracle_cycle_packing, simple_cycles


def test_oracle_examples():
    x, length = oracle_optimal(cycle(3))
    assert length == 3 and set(x.values()) == {1}
    assert oracle_optimal(k4())[1] == 8
    x, length = oracle_optimal(theta())
    assert length == 8
    assert sorted(x.values()) == [1, 1, 1, 1, 2, 2]


def test_oracle_returns_lexicographically_smallest_optimum():
    x, _ = oracle_optimal(theta())
    # edge order as, at, bs, bt, cs, ct: the smallest optimum doubles the c path
    assert [x[e] for e in theta().edges] == [1, 1, 1, 1, 2, 2]


def _plain_search(g: Graph, top: int, caps=None):
    best = None
    ranges = [range(1, min(top, (caps or {}).get(e, top)) + 1) for e in g.edges]
    for values in itertools.product(*ranges):
        x = dict(zip(g.edges, values))
        if is_local_threading(g, x):
            key = (threading_length(g, x), values)
            if best is None or key < best:
                best = key
    return best


def test_pruned_search_agrees_with_plain_enumeration():
    rng = random.Random(43)
    checked = 0
    while checked < 40:
        g = random_graph(rng, 7)
        if g.m > 9 or g.max_degree > 4:
            continue
        if checked % 2:
            g = with_lengths(g, checked)
        top = g.max_degree - 1
        caps = {e: rng.randint(1, 3) for e in g.edges if rng.random() < 0.3}
        expected = _plain_search(g, top, caps)
        if expected is None:
            with pytest.raises(InfeasibleError):
                oracle_optimal(g, caps)
        else:
            x, length = oracle_optimal(g, caps)
            assert length == expected[0]
            assert tuple(x[e] for e in g.edges) == expected[1]
        checked += 1


def test_oracle_output_validates_and_realizes():
    for g in unit_fixtures().values():
        x, length = oracle_optimal(g, limit=10**6)
        assert check_local_threading(g, x) == []
        assert verify_walk(g, realize(g, x)).counts == x
        rep = bounds(g)
        assert rep.lower_london <= length <= rep.upper_cycles


def test_search_bounds_box():
    box = SearchBounds.for_graph(k4())
    assert set(box.lower.values()) == {1} and set(box.upper.values()) == {2}
    assert box.size() == 6
    box = SearchBounds.for_graph(k4(), {("a", "b"): 1})
    assert box.upper[("a", "b")] == 1
    with pytest.raises(ValueError):
        SearchBounds.for_graph(k4(), {("a", "b"): 0})


def test_size_guard_and_override(monkeypatch):
    g = unit_fixtures()["k5"]
    with pytest.raises(SearchLimitError):
        oracle_optimal(g, limit=5)
    monkeypatch.setenv("THREADING_ORACLE_LIMIT", "5")
    with pytest.raises(SearchLimitError):
        oracle_optimal(g)
    monkeypatch.setenv("THREADING_ORACLE_LIMIT", "1000")
    assert oracle_optimal(g)[1] == 15


def test_infeasible_caps():
    with pytest.raises(InfeasibleError):
        oracle_optimal(k4(), {e: 1 for e in k4().edges})


def test_weighted_oracle():
    g = Graph([("a", "b", Fraction(3, 2)), ("b", "c", Fraction(3, 2)), ("a", "c", 3)])
    assert oracle_optimal(g)[1] == 6


def test_matching_oracle_examples():
    nodes = ["p", "q", "r", "s"]
    sq = MatchingInstance(nodes, [(nodes[i], nodes[(i + 1) % 4], w) for i, w in enumerate((1, 2, 1, 2))])
    assert oracle_matchings(sq).weight == 2
    assert oracle_matchings(sq, maximize=True).weight == 4
    k = MatchingInstance(list("abcd"), [(a, b, 1) for a, b in k4().edges])
    assert oracle_matchings(k).weight == oracle_matchings(k, maximize=True).weight == 2
    with pytest.raises(InfeasibleError):
        oracle_matchings(MatchingInstance(list("abc"), [("a", "b", 1), ("b", "c", 1)]))
    with pytest.raises(SearchLimitError):
        oracle_matchings(MatchingInstance(list(range(14))))


def test_simple_cycles_counts():
    assert len(simple_cycles(k4())) == 7
    assert len(simple_cycles(unit_fixtures()["k5"])) == 37
    assert len(simple_cycles(cycle(6))) == 1
    assert oracle_cycle_packing(k4())[0] == 4
    assert oracle_cycle_packing(theta())[0] == 4
