from __future__ import annotations

import itertools
import random

import pytest
from graphs import cycle, k4, random_graph, theta, unit_fixtures
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_threading import (
    Graph,
    ThreadingWalk,
    build_junction,
    build_threading_graph,
    degree_tree,
    euler_no_uturn,
    is_local_threading,
    oracle_optimal,
    realize,
    verify_walk,
)
from graph_threading.junction import _connected, build_junctions, junction_graph_of_walk


def _degrees(d: int, edges) -> list[int]:
    deg = [0] * d
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return deg


def test_degree_tree_examples():
    assert degree_tree([1, 1]) == [(0, 1)] or degree_tree([1, 1]) == [(1, 0)]
    star = degree_tree([3, 1, 1, 1])
    assert all(0 in e for e in star) and len(star) == 3
    path = degree_tree([2, 2, 1, 1])
    assert _degrees(4, path) == [2, 2, 1, 1]
    assert any({0, 1} == set(e) for e in path)


def _compositions(total: int, parts: int):
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield [bounds[i + 1] - bounds[i] for i in range(parts)]


def test_degree_tree_exhaustive_up_to_ten_nodes():
    checked = 0
    for d in range(2, 11):
        for degrees in _compositions(2 * (d - 1), d):
            tree = degree_tree(degrees)
            assert len(tree) == d - 1
            assert _degrees(d, tree) == degrees
            assert _connected(list(range(d)), tree)
            checked += 1
    assert checked == sum(1 for d in range(2, 11) for _ in _compositions(2 * (d - 1), d))


@pytest.mark.parametrize("bad", [[1], [2, 1], [0, 2, 2], [1, 1, 1]])
def test_degree_tree_rejects_invalid(bad):
    with pytest.raises(ValueError):
        degree_tree(bad)


def _tubes(d: int):
    return [("v", f"u{i}") for i in range(d)]


def test_build_junction_examples():
    t = _tubes(3)
    j = build_junction("v", {t[0]: 1, t[1]: 1})
    assert j.edges in (((t[0], t[1]),), ((t[1], t[0]),))
    j = build_junction("v", {t[0]: 2, t[1]: 1, t[2]: 1})
    assert sorted(tuple(sorted(e)) for e in j.edges) == [(t[0], t[1]), (t[0], t[2])]
    j = build_junction("v", {t[0]: 2, t[1]: 2, t[2]: 2})
    assert len(j.edges) == 3
    assert [j.degree(x) for x in t] == [2, 2, 2]
    assert j.is_connected()
    # the redundant edge joins the two largest counts, smallest ids first
    assert set(j.edges[0]) == {t[0], t[1]}


def test_build_junction_rejects_locally_invalid_counts():
    t = _tubes(3)
    for counts in ((1, 1, 1), (3, 1, 1), (1, 1, 4), (0, 2, 2)):
        with pytest.raises(ValueError):
            build_junction("v", dict(zip(t, counts)))


def test_build_junction_exhaustive_small():
    for d in range(2, 6):
        t = _tubes(d)
        for counts in itertools.product(range(1, 6), repeat=d):
            total = sum(counts)
            if total % 2 or total < 2 * (d - 1) or any(2 * c > total for c in counts):
                continue
            j = build_junction("v", dict(zip(t, counts)))
            assert all(a != b for a, b in j.edges)
            assert len(j.edges) == total // 2
            assert [j.degree(x) for x in t] == list(counts)
            assert j.is_connected()


def test_threading_graph_examples():
    g = cycle(3)
    tg = build_threading_graph(g, build_junctions(g, {e: 1 for e in g.edges}))
    assert len(tg.nodes) == 3 and len(tg.edges) == 3
    x = {("a", "b"): 2, ("c", "d"): 2, ("a", "c"): 1, ("a", "d"): 1, ("b", "c"): 1, ("b", "d"): 1}
    tg = build_threading_graph(k4(), build_junctions(k4(), x))
    assert len(tg.edges) == 8
    assert all(tg.degree(e) == 2 * x[e] for e in tg.nodes)
    g = theta()
    x = {("a", "s"): 1, ("a", "t"): 1, ("b", "s"): 1, ("b", "t"): 1, ("c", "s"): 2, ("c", "t"): 2}
    tg = build_threading_graph(g, build_junctions(g, x))
    assert all(tg.degree(e) == 2 * x[e] for e in tg.nodes)
    walk = euler_no_uturn(tg)
    assert len(walk) == 8
    assert verify_walk(g, walk).counts == x


def test_threading_graph_rejects_inconsistent_junctions():
    g = k4()
    x = {e: 2 for e in g.edges}
    junctions = build_junctions(g, x)
    junctions["a"] = build_junction(
        "a", {("a", "b"): 2, ("a", "c"): 1, ("a", "d"): 1}
    )
    with pytest.raises(ValueError, match="inconsistent junction degrees"):
        build_threading_graph(g, junctions)


def test_euler_examples():
    g = cycle(3)
    walk = realize(g, {e: 1 for e in g.edges})
    assert sorted(walk.vertices) == ["v0", "v1", "v2"]
    x = {("a", "b"): 2, ("c", "d"): 2, ("a", "c"): 1, ("a", "d"): 1, ("b", "c"): 1, ("b", "d"): 1}
    walk = realize(k4(), x)
    verdict = verify_walk(k4(), walk)
    assert verdict.ok and verdict.counts == x and len(walk) == 8


def test_verify_walk_triangle():
    verdict = verify_walk(cycle(3), ThreadingWalk(("v0", "v1", "v2")))
    assert verdict.ok and set(verdict.counts.values()) == {1}


def test_verify_walk_reports_uturn():
    g = k4()
    verdict = verify_walk(g, ThreadingWalk(tuple("abcbd")))
    assert not verdict.ok and verdict.check == "uturn"
    assert verdict.error == "U-turn at step 2 (vertex c)"


def test_verify_walk_reports_non_edge_and_coverage():
    g = theta()
    verdict = verify_walk(g, ThreadingWalk(("s", "t", "a")))
    assert verdict.check == "edge" and verdict.position == 0
    verdict = verify_walk(g, ThreadingWalk(("s", "a", "t", "b")))
    assert verdict.check == "coverage"


def test_verify_walk_reports_disconnected_junction():
    # two triangles sharing a, walked one after the other
    g = Graph([("a", "b"), ("b", "c"), ("a", "c"), ("a", "d"), ("d", "e"), ("a", "e")])
    verdict = verify_walk(g, ThreadingWalk(tuple("abcade")))
    assert verdict.check == "junction" and verdict.vertex == "a"
    assert verdict.error == "junction graph at vertex a is disconnected"


def test_walk_text_round_trip():
    walk = ThreadingWalk(("a", "b", "c"))
    assert walk.to_text() == "a,b,c,a\n"
    assert ThreadingWalk.from_text(walk.to_text()) == walk
    assert ThreadingWalk.from_text("a, b, c\n") == walk
    with pytest.raises(ValueError):
        ThreadingWalk.from_text("a,,b")


def test_junction_graph_of_walk_matches_counts():
    x = {("a", "b"): 2, ("c", "d"): 2, ("a", "c"): 1, ("a", "d"): 1, ("b", "c"): 1, ("b", "d"): 1}
    walk = realize(k4(), x)
    for v in "abcd":
        j = junction_graph_of_walk(k4(), walk, v)
        assert j.is_connected()
        assert [j.degree(e) for e in j.nodes] == [x[e] for e in j.nodes]


def test_round_trip_on_oracle_optima():
    rng = random.Random(21)
    graphs = list(unit_fixtures().values())[:14] + [random_graph(rng, 9) for _ in range(40)]
    for g in graphs:
        x, _ = oracle_optimal(g, limit=10**6)
        walk = realize(g, x)
        verdict = verify_walk(g, walk)
        assert verdict.ok, verdict.error
        assert verdict.counts == x
        assert len(walk) == sum(x.values())


@st.composite
def graph_and_counts(draw):
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    g = random_graph(rng, 9)
    # start from all twos and bump random edges in pairs around a vertex
    x = {e: 2 for e in g.edges}
    for _ in range(draw(st.integers(0, 6))):
        v = rng.choice(g.vertices)
        a, b = rng.sample(g.incident(v), 2)
        x[a] += 1
        x[b] += 1
    for _ in range(draw(st.integers(0, 4))):
        e = rng.choice(g.edges)
        x[e] += 2
    return g, x


@settings(max_examples=150, deadline=None)
@given(graph_and_counts())
def test_realize_round_trip_property(case):
    g, x = case
    if not is_local_threading(g, x):
        return
    verdict = verify_walk(g, realize(g, x))
    assert verdict.ok and verdict.counts == x
