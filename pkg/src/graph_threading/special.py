"""Cubic graphs and the double-threading problem.

On a cubic graph a perfect threading doubles exactly one edge per vertex,
so it is a perfect matching of the graph itself. Double threading (every
count 1 or 2) single-threads a set of vertex-disjoint cycles; the best such
set is found as a maximum-weight perfect matching on a gadget graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .constraints import CountVector, threading_length
from .graph import EdgeId, Graph, edge_id, other
from .junction import realize
from .matching import (
    InfeasibleError,
    Matching,
    MatchingInstance,
    max_weight_perfect_matching,
    min_weight_perfect_matching,
)
from .reductions import ThreadingSolution, solve_optimal


class GadgetNode(NamedTuple):
    """Node of the cycle-packing gadget graph: ``side`` is ``"in"`` (D-) or ``"out"`` (D+)."""

    vertex: str
    side: str
    index: int


@dataclass(frozen=True)
class CyclePacking:
    cycles: tuple[tuple[str, ...], ...]
    edges: frozenset[EdgeId]
    length: Fraction

    @property
    def size(self) -> int:
        return len(self.edges)


def solve_cubic(g: Graph) -> ThreadingSolution:
    """Optimal threading of a cubic graph.

    With unit lengths, any perfect matching of ``g`` gives the doubled edges
    of a perfect threading; the lexicographically smallest one is used.
    Weighted inputs and cubic graphs without a perfect matching fall back to
    :func:`solve_optimal`.
    """
    if any(g.degree(v) != 3 for v in g.vertices):
        raise ValueError("solve_cubic needs a cubic graph")
    if not g.is_unit():
        return solve_optimal(g)
    inst = MatchingInstance(list(g.vertices), [(u, v, 0) for u, v in g.edges])
    try:
        # lexicographic tie-break picks the first perfect matching in edge order
        matching = min_weight_perfect_matching(inst, lex_tiebreak=True)
    except InfeasibleError:
        return solve_optimal(g)
    doubled = {edge_id(a, b) for a, b, _ in matching.edges}
    counts = {e: 2 if e in doubled else 1 for e in g.edges}
    length = threading_length(g, counts)
    return ThreadingSolution(counts, length, realize(g, counts), "cubic", matching)


def build_gadget_graph(g: Graph, weighted: bool = False) -> MatchingInstance:
    """Gadget graph whose maximum-weight perfect matchings are maximum cycle packings.

    Per vertex ``v``: a zero-weight biclique between ``d(v)`` in-nodes and
    ``d(v)`` out-nodes, plus one zero-weight edge between the first two
    in-nodes. Per edge ``uv``: one edge between the out-node of ``u`` and the
    out-node of ``v`` assigned to ``uv``, of weight 1 (or ``l(uv)``).
    """
    inst = MatchingInstance()
    for v in g.vertices:
        d = g.degree(v)
        for side in ("in", "out"):
            for i in range(d):
                inst.add_node(GadgetNode(v, side, i))
        for i in range(d):
            for j in range(d):
                inst.add_edge(GadgetNode(v, "in", i), GadgetNode(v, "out", j), 0)
        inst.add_edge(GadgetNode(v, "in", 0), GadgetNode(v, "in", 1), 0)
    for e in g.edges:
        u, v = e
        a = GadgetNode(u, "out", g.incident(u).index(e))
        b = GadgetNode(v, "out", g.incident(v).index(e))
        inst.add_edge(a, b, g.length(e) if weighted else 1)
    return inst


def packing_from_gadget_matching(g: Graph, matching: Matching) -> CyclePacking:
    """Read the cycles off the matched inter-gadget edges."""
    chosen: set[EdgeId] = set()
    for a, b, _ in matching.edges:
        if a.vertex != b.vertex:
            chosen.add(edge_id(a.vertex, b.vertex))
    at: dict[str, list[EdgeId]] = {v: [] for v in g.vertices}
    for e in chosen:
        at[e[0]].append(e)
        at[e[1]].append(e)
    for v, es in at.items():
        if len(es) not in (0, 2):
            raise AssertionError(f"vertex {v} has {len(es)} packed edges")
    cycles = []
    seen: set[str] = set()
    for start in g.vertices:
        if start in seen or not at[start]:
            continue
        cycle = [start]
        seen.add(start)
        prev_edge = min(at[start])
        cur = start
        # walk away from start along its larger packed edge, back along the smaller
        e = max(at[start])
        while True:
            nxt = other(e, cur)
            if nxt == start:
                break
            cycle.append(nxt)
            seen.add(nxt)
            e = at[nxt][0] if at[nxt][1] == e else at[nxt][1]
            cur = nxt
        assert e == prev_edge
        cycles.append(tuple(cycle))
    length = sum((g.length(e) for e in chosen), Fraction(0))
    return CyclePacking(tuple(cycles), frozenset(chosen), length)


def max_disjoint_cycles(g: Graph, weighted: bool | None = None) -> CyclePacking:
    """Vertex-disjoint simple cycles of maximum total edge count (or length).

    ``weighted`` defaults to using lengths when the graph has any non-unit one.
    """
    if weighted is None:
        weighted = not g.is_unit()
    inst = build_gadget_graph(g, weighted)
    matching = max_weight_perfect_matching(inst)
    packing = packing_from_gadget_matching(g, matching)
    expected = matching.weight
    got = packing.length if weighted else Fraction(packing.size)
    if got != expected:
        raise AssertionError("packing weight differs from matching weight")
    return packing


def double_threading_counts(g: Graph, packing: CyclePacking) -> CountVector:
    return {e: 1 if e in packing.edges else 2 for e in g.edges}


def solve_double(g: Graph) -> ThreadingSolution:
    """Best threading with every count in {1, 2}: single-thread a maximum cycle packing."""
    packing = max_disjoint_cycles(g)
    counts = double_threading_counts(g, packing)
    length = threading_length(g, counts)
    return ThreadingSolution(counts, length, realize(g, counts), "double")
