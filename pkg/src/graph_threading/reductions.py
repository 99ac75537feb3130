"""Matching reductions for perfect and optimal threadings.

Every edge ``uv`` gets copy pairs ``(ū v_i, u v̄_i)``; the copy ``u v̄_i``
faces ``v``'s junction. Every vertex ``v`` gets ``d(v) - 2`` slot nodes.
Black edges join the two copies of a pair, blue edges join a slot of ``v``
to the copies facing ``v``, and green edges join copies of two different
edges facing the same vertex. An unmatched black pair stands for one extra
visit of its edge beyond the first.

* ``H``: ``min(d(u), d(v)) - 2`` pairs per edge, no green edges; it has a
  perfect matching iff the graph has a perfect threading.
* ``Ĥ``: ``max_degree - 2`` pairs per edge, blue weight 1/2, green weight 1;
  a perfect matching of weight ``W`` gives a threading of length ``W + m``.
* ``H̃``: as ``Ĥ`` with blue weight ``l(uv)/2`` and green weight
  ``(l(uv) + l(wv))/2``; length is ``W`` plus the total edge length.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .constraints import CountVector, threading_length
from .graph import EdgeId, Graph, other
from .junction import ThreadingWalk, build_junction, realize
from .matching import (
    InfeasibleError,
    Matching,
    MatchingInstance,
    min_weight_perfect_matching,
)

BLACK, BLUE, GREEN = "black", "blue", "green"


class ReductionNode(NamedTuple):
    """A copy node (``edge`` set, ``vertex`` = the junction it faces) or a slot node."""

    kind: str
    vertex: str
    edge: EdgeId | None
    index: int

    def __str__(self) -> str:
        if self.kind == "slot":
            return f"{self.vertex}_{self.index}"
        u = other(self.edge, self.vertex)
        return f"{u}~{self.vertex}_{self.index}"


def copy_node(e: EdgeId, facing: str, i: int) -> ReductionNode:
    return ReductionNode("copy", facing, e, i)


def slot_node(v: str, i: int) -> ReductionNode:
    return ReductionNode("slot", v, None, i)


@dataclass
class Reduction:
    """A reduction graph together with its bookkeeping."""

    graph: Graph
    kind: str
    copies: dict[EdgeId, int]
    instance: MatchingInstance = field(default_factory=MatchingInstance)
    colors: dict[frozenset, str] = field(default_factory=dict)

    def add(self, a: ReductionNode, b: ReductionNode, color: str, weight: Fraction) -> None:
        self.instance.add_edge(a, b, weight)
        self.colors[frozenset((a, b))] = color

    def color(self, a: ReductionNode, b: ReductionNode) -> str:
        return self.colors[frozenset((a, b))]

    def black_pairs(self) -> list[tuple[ReductionNode, ReductionNode]]:
        return [
            (copy_node(e, e[0], i), copy_node(e, e[1], i))
            for e in self.graph.edges
            for i in range(1, self.copies[e] + 1)
        ]

    def count_edges(self) -> dict[str, int]:
        out = {BLACK: 0, BLUE: 0, GREEN: 0}
        for color in self.colors.values():
            out[color] += 1
        return out


def _edge_copies(g: Graph, copies: Mapping[EdgeId, int], kind: str) -> Reduction:
    red = Reduction(g, kind, dict(copies))
    for e in g.edges:
        for i in range(1, copies[e] + 1):
            red.instance.add_node(copy_node(e, e[0], i))
            red.instance.add_node(copy_node(e, e[1], i))
    for v in g.vertices:
        for i in range(1, g.degree(v) - 1):
            red.instance.add_node(slot_node(v, i))
    for a, b in red.black_pairs():
        red.add(a, b, BLACK, Fraction(0))
    return red


def build_H(g: Graph) -> Reduction:
    """Unweighted reduction whose perfect matchings are perfect threadings."""
    copies = {e: min(g.degree(e[0]), g.degree(e[1])) - 2 for e in g.edges}
    red = _edge_copies(g, copies, "H")
    for v in g.vertices:
        for s in range(1, g.degree(v) - 1):
            for e in g.incident(v):
                for j in range(1, copies[e] + 1):
                    red.add(slot_node(v, s), copy_node(e, v, j), BLUE, Fraction(0))
    return red


def build_Hhat(
    g: Graph, caps: Mapping[EdgeId, int] | None = None, *, weighted: bool = False
) -> Reduction:
    """Weighted reduction for optimal threadings (unit lengths unless ``weighted``).

    ``caps`` bounds individual edge counts by shrinking that edge's copies to
    ``min(cap, max_degree - 1) - 1``.
    """
    top = g.max_degree - 1
    copies = {e: top - 1 for e in g.edges}
    if caps:
        for e, c in caps.items():
            if c < 1:
                raise ValueError(f"cap on edge {e[0]} {e[1]} must be positive")
            copies[e] = min(c, top) - 1
    kind = "Htilde" if weighted else "Hhat"
    red = _edge_copies(g, copies, kind)

    def length(e: EdgeId) -> Fraction:
        return g.length(e) if weighted else Fraction(1)

    half = Fraction(1, 2)
    for v in g.vertices:
        tubes = g.incident(v)
        for s in range(1, g.degree(v) - 1):
            for e in tubes:
                for j in range(1, copies[e] + 1):
                    red.add(slot_node(v, s), copy_node(e, v, j), BLUE, half * length(e))
        for a_pos, a in enumerate(tubes):
            for b in tubes[a_pos + 1 :]:
                w = half * (length(a) + length(b))
                for i in range(1, copies[a] + 1):
                    for j in range(1, copies[b] + 1):
                        red.add(copy_node(a, v, i), copy_node(b, v, j), GREEN, w)
    return red


def build_Htilde(g: Graph, caps: Mapping[EdgeId, int] | None = None) -> Reduction:
    return build_Hhat(g, caps, weighted=True)


def _check_perfect(red: Reduction, matching: Matching) -> None:
    mate = matching.mate()
    if len(mate) != len(red.instance.nodes) or set(mate) != set(red.instance.nodes):
        raise ValueError("matching is not perfect on the reduction graph")
    for a, b, _ in matching.edges:
        if frozenset((a, b)) not in red.colors:
            raise ValueError(f"{a} {b} is not an edge of the reduction graph")


def _counts_from_matching(red: Reduction, matching: Matching) -> CountVector:
    _check_perfect(red, matching)
    matched = matching.pairs()
    counts = {}
    for e in red.graph.edges:
        unmatched = sum(
            frozenset((copy_node(e, e[0], i), copy_node(e, e[1], i))) not in matched
            for i in range(1, red.copies[e] + 1)
        )
        counts[e] = 1 + unmatched
    return counts


def phi(red: Reduction, matching: Matching) -> CountVector:
    """Perfect threading of a perfect matching of ``H``."""
    if red.kind != "H":
        raise ValueError("phi applies to the H reduction")
    return _counts_from_matching(red, matching)


def psi(red: Reduction, matching: Matching) -> CountVector:
    """Threading of a perfect matching of ``Ĥ`` / ``H̃``: one plus unmatched copies."""
    if red.kind not in ("Hhat", "Htilde"):
        raise ValueError("psi applies to the Hhat / Htilde reductions")
    return _counts_from_matching(red, matching)


def _as_matching(red: Reduction, pairs: Iterable[tuple[ReductionNode, ReductionNode]]) -> Matching:
    weights = {frozenset((a, b)): w for a, b, w in red.instance.edges}
    edges = tuple((a, b, weights[frozenset((a, b))]) for a, b in pairs)
    return Matching(edges, sum((w for _, _, w in edges), Fraction(0)))


def matching_from_perfect_threading(red: Reduction, x: Mapping[EdgeId, int]) -> Matching:
    """A perfect matching ``M`` of ``H`` with ``phi(M) == x``.

    The first ``d_uv - x_uv + 1`` pairs of each edge are matched black; the
    remaining copies facing each vertex fill its slots.
    """
    g = red.graph
    if red.kind != "H":
        raise ValueError("needs the H reduction")
    pairs = []
    facing: dict[str, list[ReductionNode]] = {v: [] for v in g.vertices}
    for e in g.edges:
        keep = red.copies[e] - x[e] + 1
        if keep < 0 or x[e] < 1:
            raise ValueError(f"count {x[e]} on edge {e[0]} {e[1]} cannot come from H")
        for i in range(1, red.copies[e] + 1):
            if i <= keep:
                pairs.append((copy_node(e, e[0], i), copy_node(e, e[1], i)))
            else:
                facing[e[0]].append(copy_node(e, e[0], i))
                facing[e[1]].append(copy_node(e, e[1], i))
    for v in g.vertices:
        if len(facing[v]) != g.degree(v) - 2:
            raise ValueError(f"counts at vertex {v} are not tight")
        pairs.extend((slot_node(v, s), c) for s, c in enumerate(facing[v], start=1))
    return _as_matching(red, pairs)


def matching_from_threading(red: Reduction, x: Mapping[EdgeId, int]) -> Matching:
    """A perfect matching ``M`` of ``Ĥ`` / ``H̃`` with ``psi(M) == x``.

    Per vertex, a junction graph is built and its edges outside a spanning
    tree become green matches; the remaining surplus copies take the slots.
    Each edge spends its top ``x_e - 1`` copy indices on both sides, so the
    untouched low indices pair up as black edges.
    """
    g = red.graph
    if red.kind not in ("Hhat", "Htilde"):
        raise ValueError("needs the Hhat / Htilde reduction")
    for e in g.edges:
        if not 1 <= x[e] <= red.copies[e] + 1:
            raise ValueError(f"count {x[e]} on edge {e[0]} {e[1]} exceeds the copies")
    pairs = []
    for v in g.vertices:
        jv = build_junction(v, {e: x[e] for e in g.incident(v)})
        root = {t: t for t in jv.nodes}

        def find(t: EdgeId) -> EdgeId:
            while root[t] != t:
                root[t] = root[root[t]]
                t = root[t]
            return t

        # next unused copy index facing v, handed out from the top down
        next_index = {e: red.copies[e] for e in g.incident(v)}

        def take(e: EdgeId) -> ReductionNode:
            i = next_index[e]
            next_index[e] -= 1
            assert i > red.copies[e] - x[e] + 1
            return copy_node(e, v, i)

        for a, b in jv.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                root[ra] = rb
            else:
                pairs.append((take(a), take(b)))
        slot = 1
        for e in g.incident(v):
            while next_index[e] > red.copies[e] - x[e] + 1:
                pairs.append((slot_node(v, slot), take(e)))
                slot += 1
        assert slot == g.degree(v) - 1
    for e in g.edges:
        for i in range(1, red.copies[e] - x[e] + 2):
            pairs.append((copy_node(e, e[0], i), copy_node(e, e[1], i)))
    return _as_matching(red, pairs)


@dataclass(frozen=True)
class ThreadingSolution:
    counts: CountVector
    length: Fraction
    walk: ThreadingWalk
    method: str
    matching: Matching | None = None
    reduction: Reduction | None = None

    def doubled_edges(self) -> int:
        return sum(1 for c in self.counts.values() if c >= 2)


def has_perfect_threading(g: Graph) -> tuple[bool, CountVector | None]:
    """Whether ``g`` has a threading of length ``2m - n``, with a witness."""
    red = build_H(g)
    try:
        matching = min_weight_perfect_matching(red.instance, initial=red.black_pairs())
    except InfeasibleError:
        return False, None
    return True, phi(red, matching)


def solve_optimal(g: Graph) -> ThreadingSolution:
    """Minimum-length threading via min-weight perfect matching of ``Ĥ`` / ``H̃``."""
    return _solve(g, None, "optimal")


def solve_capped(g: Graph, caps: Mapping[EdgeId, int]) -> ThreadingSolution:
    """Minimum-length threading with ``x_e <= caps[e]``.

    Edges missing from ``caps`` are uncapped. Raises ``InfeasibleError`` if
    the caps rule out every threading.
    """
    unknown = set(caps) - set(g.edges)
    if unknown:
        raise ValueError(f"caps name unknown edges: {sorted(unknown)}")
    return _solve(g, caps, "capped")


def _solve(g: Graph, caps: Mapping[EdgeId, int] | None, method: str) -> ThreadingSolution:
    if g.max_degree == 2:
        # a single cycle: walk it once
        counts = {e: 1 for e in g.edges}
        return ThreadingSolution(counts, g.total_length(), realize(g, counts), method)
    red = build_Hhat(g, caps, weighted=not g.is_unit())
    try:
        matching = min_weight_perfect_matching(red.instance, initial=red.black_pairs())
    except InfeasibleError:
        if caps is None:
            raise AssertionError("the reduction graph always has a perfect matching") from None
        raise InfeasibleError("the caps rule out every threading") from None
    counts = psi(red, matching)
    length = threading_length(g, counts)
    if length != matching.weight + g.total_length():
        raise AssertionError("matching weight and threading length disagree")
    return ThreadingSolution(counts, length, realize(g, counts), method, matching, red)

