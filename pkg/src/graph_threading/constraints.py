"""Local threading constraints, length accounting and worst-case bounds.

A count vector assigns every edge the number of times a threading walks
through it. It is a valid local threading when, for every edge ``uv`` and
vertex ``v``:

* C1: ``x_uv >= 1``;
* C2: the counts around ``v`` sum to an even number;
* C3: no incident count exceeds the sum of the other counts around ``v``;
* C4: the counts around ``v`` sum to at least ``2 (d(v) - 1)``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .graph import EdgeId, Graph, ParseError, bridges, edge_id, london_vertices

if TYPE_CHECKING:
    from .special import CyclePacking

CountVector = dict[EdgeId, int]


@dataclass(frozen=True)
class Violation:
    constraint: str
    vertex: str | None
    edge: EdgeId | None
    detail: str

    def __str__(self) -> str:
        where = f"vertex {self.vertex}" if self.vertex is not None else ""
        if self.edge is not None:
            tube = f"edge {self.edge[0]} {self.edge[1]}"
            where = f"{tube} at {where}" if where else tube
        return f"{self.constraint} violated at {where}: {self.detail}"


def _check_domain(g: Graph, x: Mapping[EdgeId, int]) -> None:
    if set(x) != set(g.edges):
        missing = sorted(set(g.edges) - set(x))
        extra = sorted(set(x) - set(g.edges))
        raise ValueError(f"count vector domain mismatch: missing {missing}, extra {extra}")


def vertex_sum(g: Graph, x: Mapping[EdgeId, int], v: str) -> int:
    return sum(x[e] for e in g.incident(v))


def check_local_threading(g: Graph, x: Mapping[EdgeId, int]) -> list[Violation]:
    """Every violated constraint, ordered by vertex then edge; empty means valid."""
    _check_domain(g, x)
    violations = []
    for e in g.edges:
        if x[e] < 1:
            violations.append(Violation("C1", None, e, f"count {x[e]} < 1"))
    for v in g.vertices:
        total = vertex_sum(g, x, v)
        if total % 2:
            violations.append(Violation("C2", v, None, f"incident sum {total} is odd"))
        for e in g.incident(v):
            if 2 * x[e] > total:
                violations.append(
                    Violation("C3", v, e, f"count {x[e]} exceeds the other counts {total - x[e]}")
                )
        need = 2 * (g.degree(v) - 1)
        if total < need:
            violations.append(Violation("C4", v, None, f"incident sum {total} < {need}"))
    return violations


def is_local_threading(g: Graph, x: Mapping[EdgeId, int]) -> bool:
    return not check_local_threading(g, x)


def threading_length(g: Graph, x: Mapping[EdgeId, int]) -> Fraction:
    """Total length ``sum(l(e) * x_e)``."""
    _check_domain(g, x)
    return sum((g.length(e) * x[e] for e in g.edges), Fraction(0))


def is_perfect(g: Graph, x: Mapping[EdgeId, int]) -> bool:
    """True iff C4 is tight at every vertex, i.e. every junction graph is a tree."""
    violations = check_local_threading(g, x)
    if violations:
        raise ValueError(f"not a local threading: {violations[0]}")
    return all(vertex_sum(g, x, v) == 2 * (g.degree(v) - 1) for v in g.vertices)


def parse_counts(text: str, g: Graph, *, partial: bool = False) -> CountVector:
    """Parse ``u v count`` lines for the edges of ``g``.

    Every edge must appear exactly once unless ``partial`` (as for caps).
    """
    counts: CountVector = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(f"expected 'u v count', got {len(fields)} fields", lineno)
        u, v, token = fields
        if u not in g or v not in g or not g.has_edge(u, v):
            raise ParseError(f"{u} {v} is not an edge of the graph", lineno)
        try:
            c = int(token)
        except ValueError:
            raise ParseError(f"count {token!r} is not an integer", lineno) from None
        e = edge_id(u, v)
        if e in counts:
            raise ParseError(f"edge {e[0]} {e[1]} listed twice", lineno)
        counts[e] = c
    if not partial:
        missing = [e for e in g.edges if e not in counts]
        if missing:
            raise ParseError(f"no count for edge {missing[0][0]} {missing[0][1]}")
    return counts


def format_counts(g: Graph, x: Mapping[EdgeId, int]) -> str:
    return "".join(f"{u} {v} {x[(u, v)]}\n" for u, v in g.edges)


def double_threading(g: Graph) -> CountVector:
    """The all-twos threading; every junction graph is a cycle."""
    return {e: 2 for e in g.edges}


@dataclass(frozen=True)
class BoundsReport:
    """Worst-case bracket on the optimal threading.

    The unit fields count edge visits. The weighted fields use edge lengths:
    ``weighted_lower`` is the total edge length (every edge at least once),
    ``weighted_upper_cycles`` comes from a length-maximal cycle packing.
    """

    n: int
    m: int
    london: int
    lower_basic: int
    lower_london: int
    upper_cycles: int
    upper_trivial: int
    packing_edges: int
    weighted_lower: Fraction
    weighted_upper_cycles: Fraction
    weighted_upper_trivial: Fraction

    def as_dict(self) -> dict[str, object]:
        return {
            "n": self.n,
            "m": self.m,
            "london": self.london,
            "lower_basic": self.lower_basic,
            "lower_london": self.lower_london,
            "upper_cycles": self.upper_cycles,
            "upper_trivial": self.upper_trivial,
            "packing_edges": self.packing_edges,
            "weighted_lower": str(self.weighted_lower),
            "weighted_upper_cycles": str(self.weighted_upper_cycles),
            "weighted_upper_trivial": str(self.weighted_upper_trivial),
        }


def bounds(g: Graph, packing: CyclePacking | None = None) -> BoundsReport:
    # deferred: special_cases builds on the matching engine, which builds on this module
    from .special import max_disjoint_cycles

    if packing is None:
        packing = max_disjoint_cycles(g, weighted=False)
    london = len(london_vertices(g, bridges(g)))
    total = g.total_length()
    if g.is_unit():
        weighted_packing = Fraction(packing.size)
    else:
        weighted_packing = max_disjoint_cycles(g, weighted=True).length
    return BoundsReport(
        n=g.n,
        m=g.m,
        london=london,
        lower_basic=2 * g.m - g.n,
        lower_london=2 * g.m - g.n + london,
        upper_cycles=2 * g.m - packing.size,
        upper_trivial=2 * g.m,
        packing_edges=packing.size,
        weighted_lower=total,
        weighted_upper_cycles=2 * total - weighted_packing,
        weighted_upper_trivial=2 * total,
    )
