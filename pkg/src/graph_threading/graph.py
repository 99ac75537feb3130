"""Graph representation, edge-list parsing and structural queries."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from decimal import Decimal, InvalidOperation
from fractions import Fraction

EdgeId = tuple[str, str]


class GraphError(ValueError):
    """Raised when a graph violates one of the input invariants."""


class ParseError(GraphError):
    """Raised on malformed edge-list text; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def edge_id(u: str, v: str) -> EdgeId:
    """Canonical id of the undirected edge uv (endpoints in lexicographic order)."""
    return (u, v) if u <= v else (v, u)


def parse_length(token: str) -> Fraction:
    """Parse a decimal literal (or ``p/q``, as written by :func:`format_graph`) exactly."""
    if "/" in token:
        num, _, den = token.partition("/")
        if not (num.lstrip("-").isdigit() and den.isdigit()) or int(den) == 0:
            raise ValueError(f"invalid length {token!r}")
        return Fraction(int(num), int(den))
    try:
        value = Decimal(token)
    except InvalidOperation:
        raise ValueError(f"invalid length {token!r}") from None
    if not value.is_finite():
        raise ValueError(f"invalid length {token!r}")
    return Fraction(value)


# ids must survive the edge-list and walk text formats
_BAD_ID = re.compile(r"[\s,#]")


class Graph:
    """Simple, connected, undirected graph with minimum degree 2.

    Vertex ids are strings. Edges are canonical ``EdgeId`` pairs kept in
    sorted order, and every edge carries an exact positive rational length
    (1 unless given). Instances are immutable once constructed.
    """

    __slots__ = ("_vertices", "_edges", "_lengths", "_incident", "_index")

    def __init__(
        self,
        edges: Iterable[tuple[str, str] | tuple[str, str, Fraction | int | str]],
        *,
        validate: bool = True,
    ) -> None:
        lengths: dict[EdgeId, Fraction] = {}
        incident: dict[str, list[EdgeId]] = {}
        for item in edges:
            if len(item) == 2:
                u, v = item  # type: ignore[misc]
                length = Fraction(1)
            else:
                u, v, raw = item  # type: ignore[misc]
                length = parse_length(raw) if isinstance(raw, str) else Fraction(raw)
            u, v = str(u), str(v)
            for name in (u, v):
                if not name or _BAD_ID.search(name):
                    raise GraphError(f"invalid vertex id {name!r}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = edge_id(u, v)
            if e in lengths:
                raise GraphError(f"duplicate edge {e[0]} {e[1]}")
            if length <= 0:
                raise GraphError(f"nonpositive length {length} on edge {e[0]} {e[1]}")
            lengths[e] = length
            incident.setdefault(u, []).append(e)
            incident.setdefault(v, []).append(e)

        self._edges: tuple[EdgeId, ...] = tuple(sorted(lengths))
        self._lengths: dict[EdgeId, Fraction] = {e: lengths[e] for e in self._edges}
        self._vertices: tuple[str, ...] = tuple(sorted(incident))
        self._incident: dict[str, tuple[EdgeId, ...]] = {
            v: tuple(sorted(incident[v])) for v in self._vertices
        }
        self._index: dict[EdgeId, int] = {e: i for i, e in enumerate(self._edges)}
        if validate:
            self._validate()

    def _validate(self) -> None:
        if not self._vertices:
            raise GraphError("graph has no edges")
        for v in self._vertices:
            if len(self._incident[v]) < 2:
                raise GraphError(f"vertex {v} has degree {len(self._incident[v])}")
        if len(connected_components(self)) != 1:
            raise GraphError("graph is disconnected")

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[EdgeId, ...]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def max_degree(self) -> int:
        return max(len(es) for es in self._incident.values())

    def degree(self, v: str) -> int:
        return len(self._incident[v])

    def incident(self, v: str) -> tuple[EdgeId, ...]:
        """Edges incident to ``v`` in canonical order."""
        return self._incident[v]

    def neighbors(self, v: str) -> tuple[str, ...]:
        return tuple(other(e, v) for e in self._incident[v])

    def length(self, e: EdgeId) -> Fraction:
        return self._lengths[e]

    @property
    def lengths(self) -> Mapping[EdgeId, Fraction]:
        return self._lengths

    def total_length(self) -> Fraction:
        return sum(self._lengths.values(), Fraction(0))

    def is_unit(self) -> bool:
        return all(length == 1 for length in self._lengths.values())

    def edge_index(self, e: EdgeId) -> int:
        return self._index[e]

    def has_edge(self, u: str, v: str) -> bool:
        return edge_id(u, v) in self._lengths

    def __contains__(self, v: object) -> bool:
        return v in self._incident

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._lengths == other._lengths

    def __hash__(self) -> int:
        return hash(tuple(self._lengths.items()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def relabel(self, mapping: Mapping[str, str]) -> Graph:
        return Graph(
            (mapping[u], mapping[v], self._lengths[(u, v)]) for u, v in self._edges
        )


def other(e: EdgeId, v: str) -> str:
    """The endpoint of ``e`` that is not ``v``."""
    return e[1] if e[0] == v else e[0]


def connected_components(
    g: Graph, removed: EdgeId | None = None
) -> list[set[str]]:
    """Connected components, optionally with one edge deleted."""
    seen: set[str] = set()
    components = []
    for start in g.vertices:
        if start in seen:
            continue
        component = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for e in g.incident(v):
                if e == removed:
                    continue
                w = other(e, v)
                if w not in seen:
                    seen.add(w)
                    component.add(w)
                    stack.append(w)
        components.append(component)
    return components


def parse_graph(text: str) -> Graph:
    """Parse the ``u v [length]`` edge-list format into a validated graph."""
    items: list[tuple[str, str, Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (2, 3):
            raise ParseError(f"expected 'u v [length]', got {len(fields)} fields", lineno)
        length = Fraction(1)
        if len(fields) == 3:
            try:
                length = parse_length(fields[2])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        items.append((fields[0], fields[1], length))
    return Graph(items)


def format_graph(g: Graph) -> str:
    lines = []
    for e in g.edges:
        length = g.length(e)
        if length == 1:
            lines.append(f"{e[0]} {e[1]}")
        else:
            lines.append(f"{e[0]} {e[1]} {format_decimal(length)}")
    return "\n".join(lines) + "\n"


def format_decimal(q: Fraction) -> str:
    """Exact decimal rendering when the denominator allows it, else ``p/q``."""
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    text = format(Decimal(q.numerator) / Decimal(q.denominator), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def bridges(g: Graph) -> set[EdgeId]:
    """Edges whose removal disconnects ``g`` (iterative lowpoint DFS)."""
    order: dict[str, int] = {}
    low: dict[str, int] = {}
    found: set[EdgeId] = set()
    for root in g.vertices:
        if root in order:
            continue
        order[root] = low[root] = len(order)
        # stack entries: (vertex, edge used to enter it, iterator over incident edges)
        stack = [(root, None, iter(g.incident(root)))]
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for e in it:
                if e == parent_edge:
                    continue
                w = other(e, v)
                if w in order:
                    low[v] = min(low[v], order[w])
                else:
                    order[w] = low[w] = len(order)
                    stack.append((w, e, iter(g.incident(w))))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if parent_edge is not None:
                u = other(parent_edge, v)
                low[u] = min(low[u], low[v])
                if low[v] > order[u]:
                    found.add(parent_edge)
    return found


def london_vertices(g: Graph, bridge_set: set[EdgeId] | None = None) -> set[str]:
    """Vertices all of whose incident edges are bridges."""
    if bridge_set is None:
        bridge_set = bridges(g)
    return {v for v in g.vertices if all(e in bridge_set for e in g.incident(v))}
