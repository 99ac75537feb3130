"""Turn a count vector into an explicit closed walk, and check walks.

Each vertex gets a junction graph: a connected multigraph on its incident
tubes whose node degrees equal the counts. The union of all junction graphs
is the threading graph. An Euler tour of the threading graph that never
takes two junction edges of the same owner back to back, read as the
sequence of owners, is a walk with no U-turns realizing the counts.
"""

from __future__ import annotations

import heapq
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .graph import EdgeId, Graph, edge_id


@dataclass(frozen=True)
class JunctionGraph:
    owner: str
    nodes: tuple[EdgeId, ...]
    edges: tuple[tuple[EdgeId, EdgeId], ...]

    def degree(self, tube: EdgeId) -> int:
        return sum((a == tube) + (b == tube) for a, b in self.edges)

    def is_connected(self) -> bool:
        return _connected(self.nodes, self.edges)


@dataclass(frozen=True)
class ThreadingGraph:
    """Union of junction graphs over the tubes of ``g``.

    ``edges[k] = (owner, a, b)`` is a junction edge of ``J(owner)`` joining
    tubes ``a`` and ``b``.
    """

    nodes: tuple[EdgeId, ...]
    edges: tuple[tuple[str, EdgeId, EdgeId], ...]

    def degree(self, tube: EdgeId) -> int:
        return sum((a == tube) + (b == tube) for _, a, b in self.edges)


@dataclass(frozen=True)
class ThreadingWalk:
    """Closed walk ``w_0, ..., w_{k-1}`` (step ``k - 1`` returns to ``w_0``)."""

    vertices: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def steps(self) -> list[EdgeId]:
        w = self.vertices
        return [edge_id(w[i], w[(i + 1) % len(w)]) for i in range(len(w))]

    def to_text(self) -> str:
        w = self.vertices
        return ",".join(w + w[:1]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> ThreadingWalk:
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        body = ",".join(ln for ln in lines if ln)
        ids = [tok.strip() for tok in body.split(",")]
        if any(not tok for tok in ids):
            raise ValueError("empty vertex id in walk")
        if len(ids) > 1 and ids[0] == ids[-1]:
            ids.pop()
        return cls(tuple(ids))


@dataclass
class WalkVerdict:
    ok: bool
    counts: dict[EdgeId, int] | None = None
    error: str | None = None
    check: str | None = None
    position: int | None = None
    vertex: str | None = None
    details: list[str] = field(default_factory=list)


def _connected(nodes: Sequence, edges: Sequence[tuple]) -> bool:
    if not nodes:
        return True
    parent = {t: t for t in nodes}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    groups = len(nodes)
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            groups -= 1
    return groups == 1


def degree_tree(degrees: Sequence[int]) -> list[tuple[int, int]]:
    """A tree on nodes ``0..d-1`` whose node ``i`` has degree ``degrees[i]``.

    Needs ``d >= 2``, every degree at least 1 and ``sum == 2 (d - 1)``.
    Runs in O(d): a node with spare degree is repeatedly joined to a leaf.
    """
    d = len(degrees)
    if d < 2 or any(x < 1 for x in degrees) or sum(degrees) != 2 * (d - 1):
        raise ValueError(f"not a tree degree sequence: {list(degrees)}")
    remaining = list(degrees)
    inner = [i for i in range(d) if remaining[i] > 1]
    leaves = [i for i in range(d) if remaining[i] == 1]
    tree = []
    while inner:
        i = inner.pop()
        j = leaves.pop()
        tree.append((i, j))
        remaining[i] -= 1
        (inner if remaining[i] > 1 else leaves).append(i)
    assert len(leaves) == 2
    tree.append((leaves[0], leaves[1]))
    return tree


def build_junction(v: str, counts: Mapping[EdgeId, int]) -> JunctionGraph:
    """Connected, loop-free junction graph at ``v`` with tube degrees ``counts``.

    While the counts exceed a spanning tree's worth, the two largest
    (lexicographically smallest tube on ties) are joined by a redundant edge
    and both decremented; the rest becomes a tree via :func:`degree_tree`.
    """
    tubes = tuple(sorted(counts))
    d = len(tubes)
    x = [counts[t] for t in tubes]
    total = sum(x)
    if d < 2 or any(c < 1 for c in x):
        raise ValueError(f"junction at {v}: needs >= 2 tubes with positive counts")
    if total % 2 or total < 2 * (d - 1) or any(2 * c > total for c in x):
        raise ValueError(f"junction at {v}: counts {x} violate the local constraints")

    edges: list[tuple[EdgeId, EdgeId]] = []
    heap = [(-c, i) for i, c in enumerate(x)]
    heapq.heapify(heap)
    while total > 2 * (d - 1):
        _, alpha = heapq.heappop(heap)
        _, beta = heapq.heappop(heap)
        x[alpha] -= 1
        x[beta] -= 1
        total -= 2
        edges.append((tubes[alpha], tubes[beta]))
        heapq.heappush(heap, (-x[alpha], alpha))
        heapq.heappush(heap, (-x[beta], beta))
    edges.extend((tubes[i], tubes[j]) for i, j in degree_tree(x))
    return JunctionGraph(v, tubes, tuple(edges))


def build_junctions(g: Graph, x: Mapping[EdgeId, int]) -> dict[str, JunctionGraph]:
    return {v: build_junction(v, {e: x[e] for e in g.incident(v)}) for v in g.vertices}


def build_threading_graph(g: Graph, junctions: Mapping[str, JunctionGraph]) -> ThreadingGraph:
    if set(junctions) != set(g.vertices):
        raise ValueError("need exactly one junction graph per vertex")
    edges = []
    for v in g.vertices:
        jv = junctions[v]
        if set(jv.nodes) != set(g.incident(v)):
            raise ValueError(f"junction graph at {v} does not cover its incident tubes")
        edges.extend((v, a, b) for a, b in jv.edges)
    for e in g.edges:
        du = junctions[e[0]].degree(e)
        dv = junctions[e[1]].degree(e)
        if du != dv:
            raise ValueError(
                f"inconsistent junction degrees on tube {e[0]} {e[1]}: {du} at {e[0]}, {dv} at {e[1]}"
            )
    tg = ThreadingGraph(g.edges, tuple(edges))
    if not _connected(tg.nodes, [(a, b) for _, a, b in tg.edges]):
        raise ValueError("threading graph is disconnected")
    return tg


def euler_no_uturn(tg: ThreadingGraph) -> ThreadingWalk:
    """Closed walk read off :func:`euler_edge_order` as the sequence of junction owners."""
    return ThreadingWalk(tuple(tg.edges[k][0] for k in euler_edge_order(tg)))


def euler_edge_order(tg: ThreadingGraph) -> list[int]:
    """Edge indices of an Euler tour of ``tg`` that alternates owners at every tube.

    Junction edge ``k`` has endpoint ``2k`` at its first tube and ``2k + 1``
    at its second. At each tube ``uv`` the endpoints owned by ``u`` are paired
    one-to-one with those owned by ``v``; following edge, pair, edge, ...
    splits the edges into closed trails. Trails meeting at a tube are merged
    by exchanging the partners of two pairs there, which keeps every pair
    joining a ``u`` endpoint to a ``v`` endpoint.
    """
    if not tg.edges:
        raise ValueError("empty threading graph")
    at_tube: dict[EdgeId, tuple[list[int], list[int]]] = {t: ([], []) for t in tg.nodes}
    for k, (owner, a, b) in enumerate(tg.edges):
        for p, tube in ((2 * k, a), (2 * k + 1, b)):
            at_tube[tube][owner != tube[0]].append(p)

    partner = [-1] * (2 * len(tg.edges))
    for tube in tg.nodes:
        side0, side1 = at_tube[tube]
        if len(side0) != len(side1):
            raise ValueError(f"unbalanced tube {tube[0]} {tube[1]}")
        for p, q in zip(side0, side1):
            partner[p] = q
            partner[q] = p

    # label every endpoint with the trail it lies on
    trail = [-1] * len(partner)
    ntrails = 0
    for start in range(len(partner)):
        if trail[start] >= 0:
            continue
        p = start
        while trail[p] < 0:
            trail[p] = trail[p ^ 1] = ntrails
            p = partner[p ^ 1]
        ntrails += 1

    root = list(range(ntrails))

    def find(t: int) -> int:
        while root[t] != t:
            root[t] = root[root[t]]
            t = root[t]
        return t

    for tube in tg.nodes:
        side0, side1 = at_tube[tube]
        if not side0:
            continue
        a0 = side0[0]
        for ai in side0[1:]:
            ra, ri = find(trail[a0]), find(trail[ai])
            if ra == ri:
                continue
            b0, bi = partner[a0], partner[ai]
            partner[a0], partner[bi] = bi, a0
            partner[ai], partner[b0] = b0, ai
            root[ri] = ra

    order = []
    p = 0
    while True:
        order.append(p // 2)
        p = partner[p ^ 1]
        if p == 0:
            break
    if len(order) != len(tg.edges):
        raise AssertionError("trail merging left more than one closed trail")
    return order


def realize(g: Graph, x: Mapping[EdgeId, int]) -> ThreadingWalk:
    """Closed walk with no U-turns and connected junctions visiting each edge ``x_e`` times."""
    return euler_no_uturn(build_threading_graph(g, build_junctions(g, x)))


def verify_walk(g: Graph, walk: ThreadingWalk) -> WalkVerdict:
    """Check that ``walk`` is a threading of ``g``; report the induced counts.

    Checks, in order: every step follows an edge, no U-turns (two consecutive
    steps along the same edge), every edge visited, and every vertex's
    induced junction graph connected. Positions are 0-based step indices.
    """
    w = walk.vertices
    k = len(w)
    if k < 2:
        return WalkVerdict(False, error="walk has fewer than 2 steps", check="length")
    for i in range(k):
        a, b = w[i], w[(i + 1) % k]
        if a not in g or b not in g or a == b or not g.has_edge(a, b):
            return WalkVerdict(
                False, error=f"step {i} ({a} -> {b}) is not an edge", check="edge", position=i
            )
    steps = walk.steps()
    for i in range(k):
        if steps[i] == steps[(i + 1) % k]:
            at = w[(i + 1) % k]
            return WalkVerdict(
                False,
                error=f"U-turn at step {i + 1} (vertex {at})",
                check="uturn",
                position=(i + 1) % k,
                vertex=at,
            )
    counts = {e: 0 for e in g.edges}
    for e in steps:
        counts[e] += 1
    for e in g.edges:
        if counts[e] == 0:
            return WalkVerdict(
                False, error=f"edge {e[0]} {e[1]} is never visited", check="coverage"
            )
    junction_edges: dict[str, list[tuple[EdgeId, EdgeId]]] = {v: [] for v in g.vertices}
    for i in range(k):
        junction_edges[w[(i + 1) % k]].append((steps[i], steps[(i + 1) % k]))
    for v in g.vertices:
        if not _connected(g.incident(v), junction_edges[v]):
            return WalkVerdict(
                False,
                error=f"junction graph at vertex {v} is disconnected",
                check="junction",
                vertex=v,
            )
    return WalkVerdict(True, counts=counts)


def junction_graph_of_walk(g: Graph, walk: ThreadingWalk, v: str) -> JunctionGraph:
    steps = walk.steps()
    k = len(steps)
    edges = tuple(
        (steps[i], steps[(i + 1) % k]) for i in range(k) if walk.vertices[(i + 1) % k] == v
    )
    return JunctionGraph(v, g.incident(v), edges)


__all__ = [
    "JunctionGraph",
    "ThreadingGraph",
    "ThreadingWalk",
    "WalkVerdict",
    "build_junction",
    "build_junctions",
    "build_threading_graph",
    "degree_tree",
    "euler_edge_order",
    "euler_no_uturn",
    "junction_graph_of_walk",
    "realize",
    "verify_walk",
]
