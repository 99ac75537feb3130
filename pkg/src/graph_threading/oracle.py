"""Brute-force reference solvers for desk-scale validation.

Nothing here touches the matching reductions: the threading oracle is a
depth-first search over bounded count vectors, and the matching oracle
enumerates perfect matchings outright.
"""

from __future__ import annotations

import math
import os
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .constraints import CountVector
from .graph import EdgeId, Graph
from .matching import InfeasibleError, Matching, MatchingInstance

DEFAULT_LIMIT = 150
MATCHING_NODE_LIMIT = 12


class SearchLimitError(ValueError):
    """The instance exceeds the oracle's size guard."""


@dataclass(frozen=True)
class SearchBounds:
    """Inclusive per-edge count range for the search."""

    lower: dict[EdgeId, int]
    upper: dict[EdgeId, int]

    @classmethod
    def for_graph(
        cls,
        g: Graph,
        caps: Mapping[EdgeId, int] | None = None,
        upper: int | None = None,
    ) -> SearchBounds:
        # an optimal threading never uses an edge more than max_degree - 1 times
        top = upper if upper is not None else max(1, g.max_degree - 1)
        hi = {e: top for e in g.edges}
        if caps:
            for e, c in caps.items():
                if c < 1:
                    raise ValueError(f"cap on {e} must be positive")
                hi[e] = min(hi[e], c)
        return cls({e: 1 for e in g.edges}, hi)

    def size(self) -> int:
        return sum(self.upper[e] - self.lower[e] for e in self.upper)


def oracle_limit() -> int:
    raw = os.environ.get("THREADING_ORACLE_LIMIT")
    return int(raw) if raw else DEFAULT_LIMIT


def oracle_optimal(
    g: Graph,
    caps: Mapping[EdgeId, int] | None = None,
    *,
    upper: int | None = None,
    limit: int | None = None,
) -> tuple[CountVector, Fraction]:
    """Minimum-length local threading by exhaustive search.

    Counts range over ``[1, max_degree - 1]`` (or ``[1, upper]``), further
    cut by ``caps``. Returns the lexicographically smallest optimal vector
    in canonical edge order with its length. Raises ``InfeasibleError`` if
    the box holds no threading and :class:`SearchLimitError` when the box
    exceeds the size guard (``THREADING_ORACLE_LIMIT`` overrides it).
    """
    box = SearchBounds.for_graph(g, caps, upper)
    guard = oracle_limit() if limit is None else limit
    if box.size() > guard:
        raise SearchLimitError(f"search box size {box.size()} exceeds limit {guard}")

    canonical = list(g.edges)
    ceiling = _Search(g, box, canonical).run(_box_top(g, box), first=True)
    if ceiling is None:
        raise InfeasibleError("no threading within the count bounds")
    scale = _length_scale(g)
    if g.is_unit():
        # probe targets upward from the root bound; the first hit is optimal and
        # the canonical order makes it the lexicographically smallest optimum
        probe = _Search(g, box, canonical)
        target = -(-probe.root_bound() // 2)
        while True:
            found = probe.run(target, first=True)
            if found is not None:
                break
            target += 1
    else:
        best = _Search(g, box, _search_order(g)).run(None)
        assert best is not None
        target = best[0]
        found = _Search(g, box, canonical).run(target, first=True)
        assert found is not None
    assert found[0] == target
    return dict(zip(g.edges, found[1])), Fraction(target, scale)


def _box_top(g: Graph, box: SearchBounds) -> int:
    scale = _length_scale(g)
    return sum(int(g.length(e) * scale) * box.upper[e] for e in g.edges)


def _length_scale(g: Graph) -> int:
    scale = 1
    for e in g.edges:
        d = g.length(e).denominator
        scale = scale * d // math.gcd(scale, d)
    return scale


def _search_order(g: Graph) -> list[EdgeId]:
    """Edges ordered so vertex stars complete as early as possible."""
    pos: dict[str, int] = {}
    while len(pos) < g.n:
        # most already-placed neighbours first, then highest degree; ties by id
        v = max(
            (u for u in g.vertices if u not in pos),
            key=lambda u: (sum(w in pos for w in g.neighbors(u)), g.degree(u)),
        )
        pos[v] = len(pos)
    return sorted(g.edges, key=lambda e: (max(pos[e[0]], pos[e[1]]), min(pos[e[0]], pos[e[1]])))


class _Search:
    """Depth-first branch and bound over count vectors in a fixed edge order.

    Lengths are scaled to integers. The bound is half the sum over vertices
    of the cheapest way to finish each vertex star: every open edge at least
    once, plus enough extra units on the cheapest open edge to meet C4, C3
    and parity.
    """

    def __init__(self, g: Graph, box: SearchBounds, order: list[EdgeId]) -> None:
        scale = _length_scale(g)
        self.g = g
        self.order = order
        self.vidx = {v: i for i, v in enumerate(g.vertices)}
        self.ends = [(self.vidx[u], self.vidx[v]) for u, v in order]
        self.length = [int(g.length(e) * scale) for e in order]
        self.lo = [box.lower[e] for e in order]
        self.hi = [box.upper[e] for e in order]
        self.canonical_pos = [g.edge_index(e) for e in order]
        n = g.n
        self.need = [2 * (g.degree(v) - 1) for v in g.vertices]
        m = len(order)
        # per vertex and depth: open edge count, their total length, cheapest length
        self.open_count = [[0] * (m + 1) for _ in range(n)]
        self.open_len = [[0] * (m + 1) for _ in range(n)]
        self.open_min = [[0] * (m + 1) for _ in range(n)]
        for vi in range(n):
            cnt = tot = 0
            cheapest = 0
            for i in range(m - 1, -1, -1):
                if vi in self.ends[i]:
                    cnt += 1
                    tot += self.length[i]
                    cheapest = self.length[i] if cheapest == 0 else min(cheapest, self.length[i])
                self.open_count[vi][i] = cnt
                self.open_len[vi][i] = tot
                self.open_min[vi][i] = cheapest

    def _vertex_bound(self, vi: int, depth: int) -> int:
        s = self.sum[vi]
        r = self.open_count[vi][depth]
        if r == 0:
            return self.cost[vi]
        need = max(self.need[vi], 2 * self.mx[vi], s + r)
        if need % 2:
            need += 1
        extra = need - (s + r)
        return self.cost[vi] + self.open_len[vi][depth] + extra * self.open_min[vi][depth]

    def root_bound(self) -> int:
        """Doubled lower bound on any completion of the empty assignment."""
        self.sum = [0] * self.g.n
        self.cost = [0] * self.g.n
        self.mx = [0] * self.g.n
        return sum(self._vertex_bound(vi, 0) for vi in range(self.g.n))

    def run(self, target: int | None, first: bool = False):
        n = self.g.n
        m = len(self.order)
        self.sum = [0] * n
        self.cost = [0] * n
        self.mx = [0] * n
        self.x = [0] * m
        self.bound = [self._vertex_bound(vi, 0) for vi in range(n)]
        self.total = sum(self.bound)
        # an incumbent meeting the root bound is optimal, so the search can stop
        self.floor = self.total
        # compare doubled lengths so the halving never leaves the integers
        if target is None:
            self.best2 = 2 * sum(h * length for h, length in zip(self.hi, self.length)) + 1
            if all(h >= 2 for h in self.hi):
                self.best2 = 2 * sum(2 * length for length in self.length)
                self.best_x = [2] * m
            else:
                self.best_x = None
            self.strict = True
        else:
            self.best2 = 2 * target
            self.best_x = None
            self.strict = False
        self.first = first
        self.done = False
        self._dfs(0)
        if self.best_x is None:
            return None
        xs = [0] * m
        for i, c in enumerate(self.best_x):
            xs[self.canonical_pos[i]] = c
        return self.best2 // 2, xs

    def _dfs(self, depth: int) -> None:
        if depth == len(self.order):
            total2 = self.total
            if total2 < self.best2 or (not self.strict and total2 <= self.best2):
                self.best2 = total2
                self.best_x = list(self.x)
                if self.first or total2 <= self.floor:
                    self.done = True
            return
        u, v = self.ends[depth]
        length = self.length[depth]
        lo, hi = self.lo[depth], self.hi[depth]
        parity = -1
        for vi in (u, v):
            if self.open_count[vi][depth] == 1:
                # this edge closes the star at vi: C2, C3 and C4 pin its range
                s, mx = self.sum[vi], self.mx[vi]
                lo = max(lo, self.need[vi] - s, 2 * mx - s)
                hi = min(hi, s)
                if parity < 0:
                    parity = s % 2
                elif parity != s % 2:
                    return
        step = 1
        if parity >= 0:
            step = 2
            if lo % 2 != parity:
                lo += 1
        if lo > hi:
            return
        old_bu, old_bv = self.bound[u], self.bound[v]
        saved = (self.sum[u], self.cost[u], self.mx[u], self.sum[v], self.cost[v], self.mx[v])
        for c in range(lo, hi + 1, step):
            self.x[depth] = c
            for vi in (u, v):
                self.sum[vi] += c
                self.cost[vi] += c * length
                if c > self.mx[vi]:
                    self.mx[vi] = c
            nb_u = self._vertex_bound(u, depth + 1)
            nb_v = self._vertex_bound(v, depth + 1)
            delta = nb_u - old_bu + nb_v - old_bv
            self.total += delta
            self.bound[u], self.bound[v] = nb_u, nb_v
            if self.total < self.best2 or (not self.strict and self.total <= self.best2):
                self._dfs(depth + 1)
            self.total -= delta
            self.bound[u], self.bound[v] = old_bu, old_bv
            self.sum[u], self.cost[u], self.mx[u], self.sum[v], self.cost[v], self.mx[v] = saved
            if self.done:
                return


def oracle_matchings(
    inst: MatchingInstance, *, maximize: bool = False, limit: int = MATCHING_NODE_LIMIT
) -> Matching:
    """Optimal perfect matching by enumerating every perfect matching.

    Ties go to the first matching in enumeration order. Raises
    ``InfeasibleError`` if none exists.
    """
    n = len(inst.nodes)
    if n > limit:
        raise SearchLimitError(f"{n} nodes exceeds the enumeration limit {limit}")
    if n % 2:
        raise InfeasibleError(f"odd number of nodes ({n})")
    adj: list[dict[int, int]] = [{} for _ in range(n)]
    for k, (a, b, _) in enumerate(inst.edges):
        i, j = inst.index(a), inst.index(b)
        adj[i][j] = k
        adj[j][i] = k
    sign = -1 if maximize else 1
    best: list = [None, None]
    used = [False] * n
    chosen: list[int] = []

    def rec(acc: Fraction) -> None:
        i = next((t for t in range(n) if not used[t]), -1)
        if i < 0:
            if best[0] is None or sign * acc < sign * best[0]:
                best[0], best[1] = acc, list(chosen)
            return
        used[i] = True
        for j, k in adj[i].items():
            if not used[j]:
                used[j] = True
                chosen.append(k)
                rec(acc + inst.edges[k][2])
                chosen.pop()
                used[j] = False
        used[i] = False

    rec(Fraction(0))
    if best[0] is None:
        raise InfeasibleError("graph has no perfect matching")
    edges = tuple(inst.edges[k] for k in sorted(best[1]))
    return Matching(edges, best[0])


def simple_cycles(g: Graph) -> list[tuple[str, ...]]:
    """Every simple cycle once, as a vertex tuple starting at its smallest vertex."""
    rank = {v: i for i, v in enumerate(g.vertices)}
    cycles = []
    for s in g.vertices:
        path = [s]
        on_path = {s}

        def extend(v: str) -> None:
            for w in g.neighbors(v):
                if w == s and len(path) >= 3 and rank[path[1]] < rank[path[-1]]:
                    # the orientation test keeps one of the two directions
                    cycles.append(tuple(path))
                elif rank[w] > rank[s] and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    on_path.discard(path.pop())

        extend(s)
    return cycles


def oracle_cycle_packing(
    g: Graph, *, weighted: bool = False, limit: int = 5000
) -> tuple[Fraction, list[tuple[str, ...]]]:
    """Largest total edge count (or length) of vertex-disjoint simple cycles, by search."""
    cycles = simple_cycles(g)
    if len(cycles) > limit:
        raise SearchLimitError(f"{len(cycles)} cycles exceeds the enumeration limit {limit}")

    def value(c: tuple[str, ...]) -> Fraction:
        if not weighted:
            return Fraction(len(c))
        return sum(
            (g.length(tuple(sorted((c[i], c[(i + 1) % len(c)])))) for i in range(len(c))),
            Fraction(0),
        )

    items = sorted(((value(c), frozenset(c), c) for c in cycles), key=lambda t: -t[0])
    suffix = [Fraction(0)] * (len(items) + 1)
    for i in range(len(items) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + items[i][0]
    best: list = [Fraction(0), []]

    # branch on the next cycle taken, so the depth is the packing size
    def search(i: int, used: frozenset, acc: Fraction, chosen: list) -> None:
        if acc > best[0]:
            best[0], best[1] = acc, list(chosen)
        for j in range(i, len(items)):
            if acc + suffix[j] <= best[0]:
                return
            val, verts, c = items[j]
            if not verts & used:
                chosen.append(c)
                search(j + 1, used | verts, acc + val, chosen)
                chosen.pop()

    search(0, frozenset(), Fraction(0), [])
    return best[0], best[1]
