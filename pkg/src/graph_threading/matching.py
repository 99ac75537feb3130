"""Exact minimum-weight perfect matching on general graphs.

The engine is Edmonds' primal-dual blossom method in the O(n^3) form that
grows alternating trees, shrinks odd cycles into blossoms and adjusts dual
variables. It runs on integers only: rational weights are scaled by the
common denominator, and the maximum-cardinality maximum-weight variant is
run on ``max_w - w``, which for perfect matchings is exactly minimisation.

Every solve returns a dual certificate that is checked before returning:
vertex potentials ``p`` and nonnegative blossom values ``q`` with

    w(ij) - p_i - p_j + sum(q_B for blossoms B containing i and j) >= 0,

tight on matched edges, and ``sum(p) - sum(q_B (|B| - 1) / 2) == w(M)``.
"""

from __future__ import annotations

import math
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction

Node = Hashable


class InfeasibleError(Exception):
    """No perfect matching exists (distinct from an internal failure)."""


class CertificateError(AssertionError):
    """The dual certificate of a solve failed to validate."""


@dataclass
class MatchingInstance:
    """Weighted simple graph; node and edge insertion order is significant."""

    nodes: list[Node] = field(default_factory=list)
    edges: list[tuple[Node, Node, Fraction]] = field(default_factory=list)
    _index: dict[Node, int] = field(default_factory=dict, repr=False)
    _pairs: set[tuple[int, int]] = field(default_factory=set, repr=False)

    def __post_init__(self) -> None:
        nodes, edges = self.nodes, self.edges
        self.nodes, self.edges = [], []
        for v in nodes:
            self.add_node(v)
        for a, b, w in edges:
            self.add_edge(a, b, w)

    def add_node(self, v: Node) -> int:
        if v in self._index:
            raise ValueError(f"duplicate node {v!r}")
        self._index[v] = len(self.nodes)
        self.nodes.append(v)
        return self._index[v]

    def add_edge(self, a: Node, b: Node, weight: Fraction | int = 0) -> None:
        if a == b:
            raise ValueError(f"self-loop at {a!r}")
        for v in (a, b):
            if v not in self._index:
                self.add_node(v)
        i, j = self._index[a], self._index[b]
        key = (min(i, j), max(i, j))
        if key in self._pairs:
            raise ValueError(f"parallel edge {a!r} {b!r}")
        self._pairs.add(key)
        self.edges.append((a, b, Fraction(weight)))

    def index(self, v: Node) -> int:
        return self._index[v]

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class DualCertificate:
    potentials: dict[Node, Fraction]
    blossoms: tuple[tuple[frozenset, Fraction], ...]

    def objective(self) -> Fraction:
        total = sum(self.potentials.values(), Fraction(0))
        return total - sum((q * ((len(b) - 1) // 2) for b, q in self.blossoms), Fraction(0))


@dataclass(frozen=True)
class Matching:
    """Node-disjoint edges ``(a, b, weight)`` in instance edge order."""

    edges: tuple[tuple[Node, Node, Fraction], ...]
    weight: Fraction
    certificate: DualCertificate | None = None

    def mate(self) -> dict[Node, Node]:
        out = {}
        for a, b, _ in self.edges:
            out[a] = b
            out[b] = a
        return out

    def pairs(self) -> set[frozenset]:
        return {frozenset((a, b)) for a, b, _ in self.edges}

    def __len__(self) -> int:
        return len(self.edges)


def min_weight_perfect_matching(
    inst: MatchingInstance,
    *,
    initial: Iterable[tuple[Node, Node]] = (),
    lex_tiebreak: bool = False,
) -> Matching:
    """Minimum-weight perfect matching of ``inst``.

    ``initial`` optionally seeds the search with node-disjoint edges of
    minimum instance weight (a warm start; it does not change the optimum).
    With ``lex_tiebreak`` the lexicographically smallest optimal edge set
    (by edge index) is returned; this costs big-integer arithmetic and is
    meant for small instances. The certificate then refers to the perturbed
    weights that encode the tie-break.

    Raises :class:`InfeasibleError` if no perfect matching exists.
    """
    n = len(inst.nodes)
    if n % 2:
        raise InfeasibleError(f"odd number of nodes ({n})")
    if n == 0:
        return Matching((), Fraction(0), DualCertificate({}, ()))

    scale = 1
    for _, _, w in inst.edges:
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    ints = [int(w * scale) for _, _, w in inst.edges]
    certified = inst
    if lex_tiebreak:
        # earlier edges get a strictly larger discount than all later ones together
        nedges = len(ints)
        shift = 1 << (nedges + 1)
        ints = [w * shift - (1 << (nedges - 1 - k)) for k, w in enumerate(ints)]
        scale *= shift
        certified = MatchingInstance(
            list(inst.nodes),
            [(a, b, Fraction(w, scale)) for (a, b, _), w in zip(inst.edges, ints)],
        )

    top = max(ints, default=0)
    edges = [
        (inst.index(a), inst.index(b), top - w) for (a, b, _), w in zip(inst.edges, ints)
    ]
    seed = []
    if initial:
        lookup = {}
        for k, (i, j, _) in enumerate(edges):
            lookup[(i, j)] = lookup[(j, i)] = k
        for a, b in initial:
            k = lookup.get((inst.index(a), inst.index(b)))
            if k is None:
                raise ValueError(f"initial pair {a!r} {b!r} is not an edge")
            seed.append(k)

    solver = _Blossom(n, edges, seed)
    solver.solve()
    mate = solver.mate_vertices()
    if any(m < 0 for m in mate):
        raise InfeasibleError("graph has no perfect matching")

    chosen = tuple(
        inst.edges[k] for k, (i, j, _) in enumerate(edges) if mate[i] == j
    )
    weight = sum((w for _, _, w in chosen), Fraction(0))
    cert = _min_certificate(inst, solver, top, scale)
    certified_edges = tuple(
        certified.edges[k] for k, (i, j, _) in enumerate(edges) if mate[i] == j
    )
    check_certificate(
        certified,
        Matching(certified_edges, sum((w for _, _, w in certified_edges), Fraction(0)), cert),
    )
    return Matching(chosen, weight, cert)


def max_weight_perfect_matching(
    inst: MatchingInstance,
    *,
    initial: Iterable[tuple[Node, Node]] = (),
    lex_tiebreak: bool = False,
) -> Matching:
    """Maximum-weight perfect matching, solved as the minimum of negated weights.

    The returned certificate is for the negated instance.
    """
    negated = MatchingInstance(list(inst.nodes), [(a, b, -w) for a, b, w in inst.edges])
    m = min_weight_perfect_matching(negated, initial=initial, lex_tiebreak=lex_tiebreak)
    edges = tuple((a, b, -w) for a, b, w in m.edges)
    return Matching(edges, -m.weight, m.certificate)


def check_certificate(inst: MatchingInstance, matching: Matching) -> None:
    """Validate optimality of ``matching`` via its dual certificate.

    Raises :class:`CertificateError` on any failed condition.
    """
    cert = matching.certificate
    if cert is None:
        raise CertificateError("matching carries no certificate")
    mate = matching.mate()
    if len(mate) != len(inst.nodes):
        raise CertificateError("matching is not perfect")
    enclosing: dict[Node, list[int]] = {v: [] for v in inst.nodes}
    for bi, (members, q) in enumerate(cert.blossoms):
        if q < 0:
            raise CertificateError(f"negative blossom dual {q}")
        if len(members) % 2 == 0:
            raise CertificateError("even blossom")
        inside = sum(1 for v in members if mate[v] in members) // 2
        if q > 0 and inside != (len(members) - 1) // 2:
            raise CertificateError("blossom with positive dual is not full")
        for v in members:
            enclosing[v].append(bi)
    matched = matching.pairs()
    p = cert.potentials
    for a, b, w in inst.edges:
        common = set(enclosing[a]).intersection(enclosing[b])
        reduced = w - p[a] - p[b] + sum((cert.blossoms[bi][1] for bi in common), Fraction(0))
        if reduced < 0:
            raise CertificateError(f"edge {a!r} {b!r} has negative reduced weight {reduced}")
        if reduced != 0 and frozenset((a, b)) in matched:
            raise CertificateError(f"matched edge {a!r} {b!r} is not tight")
    if cert.objective() != matching.weight:
        raise CertificateError("dual objective differs from matching weight")


def _min_certificate(
    inst: MatchingInstance, solver: _Blossom, top: int, scale: int
) -> DualCertificate:
    # solver duals are doubled: slack(ij) = dual_i + dual_j - 2 w'(ij) + sum(2 z_B)
    potentials = {
        v: Fraction(top, 2 * scale) - Fraction(solver.dualvar[i], 2 * scale)
        for i, v in enumerate(inst.nodes)
    }
    blossoms = []
    for b in range(solver.n, 2 * solver.n):
        if solver.blossombase[b] < 0:
            continue
        members = frozenset(inst.nodes[v] for v in solver.leaves(b))
        blossoms.append((members, Fraction(solver.dualvar[b], scale)))
    return DualCertificate(potentials, tuple(blossoms))


def _drive(gen) -> None:
    # nested blossoms can be hundreds deep; run sub-calls from an explicit stack
    stack = [gen]
    while stack:
        try:
            stack.append(next(stack[-1]))
        except StopIteration:
            stack.pop()


class _Blossom:
    """Maximum-cardinality maximum-weight matching on integer weights.

    Vertices are ``0..n-1``; blossoms take ids ``n..2n-1``. Edge ``k`` has
    endpoints ``2k`` and ``2k + 1``; a vertex's ``mate`` is the remote
    endpoint of its matched edge. Labels: 0 free, 1 outer (S), 2 inner (T).
    Vertex duals are stored doubled so every quantity stays integral.
    """

    def __init__(self, n: int, edges: list[tuple[int, int, int]], seed: list[int]) -> None:
        self.n = n
        self.edges = edges
        self.endpoint = [edges[p // 2][p % 2] for p in range(2 * len(edges))]
        self.neighbend: list[list[int]] = [[] for _ in range(n)]
        for k, (i, j, _) in enumerate(edges):
            self.neighbend[i].append(2 * k + 1)
            self.neighbend[j].append(2 * k)
        top = max((w for _, _, w in edges), default=0)
        self.mate = [-1] * n
        self.label = [0] * (2 * n)
        self.labelend = [-1] * (2 * n)
        self.inblossom = list(range(n))
        self.blossomparent = [-1] * (2 * n)
        self.blossomchilds: list[list[int] | None] = [None] * (2 * n)
        self.blossombase = list(range(n)) + [-1] * n
        self.blossomendps: list[list[int] | None] = [None] * (2 * n)
        # leaf vertices of each blossom, kept up to date instead of walked each time
        self.blossomleaves: list[list[int] | None] = [[i] for i in range(n)] + [None] * n
        self.bestedge = [-1] * (2 * n)
        self.blossombestedges: list[list[int] | None] = [None] * (2 * n)
        self.unusedblossoms = list(range(n, 2 * n))
        self.dualvar = [top] * n + [0] * n
        self.allowedge = [False] * len(edges)
        self.queue: list[int] = []
        for k in seed:
            i, j, w = edges[k]
            if self.mate[i] >= 0 or self.mate[j] >= 0:
                raise ValueError("initial matching is not node-disjoint")
            if w != top:
                raise ValueError("initial matching uses a non-minimum-weight edge")
            self.mate[i] = 2 * k + 1
            self.mate[j] = 2 * k

    def slack(self, k: int) -> int:
        i, j, w = self.edges[k]
        return self.dualvar[i] + self.dualvar[j] - 2 * w

    def leaves(self, b: int) -> list[int]:
        return self.blossomleaves[b]

    def mate_vertices(self) -> list[int]:
        return [self.endpoint[p] if p >= 0 else -1 for p in self.mate]

    def assign_label(self, w: int, t: int, p: int) -> None:
        while True:
            b = self.inblossom[w]
            assert self.label[w] == 0 and self.label[b] == 0
            self.label[w] = self.label[b] = t
            self.labelend[w] = self.labelend[b] = p
            self.bestedge[w] = self.bestedge[b] = -1
            if t == 1:
                self.queue.extend(self.leaves(b))
                return
            base = self.blossombase[b]
            assert self.mate[base] >= 0
            w, t, p = self.endpoint[self.mate[base]], 1, self.mate[base] ^ 1

    def scan_blossom(self, v: int, w: int) -> int:
        """Base of the new blossom joining ``v`` and ``w``, or -1 if their trees differ."""
        label, endpoint = self.label, self.endpoint
        path = []
        base = -1
        while v != -1 or w != -1:
            b = self.inblossom[v]
            if label[b] & 4:
                base = self.blossombase[b]
                break
            assert label[b] == 1
            path.append(b)
            label[b] = 5
            assert self.labelend[b] == self.mate[self.blossombase[b]]
            if self.labelend[b] == -1:
                v = -1
            else:
                v = endpoint[self.labelend[b]]
                b = self.inblossom[v]
                assert label[b] == 2
                v = endpoint[self.labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(self, base: int, k: int) -> None:
        v, w, _ = self.edges[k]
        endpoint, labelend, inblossom = self.endpoint, self.labelend, self.inblossom
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = self.unusedblossoms.pop()
        self.blossombase[b] = base
        self.blossomparent[b] = -1
        self.blossomparent[bb] = b
        path: list[int] = []
        endps: list[int] = []
        while bv != bb:
            self.blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            self.blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        self.blossomchilds[b] = path
        self.blossomendps[b] = endps
        self.blossomleaves[b] = [leaf for c in path for leaf in self.blossomleaves[c]]
        assert self.label[bb] == 1
        self.label[b] = 1
        self.labelend[b] = labelend[bb]
        self.dualvar[b] = 0
        for leaf in self.leaves(b):
            if self.label[inblossom[leaf]] == 2:
                self.queue.append(leaf)
            inblossom[leaf] = b

        best_to: dict[int, int] = {}
        best_slack: dict[int, int] = {}
        edges, label, dualvar, neighbend = self.edges, self.label, self.dualvar, self.neighbend
        for child in path:
            if self.blossombestedges[child] is None:
                candidates = [p >> 1 for leaf in self.leaves(child) for p in neighbend[leaf]]
            else:
                candidates = self.blossombestedges[child]
            for kk in candidates:
                i, j, wt = edges[kk]
                bj = inblossom[j]
                if bj == b:
                    bj = inblossom[i]
                if bj != b and label[bj] == 1:
                    sl = dualvar[i] + dualvar[j] - 2 * wt
                    cur = best_slack.get(bj)
                    if cur is None or sl < cur:
                        best_slack[bj] = sl
                        best_to[bj] = kk
            self.blossombestedges[child] = None
            self.bestedge[child] = -1
        self.blossombestedges[b] = list(best_to.values())
        best = -1
        best_sl = 0
        for bj, kk in best_to.items():
            if best == -1 or best_slack[bj] < best_sl:
                best, best_sl = kk, best_slack[bj]
        self.bestedge[b] = best

    def expand_blossom(self, b: int, endstage: bool) -> None:
        _drive(self._expand(b, endstage))

    def _expand(self, b: int, endstage: bool):
        endpoint = self.endpoint
        for s in self.blossomchilds[b]:
            self.blossomparent[s] = -1
            if s < self.n:
                self.inblossom[s] = s
            elif endstage and self.dualvar[s] == 0:
                yield self._expand(s, endstage)
            else:
                for leaf in self.leaves(s):
                    self.inblossom[leaf] = s
        if not endstage and self.label[b] == 2:
            childs = self.blossomchilds[b]
            endps = self.blossomendps[b]
            entrychild = self.inblossom[endpoint[self.labelend[b] ^ 1]]
            j = childs.index(entrychild)
            if j & 1:
                j -= len(childs)
                jstep, endptrick = 1, 0
            else:
                jstep, endptrick = -1, 1
            p = self.labelend[b]
            while j != 0:
                self.label[endpoint[p ^ 1]] = 0
                self.label[endpoint[endps[j - endptrick] ^ endptrick ^ 1]] = 0
                self.assign_label(endpoint[p ^ 1], 2, p)
                self.allowedge[endps[j - endptrick] // 2] = True
                j += jstep
                p = endps[j - endptrick] ^ endptrick
                self.allowedge[p // 2] = True
                j += jstep
            bv = childs[j]
            self.label[endpoint[p ^ 1]] = self.label[bv] = 2
            self.labelend[endpoint[p ^ 1]] = self.labelend[bv] = p
            self.bestedge[bv] = -1
            j += jstep
            while childs[j] != entrychild:
                bv = childs[j]
                if self.label[bv] == 1:
                    j += jstep
                    continue
                found = -1
                for leaf in self.leaves(bv):
                    if self.label[leaf] != 0:
                        found = leaf
                        break
                if found >= 0:
                    assert self.label[found] == 2
                    assert self.inblossom[found] == bv
                    self.label[found] = 0
                    self.label[endpoint[self.mate[self.blossombase[bv]]]] = 0
                    self.assign_label(found, 2, self.labelend[found])
                j += jstep
        self.label[b] = self.labelend[b] = -1
        self.blossomchilds[b] = self.blossomendps[b] = self.blossomleaves[b] = None
        self.blossombase[b] = -1
        self.blossombestedges[b] = None
        self.bestedge[b] = -1
        self.unusedblossoms.append(b)

    def augment_blossom(self, b: int, v: int) -> None:
        _drive(self._augment(b, v))

    def _augment(self, b: int, v: int):
        endpoint = self.endpoint
        t = v
        while self.blossomparent[t] != b:
            t = self.blossomparent[t]
        if t >= self.n:
            yield self._augment(t, v)
        childs = self.blossomchilds[b]
        endps = self.blossomendps[b]
        i = j = childs.index(t)
        if i & 1:
            j -= len(childs)
            jstep, endptrick = 1, 0
        else:
            jstep, endptrick = -1, 1
        while j != 0:
            j += jstep
            t = childs[j]
            p = endps[j - endptrick] ^ endptrick
            if t >= self.n:
                yield self._augment(t, endpoint[p])
            j += jstep
            t = childs[j]
            if t >= self.n:
                yield self._augment(t, endpoint[p ^ 1])
            self.mate[endpoint[p]] = p ^ 1
            self.mate[endpoint[p ^ 1]] = p
        self.blossomchilds[b] = childs[i:] + childs[:i]
        self.blossomendps[b] = endps[i:] + endps[:i]
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]]
        assert self.blossombase[b] == v

    def augment_matching(self, k: int) -> None:
        endpoint = self.endpoint
        v, w, _ = self.edges[k]
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = self.inblossom[s]
                assert self.label[bs] == 1
                assert self.labelend[bs] == self.mate[self.blossombase[bs]]
                if bs >= self.n:
                    self.augment_blossom(bs, s)
                self.mate[s] = p
                if self.labelend[bs] == -1:
                    break
                t = endpoint[self.labelend[bs]]
                bt = self.inblossom[t]
                assert self.label[bt] == 2
                s = endpoint[self.labelend[bt]]
                j = endpoint[self.labelend[bt] ^ 1]
                assert self.blossombase[bt] == t
                if bt >= self.n:
                    self.augment_blossom(bt, j)
                self.mate[j] = self.labelend[bt]
                p = self.labelend[bt] ^ 1

    def solve(self) -> None:
        n = self.n
        label, inblossom, endpoint = self.label, self.inblossom, self.endpoint
        while True:
            label[:] = [0] * (2 * n)
            self.bestedge[:] = [-1] * (2 * n)
            self.blossombestedges[n:] = [None] * n
            self.allowedge[:] = [False] * len(self.edges)
            self.queue[:] = []
            for v in range(n):
                if self.mate[v] == -1 and label[inblossom[v]] == 0:
                    self.assign_label(v, 1, -1)
            if not self.queue:
                return

            augmented = False
            while True:
                while self.queue and not augmented:
                    v = self.queue.pop()
                    assert label[inblossom[v]] == 1
                    for p in self.neighbend[v]:
                        k = p // 2
                        w = endpoint[p]
                        if inblossom[v] == inblossom[w]:
                            continue
                        kslack = 0
                        if not self.allowedge[k]:
                            kslack = self.slack(k)
                            if kslack <= 0:
                                self.allowedge[k] = True
                        if self.allowedge[k]:
                            if label[inblossom[w]] == 0:
                                self.assign_label(w, 2, p ^ 1)
                            elif label[inblossom[w]] == 1:
                                base = self.scan_blossom(v, w)
                                if base >= 0:
                                    self.add_blossom(base, k)
                                else:
                                    self.augment_matching(k)
                                    augmented = True
                                    break
                            elif label[w] == 0:
                                label[w] = 2
                                self.labelend[w] = p ^ 1
                        elif label[inblossom[w]] == 1:
                            b = inblossom[v]
                            if self.bestedge[b] == -1 or kslack < self.slack(self.bestedge[b]):
                                self.bestedge[b] = k
                        elif label[w] == 0:
                            if self.bestedge[w] == -1 or kslack < self.slack(self.bestedge[w]):
                                self.bestedge[w] = k
                if augmented:
                    break

                deltatype = -1
                delta = deltaedge = deltablossom = 0
                for v in range(n):
                    if label[inblossom[v]] == 0 and self.bestedge[v] != -1:
                        d = self.slack(self.bestedge[v])
                        if deltatype == -1 or d < delta:
                            delta, deltatype, deltaedge = d, 2, self.bestedge[v]
                for b in range(2 * n):
                    if self.blossomparent[b] == -1 and label[b] == 1 and self.bestedge[b] != -1:
                        kslack = self.slack(self.bestedge[b])
                        assert kslack % 2 == 0
                        d = kslack // 2
                        if deltatype == -1 or d < delta:
                            delta, deltatype, deltaedge = d, 3, self.bestedge[b]
                for b in range(n, 2 * n):
                    if (
                        self.blossombase[b] >= 0
                        and self.blossomparent[b] == -1
                        and label[b] == 2
                        and (deltatype == -1 or self.dualvar[b] < delta)
                    ):
                        delta, deltatype, deltablossom = self.dualvar[b], 4, b
                if deltatype == -1:
                    # no augmenting path remains: maximum cardinality reached
                    break

                for v in range(n):
                    lab = label[inblossom[v]]
                    if lab == 1:
                        self.dualvar[v] -= delta
                    elif lab == 2:
                        self.dualvar[v] += delta
                for b in range(n, 2 * n):
                    if self.blossombase[b] >= 0 and self.blossomparent[b] == -1:
                        if label[b] == 1:
                            self.dualvar[b] += delta
                        elif label[b] == 2:
                            self.dualvar[b] -= delta

                if deltatype == 2:
                    self.allowedge[deltaedge] = True
                    i, j, _ = self.edges[deltaedge]
                    if label[inblossom[i]] == 0:
                        i, j = j, i
                    assert label[inblossom[i]] == 1
                    self.queue.append(i)
                elif deltatype == 3:
                    self.allowedge[deltaedge] = True
                    i, j, _ = self.edges[deltaedge]
                    assert label[inblossom[i]] == 1
                    self.queue.append(i)
                else:
                    self.expand_blossom(deltablossom, False)

            if not augmented:
                return
            for b in range(n, 2 * n):
                if (
                    self.blossomparent[b] == -1
                    and self.blossombase[b] >= 0
                    and label[b] == 1
                    and self.dualvar[b] == 0
                ):
                    self.expand_blossom(b, True)
