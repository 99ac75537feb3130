"""Fixture graphs and seeded generators shared by the test modules."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx

from graph_threading import Graph


def _name(v) -> str:
    return "_".join(map(str, v)) if isinstance(v, tuple) else str(v)


def from_nx(G: nx.Graph, lengths: dict | None = None) -> Graph:
    items = []
    for u, v in G.edges():
        item = (_name(u), _name(v))
        if lengths is not None:
            item += (lengths[frozenset((u, v))],)
        items.append(item)
    return Graph(items)


def cycle(n: int) -> Graph:
    return Graph([(f"v{i}", f"v{(i + 1) % n}") for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(list(itertools.combinations("abcdefghij"[:n], 2)))


def k4() -> Graph:
    return complete(4)


def theta() -> Graph:
    """Vertices s and t joined by three paths of length 2."""
    return Graph([("s", "a"), ("a", "t"), ("s", "b"), ("b", "t"), ("s", "c"), ("c", "t")])


def two_triangles_bridge() -> Graph:
    return Graph([("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f"), ("c", "d")])


def triangles_on_path() -> Graph:
    """Two triangles joined by a path of three bridges."""
    return Graph(
        [("a", "b"), ("b", "c"), ("a", "c"), ("c", "p"), ("p", "q"), ("q", "d"),
         ("d", "e"), ("e", "f"), ("d", "f")]
    )


def star_of_triangles() -> Graph:
    """Center v joined by one bridge to each of three disjoint triangles."""
    edges = []
    for k in range(3):
        a, b, c = f"t{k}a", f"t{k}b", f"t{k}c"
        edges += [(a, b), (b, c), (a, c), ("v", a)]
    return Graph(edges)


def twin_loops() -> Graph:
    """Two degree-5 centers, each on two 5-cycles, joined by one edge.

    The joining edge is threaded four times in every optimum.
    """
    edges = [("u", "v")]
    for center in ("u", "v"):
        for k in range(2):
            ring = [center] + [f"{center}{k}{i}" for i in range(4)]
            edges += [(ring[i], ring[(i + 1) % 5]) for i in range(5)]
    return Graph(edges)


def cube() -> Graph:
    return from_nx(nx.hypercube_graph(3))


def petersen() -> Graph:
    return from_nx(nx.petersen_graph())


def prism() -> Graph:
    return from_nx(nx.circular_ladder_graph(3))


def moebius_kantor() -> Graph:
    return from_nx(nx.moebius_kantor_graph())


def bridged_cubic() -> Graph:
    """Cubic graph with a bridge: two copies of K4 with one edge subdivided, joined at the new vertices."""
    edges = []
    for side in ("x", "y"):
        a, b, c, d, m = (f"{side}{t}" for t in "abcdm")
        edges += [(a, c), (a, d), (b, c), (b, d), (c, d), (a, m), (m, b)]
    edges.append(("xm", "ym"))
    return Graph(edges)


def unit_fixtures() -> dict[str, Graph]:
    return {
        "triangle": cycle(3),
        "c5": cycle(5),
        "k4": k4(),
        "k5": complete(5),
        "theta": theta(),
        "two_triangles_bridge": two_triangles_bridge(),
        "triangles_on_path": triangles_on_path(),
        "star_of_triangles": star_of_triangles(),
        "twin_loops": twin_loops(),
        "cube": cube(),
        "petersen": petersen(),
        "prism": prism(),
        "moebius_kantor": moebius_kantor(),
        "bridged_cubic": bridged_cubic(),
        "k33": from_nx(nx.complete_bipartite_graph(3, 3)),
        "k24": from_nx(nx.complete_bipartite_graph(2, 4)),
        "wheel6": from_nx(nx.wheel_graph(6)),
        "grid3": from_nx(nx.grid_2d_graph(3, 3)),
        "ladder4": from_nx(nx.ladder_graph(4)),
        "bowtie": Graph([("a", "b"), ("b", "c"), ("a", "c"), ("a", "d"), ("d", "e"), ("a", "e")]),
        "k4_subdivided": Graph(
            [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "x"), ("x", "d"), ("c", "d")]
        ),
        "octahedron": from_nx(nx.octahedral_graph()),
    }


def with_lengths(g: Graph, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(
        [(u, v, Fraction(rng.randint(1, 9), rng.choice((1, 2, 4, 5)))) for u, v in g.edges]
    )


def weighted_fixtures() -> dict[str, Graph]:
    names = ["k4", "theta", "two_triangles_bridge", "triangles_on_path", "star_of_triangles",
             "cube", "prism", "k33", "wheel6", "bowtie", "k4_subdivided", "grid3"]
    unit = unit_fixtures()
    out = {f"{name}_w": with_lengths(unit[name], seed) for seed, name in enumerate(names)}
    out["weighted_triangle"] = Graph(
        [("a", "b", Fraction(3, 2)), ("b", "c", Fraction(3, 2)), ("a", "c", Fraction(3))]
    )
    return out


def atlas_graphs(max_nodes: int = 7) -> list[Graph]:
    """All connected graphs with minimum degree 2 on at most ``max_nodes`` vertices, up to isomorphism."""
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n < 3 or n > max_nodes:
            continue
        if min(d for _, d in G.degree()) >= 2 and nx.is_connected(G):
            out.append(from_nx(G))
    return out


def _block(rng: random.Random, names: list[str], chord_p: float) -> list[tuple[str, str]]:
    order = names[:]
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[(i + 1) % len(order)]))) for i in range(len(order))}
    for a, b in itertools.combinations(names, 2):
        if rng.random() < chord_p:
            edges.add(tuple(sorted((a, b))))
    return sorted(edges)


def random_graph(rng: random.Random, max_nodes: int = 12) -> Graph:
    """Seeded connected graph with minimum degree 2.

    Either one Hamiltonian block with random chords, or several blocks joined
    by bridges, possibly through a hub whose edges are all bridges.
    """
    if max_nodes < 6 or rng.random() < 0.5:
        n = rng.randint(3, max_nodes)
        return Graph(_block(rng, [f"v{i}" for i in range(n)], rng.uniform(0.0, 0.5)))
    edges: list[tuple[str, str]] = []
    blocks = []
    used = 0
    hub = rng.random() < 0.5
    budget = max_nodes - (1 if hub else 0)
    while budget - used >= 3 and (len(blocks) < 2 or rng.random() < 0.5):
        size = rng.randint(3, min(5, budget - used))
        names = [f"b{len(blocks)}_{i}" for i in range(size)]
        used += size
        blocks.append(names)
        edges += _block(rng, names, rng.uniform(0.0, 0.6))
    if hub and len(blocks) >= 2:
        edges += [("h", rng.choice(names)) for names in blocks]
    else:
        for left, right in zip(blocks, blocks[1:]):
            edges.append((rng.choice(left), rng.choice(right)))
    return Graph(edges)


def random_cubic(seed: int, n: int) -> Graph | None:
    G = nx.random_regular_graph(3, n, seed=seed)
    return from_nx(G) if nx.is_connected(G) else None
