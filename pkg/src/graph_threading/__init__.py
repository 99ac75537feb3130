"""Exact minimum-length threadings of graphs.

A threading is a closed walk that covers every edge, never leaves an edge
and immediately re-enters it, and induces a connected junction graph at
every vertex. The solver reduces the search for a shortest one to a
minimum-weight perfect matching and realizes the optimum as a walk.
"""

from .constraints import (
    BoundsReport,
    CountVector,
    Violation,
    bounds,
    check_local_threading,
    double_threading,
    format_counts,
    is_local_threading,
    is_perfect,
    parse_counts,
    threading_length,
)
from .graph import (
    EdgeId,
    Graph,
    GraphError,
    ParseError,
    bridges,
    edge_id,
    format_graph,
    london_vertices,
    parse_graph,
)
from .junction import (
    JunctionGraph,
    ThreadingGraph,
    ThreadingWalk,
    WalkVerdict,
    build_junction,
    build_threading_graph,
    degree_tree,
    euler_no_uturn,
    realize,
    verify_walk,
)
from .matching import (
    CertificateError,
    InfeasibleError,
    Matching,
    MatchingInstance,
    check_certificate,
    max_weight_perfect_matching,
    min_weight_perfect_matching,
)
from .oracle import SearchLimitError, oracle_matchings, oracle_optimal
from .reductions import (
    ThreadingSolution,
    build_H,
    build_Hhat,
    build_Htilde,
    has_perfect_threading,
    phi,
    psi,
    solve_capped,
    solve_optimal,
)
from .special import CyclePacking, max_disjoint_cycles, solve_cubic, solve_double

__all__ = [
    "BoundsReport",
    "CertificateError",
    "CountVector",
    "CyclePacking",
    "EdgeId",
    "Graph",
    "GraphError",
    "InfeasibleError",
    "JunctionGraph",
    "Matching",
    "MatchingInstance",
    "ParseError",
    "SearchLimitError",
    "ThreadingGraph",
    "ThreadingSolution",
    "ThreadingWalk",
    "Violation",
    "WalkVerdict",
    "bounds",
    "bridges",
    "build_H",
    "build_Hhat",
    "build_Htilde",
    "build_junction",
    "build_threading_graph",
    "check_certificate",
    "check_local_threading",
    "degree_tree",
    "double_threading",
    "edge_id",
    "euler_no_uturn",
    "format_counts",
    "format_graph",
    "has_perfect_threading",
    "is_local_threading",
    "is_perfect",
    "london_vertices",
    "max_disjoint_cycles",
    "max_weight_perfect_matching",
    "min_weight_perfect_matching",
    "oracle_matchings",
    "oracle_optimal",
    "parse_counts",
    "parse_graph",
    "phi",
    "psi",
    "realize",
    "solve_capped",
    "solve_cubic",
    "solve_double",
    "solve_optimal",
    "threading_length",
    "verify_walk",
]
