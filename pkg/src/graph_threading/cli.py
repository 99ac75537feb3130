"""Command-line front end.

Exit codes: 0 ok, 1 input or verification error, 2 infeasible, 3 internal
assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from .constraints import (
    CountVector,
    bounds,
    check_local_threading,
    format_counts,
    is_perfect,
    parse_counts,
    threading_length,
)
from .graph import Graph, bridges, london_vertices, parse_graph
from .junction import (
    ThreadingWalk,
    build_junctions,
    build_threading_graph,
    euler_edge_order,
    verify_walk,
)
from .matching import InfeasibleError
from .oracle import oracle_optimal
from .reductions import ThreadingSolution, solve_capped, solve_optimal
from .special import solve_cubic, solve_double

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_INTERNAL = 0, 1, 2, 3

# owner colours for DOT output, cycled in vertex order
PALETTE = (
    "red", "blue", "darkgreen", "orange", "purple", "brown",
    "magenta", "cyan4", "gold3", "gray40",
)


class InputError(Exception):
    pass


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_approx(q: Fraction) -> str:
    # exact half-up rounding to 6 places, no floats involved
    scaled = q * 10**6
    units = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    sign = "-" if units < 0 else ""
    units = abs(units)
    return f"{sign}{units // 10**6}.{units % 10**6:06d}"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    try:
        return parse_graph(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_counts(path: str, g: Graph, partial: bool = False) -> CountVector:
    try:
        return parse_counts(_read(path), g, partial=partial)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def graph_stats(g: Graph) -> dict[str, int]:
    bridge_set = bridges(g)
    return {
        "n": g.n,
        "m": g.m,
        "max_degree": g.max_degree,
        "bridges": len(bridge_set),
        "london": len(london_vertices(g, bridge_set)),
    }


def run_report(
    command: list[str], g: Graph, method: str, counts: CountVector, length: Fraction, elapsed: float
) -> dict[str, object]:
    """Report with a fixed key order; only ``elapsed_seconds`` varies between runs."""
    return {
        "command": command,
        "graph": graph_stats(g),
        "result": {
            "method": method,
            "length": format_rational(length),
            "length_decimal": format_approx(length),
            "doubled_edges": sum(1 for c in counts.values() if c >= 2),
            "counts": [[u, v, counts[(u, v)]] for u, v in g.edges],
        },
        "bounds": bounds(g).as_dict(),
        "elapsed_seconds": round(elapsed, 6),
    }


def _print_result(g: Graph, method: str, counts: CountVector, length: Fraction, out) -> None:
    head = f"length {format_rational(length)}"
    if method == "double":
        head += f", doubled edges: {sum(1 for c in counts.values() if c >= 2)}"
    out.write(head + "\n")
    out.write(f"approx {format_approx(length)}\n")
    out.write(f"method {method}\n")
    out.write(format_counts(g, counts))


def cmd_solve(args: argparse.Namespace, argv: list[str], out) -> int:
    g = _load_graph(args.graph)
    modes = sum(bool(x) for x in (args.capped, args.double, args.cubic))
    if modes > 1:
        raise InputError("--capped, --double and --cubic are mutually exclusive")
    start = time.perf_counter()
    sol: ThreadingSolution
    if args.capped:
        sol = solve_capped(g, _load_counts(args.capped, g, partial=True))
    elif args.double:
        sol = solve_double(g)
    elif args.cubic:
        try:
            sol = solve_cubic(g)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        sol = solve_optimal(g)
    elapsed = time.perf_counter() - start
    if args.walk_out:
        Path(args.walk_out).write_text(sol.walk.to_text(), encoding="utf-8")
    if args.json:
        report = run_report(argv, g, sol.method, sol.counts, sol.length, elapsed)
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        _print_result(g, sol.method, sol.counts, sol.length, out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, argv: list[str], out) -> int:
    g = _load_graph(args.graph)
    if bool(args.walk) == bool(args.counts):
        raise InputError("give exactly one of --walk and --counts")
    if args.walk:
        try:
            walk = ThreadingWalk.from_text(_read(args.walk))
        except ValueError as exc:
            raise InputError(f"{args.walk}: {exc}") from None
        verdict = verify_walk(g, walk)
        if not verdict.ok:
            out.write(f"invalid: {verdict.error}\n")
            return EXIT_INPUT
        counts = verdict.counts
    else:
        counts = _load_counts(args.counts, g)
        violations = check_local_threading(g, counts)
        if violations:
            out.write(f"invalid: {violations[0]}\n")
            for extra in violations[1:]:
                out.write(f"  {extra}\n")
            return EXIT_INPUT
    length = threading_length(g, counts)
    tag = " (perfect)" if is_perfect(g, counts) else ""
    out.write(f"ok{tag}: length {format_rational(length)}\n")
    out.write(format_counts(g, counts))
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace, argv: list[str], out) -> int:
    g = _load_graph(args.graph)
    rep = bounds(g)
    if g.is_unit():
        out.write(f"{rep.lower_london} ≤ OPT ≤ {rep.upper_cycles}\n")
    else:
        out.write(
            f"{format_rational(rep.weighted_lower)} ≤ OPT ≤ "
            f"{format_rational(rep.weighted_upper_cycles)}\n"
        )
    for key, value in rep.as_dict().items():
        out.write(f"{key} {value}\n")
    return EXIT_OK


def render_dot(g: Graph, counts: CountVector, threading: bool) -> str:
    """DOT text for ``g`` labelled with counts, or for its threading graph.

    The threading graph has one node per tube; each junction edge is coloured
    by its owner vertex and labelled with its position in the walk.
    """
    def q(s: str) -> str:
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["graph threading {" if threading else "graph G {"]
    if not threading:
        for v in g.vertices:
            lines.append(f"  {q(v)};")
        for u, v in g.edges:
            lines.append(f'  {q(u)} -- {q(v)} [label="{counts[(u, v)]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def tube(e) -> str:
        return q(f"{e[0]}-{e[1]}")

    tg = build_threading_graph(g, build_junctions(g, counts))
    position = {k: i for i, k in enumerate(euler_edge_order(tg))}
    colour = {v: PALETTE[i % len(PALETTE)] for i, v in enumerate(g.vertices)}
    for e in tg.nodes:
        lines.append(f"  {tube(e)};")
    for k, (owner, a, b) in enumerate(tg.edges):
        lines.append(
            f'  {tube(a)} -- {tube(b)} [color={colour[owner]}, label="{position[k]}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args: argparse.Namespace, argv: list[str], out) -> int:
    g = _load_graph(args.graph)
    counts = _load_counts(args.counts, g) if args.counts else solve_optimal(g).counts
    violations = check_local_threading(g, counts)
    if violations:
        raise InputError(str(violations[0]))
    out.write(render_dot(g, counts, args.threading))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, argv: list[str], out) -> int:
    g = _load_graph(args.graph)
    caps = _load_counts(args.capped, g, partial=True) if args.capped else None
    counts, length = oracle_optimal(g, caps, limit=args.limit)
    _print_result(g, "oracle", counts, length, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graph-threading",
        description="Minimum-length threadings of graphs: closed walks with no U-turns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal threading of an edge-list graph")
    p.add_argument("graph")
    p.add_argument("--capped", metavar="FILE", help="per-edge caps as 'u v cap' lines")
    p.add_argument("--double", action="store_true", help="best threading with counts in {1,2}")
    p.add_argument("--cubic", action="store_true", help="perfect-matching path for cubic graphs")
    p.add_argument("--walk-out", metavar="FILE", help="write the realizing walk here")
    p.add_argument("--json", action="store_true", help="print a JSON run report")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a walk or a count vector")
    p.add_argument("graph")
    p.add_argument("--walk", metavar="FILE")
    p.add_argument("--counts", metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="lower and upper bounds on the optimum")
    p.add_argument("graph")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("export-dot", help="render the graph or its threading graph as DOT")
    p.add_argument("graph")
    p.add_argument("--threading", action="store_true", help="render the threading graph")
    p.add_argument("--counts", metavar="FILE", help="use these counts instead of solving")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("oracle", help="brute-force optimum (small graphs only)")
    p.add_argument("graph")
    p.add_argument("--capped", metavar="FILE")
    p.add_argument("--limit", type=int, default=None, help="search box size guard")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv, out)
    except InfeasibleError as exc:
        err.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except (InputError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except AssertionError as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
