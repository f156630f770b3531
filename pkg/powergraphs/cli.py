"""
Command line surface.

    python main.py build --group Q8 --digraph --out q8.dot
    python main.py classes --group C6
    python main.py roots --group C12 --element 4 --n 2
    python main.py cover --group C2xC2 --element 0
    python main.py reconstruct --graph pg.edges --expect-group Q8
    python main.py verify --max-order 32 --roundtrip
    python main.py twins --max-order 27

Exit codes: 0 success, 1 violation or mismatch, 2 bad input.
"""

import argparse
import logging
import os
import sys
from typing import Iterable, List, Optional

import numpy as np

from . import __version__, config
from .analysis import (
    clique_number,
    closed_neighborhood,
    equivalence_classes,
    maximal_cliques,
    maximal_cyclic_subgroups,
    min_cyclic_cover_of_prime_roots,
    nth_roots,
    prime_root_classes,
    prime_roots,
)
from .catalog import build_catalog, find_powergraph_twins, run_theorem_suite
from .errors import GraphFormatError, GroupOrderError, PowerGraphError
from .graphio import format_dot, format_edge_list, read_cayley_file, read_edge_list
from .groups import FiniteGroup, element_order, parse_group_spec, realize
from .logs import setup_logging
from .powergraph import POWER, ROOT, Graph, directed_power_graph, power_graph
from .reconstruct import reconstruct_digraph, round_trip_suite, verify_reconstruction


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _fmt(elements: Iterable[int]) -> str:
    return ",".join(str(v) for v in sorted(elements))


def _row(*cells) -> str:
    return "\t".join(str(c) for c in cells)


def _emit(lines: List[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _load_group(args) -> FiniteGroup:
    if args.cayley:
        return read_cayley_file(args.cayley, trust=args.trust, max_order=config.CLI_MAX_ORDER)
    return realize(parse_group_spec(args.group), max_order=config.CLI_MAX_ORDER)


def _sweep_order(args) -> int:
    ceiling = config.VERIFY_EXTENDED_ORDER if args.extended else config.VERIFY_MAX_ORDER
    order = ceiling if args.max_order is None else args.max_order
    if order > ceiling:
        raise GroupOrderError(order, ceiling, "sweep (use --extended to raise the ceiling)")
    return order


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info("WROTE %s", path)


# ---------- commands ----------

def cmd_build(args) -> int:
    G = _load_group(args)
    graph = directed_power_graph(G, convention=args.convention) if args.digraph else power_graph(G)
    if args.out and args.out.endswith(".dot"):
        text = format_dot(graph, name=G.name)
    else:
        text = format_edge_list(graph)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_classes(args) -> int:
    G = _load_group(args)
    graph = power_graph(G)
    partition = equivalence_classes(graph)
    lines = [_row("block", "size", "members", "neighborhood")]
    for b, block in enumerate(partition.blocks):
        lines.append(_row(b, len(block), _fmt(block), len(closed_neighborhood(graph, min(block)))))
    _emit(lines)
    return EXIT_OK


def cmd_roots(args) -> int:
    G = _load_group(args)
    u = args.element
    if args.prime:
        roots = prime_roots(G, u)
    else:
        if args.n is None:
            raise GraphFormatError("roots needs --n N or --prime")
        roots = nth_roots(G, u, args.n)
    _emit([_row("element", "order", "result"), _row(u, element_order(G, u), _fmt(roots))])
    return EXIT_OK


def cmd_cover(args) -> int:
    G = _load_group(args)
    u = args.element
    count, cover = min_cyclic_cover_of_prime_roots(G, u)
    classes = prime_root_classes(G, u)
    lines = [
        _row("element", "order", "result"),
        _row(u, element_order(G, u), _fmt(prime_roots(G, u))),
        "",
        _row("generator", "size", "subgroup"),
    ]
    lines.extend(_row(c.generator, len(c.elements), _fmt(c.elements)) for c in cover)
    lines.append(f"# cover size {count} of {len(maximal_cyclic_subgroups(G))} maximal cyclic subgroups; "
                 f"prime roots meet {len(classes)} closed-twin classes")
    _emit(lines)
    return EXIT_OK


def cmd_cliques(args) -> int:
    G = _load_group(args)
    graph = power_graph(G)
    cliques = maximal_cliques(graph)
    lines = [_row("size", "members")]
    lines.extend(_row(len(c), _fmt(c)) for c in cliques)
    lines.append(f"# clique number {clique_number(graph)}, {len(cliques)} maximal cliques")
    _emit(lines)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    graph = read_edge_list(args.graph, max_vertices=config.CLI_MAX_ORDER)
    if not isinstance(graph, Graph):
        raise GraphFormatError(f"{args.graph}: reconstruction needs an undirected graph")
    if args.shuffle:
        perm = [int(v) for v in np.random.default_rng(args.seed).permutation(graph.vertex_count)]
        graph = graph.permuted(perm)

    report = reconstruct_digraph(graph)
    text = format_edge_list(report.digraph)
    dot = format_dot(report.digraph, name="reconstructed")
    if args.out:
        _write(args.out, text)
        _write(os.path.splitext(args.out)[0] + ".dot", dot)
    else:
        # edge list first, then the DOT block
        sys.stdout.write(text + "\n" + dot)
    print(f"case: {report.case_used.value}; arcs: {report.digraph.arc_count()}; "
          f"identity class: {_fmt(report.identity_class)}", file=sys.stderr)

    if args.expect_group:
        G = realize(parse_group_spec(args.expect_group), max_order=config.CLI_MAX_ORDER)
        if not verify_reconstruction(directed_power_graph(G), report.digraph):
            logger.error("MISMATCH reconstruction differs from D(%s)", G.name)
            print(f"mismatch: reconstructed digraph is not isomorphic to D({G.name})", file=sys.stderr)
            return EXIT_FAILED
        print(f"verified against D({G.name})", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    catalog = build_catalog(_sweep_order(args))
    report = run_theorem_suite(catalog)
    lines = [_row("kind", "first", "second", "detail")]
    for pair in report.pg_isomorphic_pairs:
        lines.append(_row("pg_isomorphic", *pair, ""))
    for pair in report.violations:
        lines.append(_row("violation", *pair, "directed power graphs differ"))
    for twin in report.twins:
        lines.append(_row("twin", twin.first, twin.second, twin.certificate))
    for pair in report.uncertified:
        lines.append(_row("uncertified", *pair, "no cheap certificate"))

    failures = []
    if args.roundtrip:
        failures = round_trip_suite(catalog, seed=args.seed, rounds=args.rounds)
        for f in failures:
            lines.append(_row("roundtrip_failure", f.spec, f.seed, f.reason))

    lines.append(f"# groups {len(catalog)}, pairs {report.pairs_tested}, "
                 f"pg-isomorphic {len(report.pg_isomorphic_pairs)}, violations {len(report.violations)}, "
                 f"twins {len(report.twins)}, elapsed {report.elapsed:.2f}s")
    _emit(lines)
    return EXIT_OK if report.ok and not failures else EXIT_FAILED


def cmd_twins(args) -> int:
    catalog = build_catalog(_sweep_order(args))
    lines = [_row("first", "second")]
    lines.extend(_row(a, b) for a, b in find_powergraph_twins(catalog))
    _emit(lines)
    return EXIT_OK


def cmd_catalog(args) -> int:
    catalog = build_catalog(_sweep_order(args))
    lines = [_row("spec", "order", "abelian", "edges", "arcs")]
    for e in catalog:
        lines.append(_row(e.name, e.order, "yes" if e.group.is_abelian else "no",
                          e.power_graph.edge_count(), e.directed.arc_count()))
    _emit(lines)
    return EXIT_OK


# ---------- parser ----------

def _add_group_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", metavar="SPEC", help="catalog spec such as C12, Q8xC3, H3")
    src.add_argument("--cayley", metavar="FILE", help="Cayley table file")
    p.add_argument("--trust", action="store_true", help="skip the associativity check for --cayley")


def _add_sweep_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-order", type=int, default=None,
                   help=f"largest group order (default {config.VERIFY_MAX_ORDER})")
    p.add_argument("--extended", action="store_true",
                   help=f"allow orders up to {config.VERIFY_EXTENDED_ORDER}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powergraphs",
        description="Power graphs of finite nilpotent groups: build, analyse, reconstruct, verify.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING ...")
    parser.add_argument("--no-log-file", action="store_true", help="log to the console only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write P(G) or D(G) as an edge list or DOT")
    _add_group_source(p)
    p.add_argument("--digraph", action="store_true", help="directed power graph instead of P(G)")
    p.add_argument("--convention", choices=(POWER, ROOT), default=POWER,
                   help="power: x->y iff y is a power of x; root: reversed")
    p.add_argument("--out", metavar="FILE", help="output path; .dot selects DOT, stdout if omitted")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("classes", help="closed-twin classes of P(G)")
    _add_group_source(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("roots", help="n-th roots or prime roots of an element")
    _add_group_source(p)
    p.add_argument("--element", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--prime", action="store_true", help="prime roots instead of n-th roots")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("cover", help="fewest maximal cyclic subgroups covering the prime roots")
    _add_group_source(p)
    p.add_argument("--element", type=int, required=True)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("cliques", help="maximal cliques of P(G)")
    _add_group_source(p)
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("reconstruct", help="recover D(G) from an unlabeled power graph")
    p.add_argument("--graph", metavar="FILE", required=True, help="undirected edge-list file")
    p.add_argument("--expect-group", metavar="SPEC", help="check the result against D(SPEC)")
    p.add_argument("--shuffle", action="store_true", help="relabel the input at random first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE", help="digraph edge list; DOT goes next to it")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="isomorphic power graphs imply isomorphic directed power graphs")
    _add_sweep_options(p)
    p.add_argument("--roundtrip", action="store_true",
                   help="also reconstruct every p-group and cyclic group from relabeled power graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("twins", help="different groups with isomorphic power graphs")
    _add_sweep_options(p)
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("catalog", help="list the nilpotent catalog")
    _add_sweep_options(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(level=args.log_level, to_file=False if args.no_log_file else None)
    logger.debug("COMMAND %s", args.command)
    try:
        return args.func(args)
    except (PowerGraphError, ValueError, OSError) as e:
        logger.error("INPUT_ERROR command=%s: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
