"""
Flat-file formats.

Edge list:  first line `n m kind` (kind is graph or digraph), then m lines `u v`.
Cayley:     first line n, then n rows of n products; row i lists i*0 .. i*(n-1).
Lines starting with '#' are comments in both formats.
"""

import logging
from typing import List, Optional, Tuple, Union

from . import config
from .errors import GraphFormatError, GroupOrderError
from .groups import FiniteGroup, from_cayley_table
from .powergraph import DiGraph, Graph


logger = logging.getLogger(__name__)

GRAPH = "graph"
DIGRAPH = "digraph"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def _ints(lineno: int, line: str, expected: Optional[int] = None) -> List[int]:
    try:
        values = [int(tok) for tok in line.split()]
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected integers, got {line!r}")
    if expected is not None and len(values) != expected:
        raise GraphFormatError(f"line {lineno}: expected {expected} values, got {len(values)}")
    return values


# ---------- edge lists ----------

def parse_edge_list(text: str, max_vertices: Optional[int] = None) -> Union[Graph, DiGraph]:
    limit = config.CLI_MAX_ORDER if max_vertices is None else max_vertices
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty edge-list file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[2] not in (GRAPH, DIGRAPH):
        raise GraphFormatError(f"line {lineno}: header must be `n m graph|digraph`")
    n, m = _ints(lineno, " ".join(parts[:2]), 2)
    kind = parts[2]
    if n < 0 or m < 0:
        raise GraphFormatError(f"line {lineno}: negative counts")
    if n > limit:
        raise GroupOrderError(n, limit, "graph")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges, file has {len(body)}")

    pairs = []
    seen = set()
    for lineno, line in body:
        u, v = _ints(lineno, line, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex out of range in {u} {v}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: loop at {u}")
        key = (u, v) if kind == DIGRAPH else (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        pairs.append((u, v))

    if kind == GRAPH:
        return Graph.from_edges(n, pairs)
    return DiGraph.from_arcs(n, pairs)


def read_edge_list(path: str, max_vertices: Optional[int] = None) -> Union[Graph, DiGraph]:
    with open(path, "r", encoding="utf-8") as f:
        graph = parse_edge_list(f.read(), max_vertices=max_vertices)
    logger.info("READ %s n=%s", path, graph.vertex_count)
    return graph


def format_edge_list(graph: Union[Graph, DiGraph]) -> str:
    if isinstance(graph, DiGraph):
        pairs = list(graph.arcs())
        kind = DIGRAPH
    else:
        pairs = list(graph.edges())
        kind = GRAPH
    lines = [f"{graph.vertex_count} {len(pairs)} {kind}"]
    lines.extend(f"{u} {v}" for u, v in pairs)
    return "\n".join(lines) + "\n"


# ---------- DOT ----------

def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_dot(graph: Union[Graph, DiGraph], name: str = "G") -> str:
    directed = isinstance(graph, DiGraph)
    head = "digraph" if directed else "graph"
    arrow = "->" if directed else "--"
    pairs = graph.arcs() if directed else graph.edges()
    lines = [f"{head} {_dot_quote(name)} {{"]
    for v in range(graph.vertex_count):
        label = str(v) if graph.labels is None else f"{v}: {graph.labels[v]}"
        lines.append(f"  {v} [label={_dot_quote(label)}];")
    lines.extend(f"  {u} {arrow} {v};" for u, v in pairs)
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------- Cayley tables ----------

def parse_cayley_text(text: str, *, trust: bool = False, name: str = "cayley",
                      max_order: Optional[int] = None) -> FiniteGroup:
    limit = config.CLI_MAX_ORDER if max_order is None else max_order
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty Cayley file")
    lineno, header = lines[0]
    (n,) = _ints(lineno, header, 1)
    if n > limit:
        raise GroupOrderError(n, limit)
    rows = [_ints(lineno, line) for lineno, line in lines[1:]]
    return from_cayley_table(n, rows, trust=trust, name=name, max_order=limit)


def read_cayley_file(path: str, *, trust: bool = False, max_order: Optional[int] = None) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as f:
        G = parse_cayley_text(f.read(), trust=trust, name=path, max_order=max_order)
    logger.info("READ cayley %s order=%s trust=%s", path, G.order, trust)
    return G


def format_cayley_table(G: FiniteGroup) -> str:
    lines = [f"# {G.name}", str(G.order)]
    lines.extend(" ".join(str(int(v)) for v in row) for row in G.table)
    return "\n".join(lines) + "\n"
