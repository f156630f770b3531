"""
Simple graphs and digraphs over vertex indices, and the power-graph builders.

Adjacency is kept as one Python integer per vertex used as a bitset
(bit v of adj[u] set iff u ~ v), so neighborhood unions, intersections and
containment tests are single integer operations.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .groups import FiniteGroup


logger = logging.getLogger(__name__)

POWER = "power"
ROOT = "root"


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range for {n} vertices")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: irreflexive, symmetric."""
    vertex_count: int
    adj: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "adj", tuple(self.adj))
        if len(self.adj) != self.vertex_count:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.vertex_count) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {u} has a neighbor out of range")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in bits(row):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"edge {u}-{v} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]],
                   labels: Optional[Tuple[str, ...]] = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), labels)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Each edge once, as (u, v) with u < v."""
        for u, row in enumerate(self.adj):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_complete(self) -> bool:
        return self.edge_count() == self.vertex_count * (self.vertex_count - 1) // 2

    def permuted(self, perm: Sequence[int]) -> "Graph":
        """Relabel vertex v as perm[v]."""
        adj = [0] * self.vertex_count
        for u, row in enumerate(self.adj):
            adj[perm[u]] = mask_of(perm[v] for v in bits(row))
        return Graph(self.vertex_count, tuple(adj))


@dataclass(frozen=True)
class DiGraph:
    """Simple digraph: no loops, but x->y and y->x may both be present."""
    vertex_count: int
    out: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "out", tuple(self.out))
        if len(self.out) != self.vertex_count:
            raise ValueError("out-arc length does not match vertex count")
        full = (1 << self.vertex_count) - 1
        for u, row in enumerate(self.out):
            if row & ~full:
                raise ValueError(f"vertex {u} has an arc out of range")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]],
                  labels: Optional[Tuple[str, ...]] = None) -> "DiGraph":
        out = [0] * n
        for u, v in arcs:
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            out[u] |= 1 << v
        return cls(n, tuple(out), labels)

    @cached_property
    def inn(self) -> Tuple[int, ...]:
        inn = [0] * self.vertex_count
        for u, row in enumerate(self.out):
            for v in bits(row):
                inn[v] |= 1 << u
        return tuple(inn)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def arcs(self) -> Iterator[Tuple[int, int]]:
        for u, row in enumerate(self.out):
            for v in bits(row):
                yield u, v

    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.inn[v].bit_count()

    def underlying(self) -> Graph:
        """Symmetrize and keep it loop-free."""
        return Graph(self.vertex_count,
                     tuple(o | i for o, i in zip(self.out, self.inn)),
                     self.labels)

    def reversed(self) -> "DiGraph":
        return DiGraph(self.vertex_count, self.inn, self.labels)

    def permuted(self, perm: Sequence[int]) -> "DiGraph":
        out = [0] * self.vertex_count
        for u, row in enumerate(self.out):
            out[perm[u]] = mask_of(perm[v] for v in bits(row))
        return DiGraph(self.vertex_count, tuple(out))


def directed_power_graph(G: FiniteGroup, convention: str = POWER) -> DiGraph:
    """
    x->y iff y != x and y is a power of x.

    convention="root" gives the opposite reading (x->y iff x is a power of y),
    which is the same digraph with every arc reversed.
    """
    if convention not in (POWER, ROOT):
        raise ValueError(f"unknown arc convention {convention!r}")
    out = []
    for x in range(G.order):
        out.append(mask_of(G.powers(x)) & ~(1 << x))
    D = DiGraph(G.order, tuple(out), G.labels)
    logger.debug("DPG built group=%s arcs=%s", G.name, D.arc_count())
    return D if convention == POWER else D.reversed()


def power_graph(G: FiniteGroup) -> Graph:
    """Underlying simple graph of the directed power graph."""
    return directed_power_graph(G).underlying()
