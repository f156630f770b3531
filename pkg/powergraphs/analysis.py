"""
Neighborhood structure of power graphs and root counting in finite groups.

Closed neighborhoods, closed-twin classes and quotients work on any Graph;
root counts, maximal cyclic subgroups and covers work on the group itself.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Tuple

from sympy import isprime, totient

from .errors import PartitionMismatchError
from .groups import FiniteGroup
from .powergraph import DiGraph, Graph, bits, mask_of, power_graph


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EquivPartition:
    """Blocks of vertices with equal closed neighborhoods."""
    blocks: Tuple[FrozenSet[int], ...]
    block_of: Tuple[int, ...]

    @classmethod
    def from_blocks(cls, vertex_count: int, blocks) -> "EquivPartition":
        block_of = [-1] * vertex_count
        frozen = []
        for b, block in enumerate(blocks):
            frozen.append(frozenset(block))
            for v in block:
                if not 0 <= v < vertex_count or block_of[v] != -1:
                    raise PartitionMismatchError(f"vertex {v} is out of range or in two blocks")
                block_of[v] = b
        if -1 in block_of:
            raise PartitionMismatchError(f"vertex {block_of.index(-1)} is in no block")
        return cls(tuple(frozen), tuple(block_of))

    @property
    def vertex_count(self) -> int:
        return len(self.block_of)

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class ClassProfile:
    """Generator-set levels of one class: (i, phi(p^i)) for consecutive i."""
    prime: int
    levels: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        exps = [i for i, _ in self.levels]
        if not exps:
            raise ValueError("a class profile needs at least one level")
        if exps != list(range(exps[0], exps[0] + len(exps))):
            raise ValueError(f"profile exponents {exps} are not an interval")
        for i, size in self.levels:
            if size != _phi_prime_power(self.prime, i):
                raise ValueError(f"level {i} has size {size}, expected phi({self.prime}^{i})")

    @property
    def size(self) -> int:
        return sum(size for _, size in self.levels)

    @property
    def top(self) -> int:
        return self.levels[-1][0]


def _phi_prime_power(p: int, i: int) -> int:
    return int(totient(p ** i))


@dataclass(frozen=True)
class CyclicSubgroup:
    generator: int
    elements: FrozenSet[int]

    @property
    def mask(self) -> int:
        return mask_of(self.elements)


# ---------- neighborhoods ----------

def closed_mask(graph: Graph, v: int) -> int:
    return graph.adj[v] | 1 << v


def closed_neighborhood(graph: Graph, v: int) -> FrozenSet[int]:
    if not 0 <= v < graph.vertex_count:
        raise ValueError(f"vertex {v} out of range")
    return frozenset(bits(closed_mask(graph, v)))


def equivalence_classes(graph: Graph) -> EquivPartition:
    """Closed-twin classes, emitted in order of their smallest member."""
    index: Dict[int, int] = {}
    blocks: List[List[int]] = []
    for v in range(graph.vertex_count):
        key = closed_mask(graph, v)
        if key not in index:
            index[key] = len(blocks)
            blocks.append([])
        blocks[index[key]].append(v)
    return EquivPartition.from_blocks(graph.vertex_count, blocks)


def quotient_digraph(digraph: DiGraph, partition: EquivPartition) -> DiGraph:
    """Blocks as vertices; B->C iff some arc leaves B into C (B != C)."""
    if partition.vertex_count != digraph.vertex_count:
        raise PartitionMismatchError(
            f"partition covers {partition.vertex_count} vertices, digraph has {digraph.vertex_count}"
        )
    out = [0] * len(partition.blocks)
    for u, v in digraph.arcs():
        b, c = partition.block_of[u], partition.block_of[v]
        if b != c:
            out[b] |= 1 << c
    return DiGraph(len(partition.blocks), tuple(out))


def dominating_vertices(graph: Graph) -> FrozenSet[int]:
    full = (1 << graph.vertex_count) - 1
    return frozenset(v for v in range(graph.vertex_count) if closed_mask(graph, v) == full)


# ---------- cliques ----------

def maximal_cliques(graph: Graph) -> List[FrozenSet[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), sorted."""
    adj = graph.adj
    found: List[FrozenSet[int]] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(frozenset(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: (adj[u] & p).bit_count())
        for v in bits(p & ~adj[pivot]):
            expand(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if graph.vertex_count:
        expand(0, (1 << graph.vertex_count) - 1, 0)
    return sorted(found, key=lambda c: sorted(c))


def clique_number(graph: Graph) -> int:
    return max((len(c) for c in maximal_cliques(graph)), default=0)


# ---------- powers and roots ----------

def o_set(G: FiniteGroup, x: int) -> FrozenSet[int]:
    """{x^n : n = 2 .. max(2, o(x))}, one full period of exponents skipping n = 1."""
    G.check_element(x)
    powers = G.powers(x)
    o = len(powers)
    return frozenset(powers[n % o] for n in range(2, max(2, o) + 1))


def nth_roots(G: FiniteGroup, u: int, n: int) -> FrozenSet[int]:
    G.check_element(u)
    if n < 1:
        raise ValueError("root exponent must be positive")
    return frozenset(x for x in range(G.order) if G.power(x, n) == u)


def _has_prime_in_class(r: int, o: int) -> bool:
    # some prime q with q = r (mod o)
    return gcd(r, o) == 1 or isprime(r) or (r == 0 and isprime(o))


def prime_roots(G: FiniteGroup, u: int) -> FrozenSet[int]:
    """{x : x^q = u for some prime q}, decided from the residue of q mod o(x)."""
    G.check_element(u)
    roots = set()
    for x in range(G.order):
        powers = G.powers(x)
        if u in powers:
            if _has_prime_in_class(powers.index(u), len(powers)):
                roots.add(x)
    return frozenset(roots)


def prime_root_classes(G: FiniteGroup, u: int,
                       partition: Optional[EquivPartition] = None) -> List[FrozenSet[int]]:
    """Closed-twin classes of P(G) holding at least one prime root of u."""
    if partition is None:
        partition = equivalence_classes(power_graph(G))
    hit = sorted({partition.block_of[x] for x in prime_roots(G, u)})
    return [partition.blocks[b] for b in hit]


def maximal_cyclic_subgroups(G: FiniteGroup) -> List[CyclicSubgroup]:
    """Cyclic subgroups contained in no larger cyclic subgroup, by generator."""
    by_mask: Dict[int, int] = {}
    for x in range(G.order):
        m = mask_of(G.powers(x))
        by_mask.setdefault(m, x)
    masks = list(by_mask)
    maximal = []
    for m in masks:
        if not any(m != other and m & other == m for other in masks):
            maximal.append(CyclicSubgroup(by_mask[m], frozenset(bits(m))))
    return sorted(maximal, key=lambda c: c.generator)


def min_cyclic_cover_of_prime_roots(G: FiniteGroup, u: int) -> Tuple[int, List[CyclicSubgroup]]:
    """Fewest maximal cyclic subgroups whose union holds every prime root of u."""
    target = mask_of(prime_roots(G, u))
    if not target:
        return 0, []
    family = [c for c in maximal_cyclic_subgroups(G) if c.mask & target]
    cover = _exact_cover([c.mask for c in family], target)
    chosen = [family[i] for i in cover]
    logger.debug("COVER group=%s u=%s count=%s family=%s", G.name, u, len(chosen), len(family))
    return len(chosen), chosen


def _exact_cover(masks: List[int], target: int) -> List[int]:
    """Minimum number of masks covering target (branch and bound); indices ascending."""
    covering = {e: [i for i, m in enumerate(masks) if m >> e & 1] for e in bits(target)}
    best: List[Optional[List[int]]] = [None]
    largest = max((m & target).bit_count() for m in masks)

    def search(uncovered: int, chosen: List[int]) -> None:
        if not uncovered:
            if best[0] is None or len(chosen) < len(best[0]):
                best[0] = list(chosen)
            return
        lower = -(-uncovered.bit_count() // largest)
        if best[0] is not None and len(chosen) + lower >= len(best[0]):
            return
        # branch on the element with the fewest options left
        e = min(bits(uncovered), key=lambda v: (len(covering[v]), v))
        for i in covering[e]:
            chosen.append(i)
            search(uncovered & ~masks[i], chosen)
            chosen.pop()

    search(target, [])
    return sorted(best[0] or [])
