"""Brute-force oracles shared by the test suites."""

import random
from functools import lru_cache
from itertools import combinations, permutations
from typing import FrozenSet, List, Optional, Set, Tuple

from sympy import primerange

from powergraphs.groups import FiniteGroup, from_cayley_table
from powergraphs.powergraph import DiGraph, Graph


def powers_by_multiplication(G: FiniteGroup, x: int) -> Set[int]:
    seen = {0}
    cur = x
    for _ in range(G.order + 1):
        seen.add(cur)
        cur = G.mul(cur, x)
    return seen


def dpg_arcs(G: FiniteGroup) -> Set[Tuple[int, int]]:
    return {(x, y) for x in range(G.order) for y in powers_by_multiplication(G, x) if y != x}


def pg_edges(G: FiniteGroup) -> Set[Tuple[int, int]]:
    return {(min(x, y), max(x, y)) for x, y in dpg_arcs(G)}


@lru_cache(maxsize=8)
def _prime_powers(G: FiniteGroup) -> Tuple[FrozenSet[int], ...]:
    """x -> {x^q : q prime, q <= |G|^2 + 4|G|}."""
    bound = G.order ** 2 + 4 * G.order
    primes = list(primerange(2, bound + 1))
    return tuple(frozenset(G.power(x, q) for q in primes) for x in range(G.order))


def prime_roots_by_search(G: FiniteGroup, u: int) -> FrozenSet[int]:
    images = _prime_powers(G)
    return frozenset(x for x in range(G.order) if u in images[x])


def min_cover_by_search(masks: List[int], target: int) -> int:
    # a target element inside exactly one mask forces that mask into every cover
    forced = set()
    for v in range(target.bit_length()):
        if target >> v & 1:
            holders = [i for i, m in enumerate(masks) if m >> v & 1]
            if len(holders) == 1:
                forced.add(holders[0])
    covered = 0
    for i in forced:
        covered |= masks[i]
    rest = [m for i, m in enumerate(masks) if i not in forced]
    left = target & ~covered
    for k in range(len(rest) + 1):
        for combo in combinations(rest, k):
            union = 0
            for m in combo:
                union |= m
            if union & left == left:
                return len(forced) + k
    raise AssertionError("family does not cover the target")


def _graph_rows(g) -> Tuple[int, ...]:
    return g.out if isinstance(g, DiGraph) else g.adj


def isomorphic_by_search(g1, g2) -> bool:
    if g1.vertex_count != g2.vertex_count:
        return False
    rows2 = _graph_rows(g2)
    for perm in permutations(range(g1.vertex_count)):
        if _graph_rows(g1.permuted(perm)) == rows2:
            return True
    return False


def random_perm(n: int, rng: random.Random) -> List[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def random_graph(n: int, density: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return Graph.from_edges(n, edges)


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def s3_group() -> FiniteGroup:
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return from_cayley_table(6, table, name="S3")


def find_element_of_order(G: FiniteGroup, order: int) -> Optional[int]:
    return next((x for x in range(G.order) if G.orders[x] == order), None)
