"""
Recover the directed power graph from an unlabeled power graph of a finite
nilpotent group.

Cases are tried in order and the first that applies wins:

    A  complete graph on p^k vertices      -> D(C_{p^k})
    B  isomorphic to P(C_n)                -> D(C_n) through the witness
    C  n = p^k, neighborhood containment   -> orient classes, split levels
    D  catalog group with isomorphic P(G)  -> D(G) through the witness

Case C is the p-group rule: for adjacent x, y in different closed-twin
classes, x->y iff N[x] is a proper subset of N[y]. Inside a class the
vertices form generator sets of a chain of cyclic subgroups, whose sizes
phi(p^i) over an interval of exponents follow from the class size and the
size of its down-set.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np
from sympy import factorint

from . import config
from .analysis import (
    ClassProfile,
    EquivPartition,
    dominating_vertices,
    equivalence_classes,
)
from .catalog import specs_of_order
from .errors import GroupOrderError, NotANilpotentPowerGraphError
from .groups import Cyclic, FiniteGroup, GroupSpec, realize
from .isocheck import are_digraph_isomorphic, are_isomorphic
from .powergraph import DiGraph, Graph, bits, directed_power_graph, mask_of, power_graph


logger = logging.getLogger(__name__)


class ReconstructionCase(str, enum.Enum):
    COMPLETE_PRIME_POWER = "complete_prime_power"
    CYCLIC_MATCH = "cyclic_match"
    P_GROUP_CONTAINMENT = "p_group_containment"
    CATALOG_FALLBACK = "catalog_fallback"


@dataclass
class ReconstructionReport:
    digraph: DiGraph
    case_used: ReconstructionCase
    identity_class: FrozenSet[int]
    partition: EquivPartition
    class_profiles: Dict[int, ClassProfile] = field(default_factory=dict)
    matched_spec: Optional[str] = None
    notes: List[str] = field(default_factory=list)


def _prime_power(n: int) -> Optional[Tuple[int, int]]:
    if n < 2:
        return None
    factors = factorint(n)
    if len(factors) != 1:
        return None
    ((p, k),) = factors.items()
    return int(p), int(k)


def _exponent_of(value: int, p: int) -> Optional[int]:
    """b with p^b == value, or None."""
    b = 0
    while value > 1 and value % p == 0:
        value //= p
        b += 1
    return b if value == 1 else None


def _inverse(perm) -> List[int]:
    inv = [0] * len(perm)
    for v, w in enumerate(perm):
        inv[w] = v
    return inv


def _transport(D: DiGraph, witness) -> DiGraph:
    """D lives on witness images; pull it back onto the input vertices."""
    return D.permuted(_inverse(witness))


def _is_transitive(D: DiGraph) -> bool:
    for u in range(D.vertex_count):
        reach = D.out[u] | 1 << u
        for v in bits(D.out[u]):
            if D.out[v] & ~reach:
                return False
    return True


# ---------- case C ----------

def _profile_for(block: FrozenSet[int], down_size: int, p: int) -> Optional[ClassProfile]:
    b = _exponent_of(down_size, p)
    if b is None:
        return None
    s = len(block)
    if s == down_size:
        a = 0
    else:
        rest = _exponent_of(down_size - s, p)
        if rest is None:
            return None
        a = rest + 1
        if not 1 <= a <= b:
            return None
    levels = tuple((i, 1 if i == 0 else p ** i - p ** (i - 1)) for i in range(a, b + 1))
    try:
        return ClassProfile(p, levels)
    except ValueError:
        return None


def _containment_digraph(graph: Graph, partition: EquivPartition, p: int,
                         notes: List[str]) -> Optional[Tuple[DiGraph, Dict[int, ClassProfile]]]:
    blocks = partition.blocks
    nbhd = [graph.adj[min(block)] | 1 << min(block) for block in blocks]
    block_mask = [mask_of(block) for block in blocks]

    # every adjacent pair of classes must be strictly nested
    above: List[int] = [0] * len(blocks)   # bit c set iff N[b] strictly inside N[c]
    for b in range(len(blocks)):
        for c in range(b + 1, len(blocks)):
            if not graph.has_edge(min(blocks[b]), min(blocks[c])):
                continue
            common = nbhd[b] & nbhd[c]
            if common == nbhd[b]:
                above[b] |= 1 << c
            elif common == nbhd[c]:
                above[c] |= 1 << b
            else:
                notes.append(f"classes {b} and {c} are adjacent but not nested")
                return None

    profiles: Dict[int, ClassProfile] = {}
    out = [0] * graph.vertex_count
    for b, block in enumerate(blocks):
        down = block_mask[b]
        for c in bits(above[b]):
            down |= block_mask[c]
        profile = _profile_for(block, down.bit_count(), p)
        if profile is None:
            notes.append(f"class {b} of size {len(block)} has no level split under p={p}")
            return None
        profiles[b] = profile

        members = sorted(block)
        levels: List[List[int]] = []
        start = 0
        for _, size in profile.levels:
            levels.append(members[start:start + size])
            start += size

        below = 0
        for lower in levels:
            lower_mask = mask_of(lower)
            for v in lower:
                out[v] |= lower_mask & ~(1 << v)
                out[v] |= below
            below |= lower_mask
        for c in bits(above[b]):
            for v in block:
                out[v] |= block_mask[c]

    D = DiGraph(graph.vertex_count, tuple(out), graph.labels)
    if not _is_transitive(D):
        notes.append("containment orientation is not transitive")
        return None
    if D.underlying() != graph:
        notes.append("containment orientation does not cover the input edges")
        return None
    return D, profiles


# ---------- entry points ----------

def reconstruct_digraph(graph: Graph, max_order: Optional[int] = None) -> ReconstructionReport:
    """Directed power graph (up to isomorphism) of any nilpotent group with this power graph."""
    limit = config.CLI_MAX_ORDER if max_order is None else max_order
    n = graph.vertex_count
    if n == 0:
        raise NotANilpotentPowerGraphError("the empty graph is not a power graph")
    if n > limit:
        raise GroupOrderError(n, limit, "power graph")

    partition = equivalence_classes(graph)
    identity_class = dominating_vertices(graph)
    if not identity_class:
        raise NotANilpotentPowerGraphError("no dominating vertex, so no vertex can be the identity")
    notes: List[str] = []

    def finish(D: DiGraph, case: ReconstructionCase, **extra) -> ReconstructionReport:
        logger.info("RECONSTRUCT case=%s n=%s arcs=%s", case.value, n, D.arc_count())
        return ReconstructionReport(D, case, identity_class, partition, notes=notes, **extra)

    pp = _prime_power(n)

    # A
    if graph.is_complete():
        if n == 1:
            return finish(DiGraph(1, (0,)), ReconstructionCase.COMPLETE_PRIME_POWER,
                          matched_spec="C1")
        if pp is None:
            raise NotANilpotentPowerGraphError(
                f"complete graph on {n} vertices, and {n} is not a prime power"
            )
        p, k = pp
        profile = ClassProfile(p, tuple((i, 1 if i == 0 else p ** i - p ** (i - 1))
                                        for i in range(k + 1)))
        cyclic = realize(GroupSpec((Cyclic(n),)), max_order=limit)
        D = DiGraph(n, directed_power_graph(cyclic).out, graph.labels)
        return finish(D, ReconstructionCase.COMPLETE_PRIME_POWER,
                      class_profiles={0: profile}, matched_spec=f"C{n}")
    notes.append("not complete")

    # B
    cyclic = realize(GroupSpec((Cyclic(n),)), max_order=limit)
    match = are_isomorphic(graph, power_graph(cyclic))
    if match:
        D = _transport(directed_power_graph(cyclic), match.witness)
        return finish(D, ReconstructionCase.CYCLIC_MATCH, matched_spec=f"C{n}")
    notes.append(f"not isomorphic to P(C{n})")

    # C
    if pp is not None:
        found = _containment_digraph(graph, partition, pp[0], notes)
        if found is not None:
            D, profiles = found
            return finish(D, ReconstructionCase.P_GROUP_CONTAINMENT, class_profiles=profiles)
    else:
        notes.append(f"{n} is not a prime power, containment rule skipped")

    # D
    for spec in specs_of_order(n):
        G = realize(spec, max_order=limit)
        match = are_isomorphic(graph, power_graph(G))
        if match:
            D = _transport(directed_power_graph(G), match.witness)
            return finish(D, ReconstructionCase.CATALOG_FALLBACK, matched_spec=str(spec))
        logger.debug("RECONSTRUCT catalog miss spec=%s", spec)
    raise NotANilpotentPowerGraphError(
        f"no reconstruction case applies to this graph on {n} vertices: " + "; ".join(notes)
    )


def verify_reconstruction(d_true: DiGraph, d_rec: DiGraph) -> bool:
    if d_true.vertex_count != d_rec.vertex_count:
        return False
    return are_digraph_isomorphic(d_true, d_rec)


def round_trip(G: FiniteGroup, seed: Optional[int] = None,
               max_order: Optional[int] = None) -> Tuple[bool, ReconstructionReport]:
    """Reconstruct from P(G), relabeled at random when a seed is given, and compare with D(G)."""
    graph = power_graph(G)
    if seed is not None:
        perm = [int(v) for v in np.random.default_rng(seed).permutation(G.order)]
        graph = graph.permuted(perm)
    report = reconstruct_digraph(graph, max_order=max_order)
    ok = verify_reconstruction(directed_power_graph(G), report.digraph)
    logger.debug("ROUNDTRIP group=%s seed=%s case=%s ok=%s", G.name, seed, report.case_used.value, ok)
    return ok, report


@dataclass(frozen=True)
class RoundTripFailure:
    spec: str
    seed: Optional[int]
    case_used: Optional[str]
    reason: str


def round_trip_suite(entries, seed: int = 0, rounds: int = 10) -> List[RoundTripFailure]:
    """Round trips for every p-group and cyclic entry: once as built, then `rounds` relabelings."""
    failures: List[RoundTripFailure] = []
    targets = [e for e in entries if e.is_p_group or e.is_cyclic]
    for entry in targets:
        seeds = [None] + [seed * 1000 + r for r in range(rounds)]
        for s in seeds:
            try:
                ok, report = round_trip(entry.group, seed=s)
            except NotANilpotentPowerGraphError as exc:
                failures.append(RoundTripFailure(entry.name, s, None, str(exc)))
                continue
            if not ok:
                failures.append(RoundTripFailure(entry.name, s, report.case_used.value,
                                                 "reconstructed digraph is not isomorphic"))
    logger.info("ROUNDTRIP groups=%s rounds=%s failures=%s", len(targets), rounds, len(failures))
    return failures
