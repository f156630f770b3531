"""
The nilpotent catalog and the sweeps run over it.

A catalog entry is one group expressible in the atom grammar, in normal form:
the abelian part in invariant-factor form (ascending, each factor divides the
next) followed by the non-abelian atoms sorted by kind and parameter. Every
entry carries its power graph, directed power graph and canonical bytes, so
pairwise comparisons reduce to bucketing by bytes.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from sympy import factorint, primefactors
from sympy.utilities.iterables import partitions

from . import config
from .errors import GroupOrderError
from .groups import (
    CYCLIC,
    DIHEDRAL,
    HEISENBERG,
    QUATERNION,
    Atom,
    FiniteGroup,
    GroupSpec,
    realize,
)
from .isocheck import CanonicalForm, canonical_form
from .powergraph import DiGraph, Graph, directed_power_graph


logger = logging.getLogger(__name__)


# ---------- normal form ----------

def _exponent_partitions(e: int) -> List[Tuple[int, ...]]:
    """Partitions of e, parts descending."""
    if e == 0:
        return [()]
    out = []
    for part in partitions(e):
        out.append(tuple(sorted((k for k, m in part.items() for _ in range(m)), reverse=True)))
    return sorted(out, reverse=True)


def _assemble(abelian: Dict[int, List[int]], nonabelian: List[Atom]) -> GroupSpec:
    """Invariant factors from per-prime exponent lists, then the sorted non-abelian atoms."""
    width = max((len(exps) for exps in abelian.values()), default=0)
    factors = []
    for j in range(width):
        f = 1
        for p, exps in abelian.items():
            ordered = sorted(exps, reverse=True)
            if j < len(ordered):
                f *= p ** ordered[j]
        factors.append(f)
    terms = [Atom(CYCLIC, f) for f in sorted(factors) if f > 1]
    terms.extend(sorted(nonabelian))
    if not terms:
        terms = [Atom(CYCLIC, 1)]
    return GroupSpec(tuple(terms))


def normalize_spec(spec: GroupSpec) -> GroupSpec:
    """Rewrite a spec into catalog normal form (D4 becomes C2xC2)."""
    abelian: Dict[int, List[int]] = {}
    nonabelian: List[Atom] = []
    for atom in spec.terms:
        if atom.kind == CYCLIC:
            for p, e in factorint(atom.param).items():
                abelian.setdefault(int(p), []).append(int(e))
        elif atom.kind == DIHEDRAL and atom.param == 4:
            abelian.setdefault(2, []).extend([1, 1])
        else:
            nonabelian.append(atom)
    return _assemble(abelian, nonabelian)


def _nonabelian_atoms(p: int, e: int) -> List[Tuple[Atom, int]]:
    """Non-abelian atoms that are p-groups of order at most p^e, with their exponent."""
    if p == 2:
        return [(Atom(kind, 2 ** k), k) for k in range(3, e + 1) for kind in (DIHEDRAL, QUATERNION)]
    if e >= 3:
        return [(Atom(HEISENBERG, p), 3)]
    return []


def _nonabelian_multisets(atoms: List[Tuple[Atom, int]], budget: int,
                          start: int = 0) -> List[Tuple[List[Atom], int]]:
    """All multisets of atoms with total exponent at most budget."""
    found: List[Tuple[List[Atom], int]] = [([], 0)]
    for i in range(start, len(atoms)):
        atom, k = atoms[i]
        if k > budget:
            continue
        for rest, used in _nonabelian_multisets(atoms, budget - k, i):
            found.append(([atom] + rest, k + used))
    return found


def _p_parts(p: int, e: int) -> List[Tuple[List[int], List[Atom]]]:
    parts = []
    for atoms, used in _nonabelian_multisets(_nonabelian_atoms(p, e), e):
        for exps in _exponent_partitions(e - used):
            parts.append((list(exps), atoms))
    return parts


def specs_of_order(n: int) -> List[GroupSpec]:
    """Every catalog group of order n, normal form, sorted."""
    if n < 1:
        raise ValueError("group order must be positive")
    combos: List[Tuple[Dict[int, List[int]], List[Atom]]] = [({}, [])]
    for p, e in sorted(factorint(n).items()):
        p, e = int(p), int(e)
        combos = [
            ({**ab, p: exps}, na + atoms)
            for ab, na in combos
            for exps, atoms in _p_parts(p, e)
        ]
    specs = {str(s): s for s in (_assemble(ab, na) for ab, na in combos)}
    return sorted(specs.values(), key=_spec_key)


def _spec_key(spec: GroupSpec) -> Tuple[int, int, str]:
    return spec.order, len(spec.terms), str(spec)


def enumerate_specs(max_order: int) -> List[GroupSpec]:
    specs: List[GroupSpec] = []
    for n in range(1, max_order + 1):
        specs.extend(specs_of_order(n))
    return sorted(specs, key=_spec_key)


# ---------- entries ----------

@dataclass(frozen=True, eq=False)
class CatalogEntry:
    spec: GroupSpec
    group: FiniteGroup
    power_graph: Graph
    directed: DiGraph
    canonical: CanonicalForm

    @classmethod
    def build(cls, spec: GroupSpec) -> "CatalogEntry":
        G = realize(spec)
        D = directed_power_graph(G)
        P = D.underlying()
        return cls(spec, G, P, D, canonical_form(P))

    @property
    def name(self) -> str:
        return str(self.spec)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def is_cyclic(self) -> bool:
        return len(self.spec.terms) == 1 and self.spec.terms[0].kind == CYCLIC

    @property
    def is_p_group(self) -> bool:
        return len(primefactors(self.order)) == 1

    @cached_property
    def directed_canonical(self) -> CanonicalForm:
        return canonical_form(self.directed)

    @cached_property
    def order_census(self) -> Tuple[int, ...]:
        return tuple(self.group.order_census())

    def is_consistent(self) -> bool:
        """Derived fields rebuild bit for bit from the group spec."""
        fresh = CatalogEntry.build(self.spec)
        return (
            bool((fresh.group.table == self.group.table).all())
            and fresh.power_graph == self.power_graph
            and fresh.directed == self.directed
            and fresh.canonical == self.canonical
        )


def build_catalog(max_order: int, limit: Optional[int] = None) -> List[CatalogEntry]:
    bound = config.CANON_MAX_VERTICES if limit is None else limit
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if max_order > bound:
        raise GroupOrderError(max_order, bound, "catalog")
    started = time.perf_counter()
    entries = [CatalogEntry.build(spec) for spec in enumerate_specs(max_order)]
    logger.info("CATALOG built entries=%s max_order=%s elapsed=%.2fs",
                len(entries), max_order, time.perf_counter() - started)
    return entries


# ---------- sweeps ----------

@dataclass(frozen=True)
class TwinPair:
    first: str
    second: str
    certificate: str

    @property
    def pair(self) -> Tuple[str, str]:
        return self.first, self.second


@dataclass
class VerificationReport:
    pairs_tested: int = 0
    pg_isomorphic_pairs: List[Tuple[str, str]] = field(default_factory=list)
    violations: List[Tuple[str, str]] = field(default_factory=list)
    twins: List[TwinPair] = field(default_factory=list)
    uncertified: List[Tuple[str, str]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations


def non_isomorphism_certificate(a: CatalogEntry, b: CatalogEntry) -> Optional[str]:
    """A cheap reason the two groups differ, or None."""
    if a.order_census != b.order_census:
        return "element-order multisets differ"
    if a.group.is_abelian != b.group.is_abelian:
        abelian = a.name if a.group.is_abelian else b.name
        return f"only {abelian} is abelian"
    return None


def _pg_isomorphic_pairs(catalog: List[CatalogEntry]) -> List[Tuple[int, int]]:
    buckets: Dict[bytes, List[int]] = {}
    for i, entry in enumerate(catalog):
        buckets.setdefault(entry.canonical.bytes, []).append(i)
    pairs = [pair for members in buckets.values() for pair in combinations(members, 2)]
    return sorted(pairs)


def run_theorem_suite(catalog: List[CatalogEntry]) -> VerificationReport:
    """Every pair with isomorphic power graphs must have isomorphic directed power graphs."""
    started = time.perf_counter()
    report = VerificationReport(pairs_tested=len(catalog) * (len(catalog) - 1) // 2)
    for i, j in _pg_isomorphic_pairs(catalog):
        a, b = catalog[i], catalog[j]
        pair = (a.name, b.name)
        report.pg_isomorphic_pairs.append(pair)
        if a.directed_canonical.bytes != b.directed_canonical.bytes:
            logger.warning("VIOLATION %s ~ %s: power graphs isomorphic, directed ones not", *pair)
            report.violations.append(pair)
        certificate = non_isomorphism_certificate(a, b)
        if certificate is None:
            report.uncertified.append(pair)
        else:
            report.twins.append(TwinPair(a.name, b.name, certificate))
    report.elapsed = time.perf_counter() - started
    logger.info("VERIFY pairs=%s pg_isomorphic=%s violations=%s twins=%s elapsed=%.2fs",
                report.pairs_tested, len(report.pg_isomorphic_pairs), len(report.violations),
                len(report.twins), report.elapsed)
    return report


def find_powergraph_twins(catalog: List[CatalogEntry]) -> List[Tuple[str, str]]:
    """Pairs of certifiably different groups whose power graphs are isomorphic."""
    twins = []
    for i, j in _pg_isomorphic_pairs(catalog):
        if non_isomorphism_certificate(catalog[i], catalog[j]) is not None:
            twins.append((catalog[i].name, catalog[j].name))
    return twins
