"""
Canonical forms and exact isomorphism tests for small graphs and digraphs.

The canonical labeling is computed in three steps:

1. twin reduction: closed twins (equal closed neighborhoods, mutual arcs) and
   open twins (equal open neighborhoods, no arcs between them) are modules, so
   each class is contracted into one colored node, repeatedly, until no twins
   are left. A node color records (kind, class size, member color).
2. equitable refinement of the colored quotient, cells kept in an order that
   depends only on the structure.
3. individualization and backtracking, keeping the lexicographically least
   relabeled quotient and pruning siblings that an automorphism already found
   maps onto an explored branch.

The quotient order is then expanded back to the original vertices and the
bytes are the relabeled adjacency matrix itself. Canonical bytes are an
internal format and may change between versions.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from . import config
from .errors import GraphTooLargeError
from .powergraph import DiGraph, Graph, bits, mask_of


logger = logging.getLogger(__name__)

_KIND_GRAPH = 0
_KIND_DIGRAPH = 1

_CLOSED = 1
_OPEN = 2

AnyGraph = Union[Graph, DiGraph]


@dataclass(frozen=True)
class CanonicalForm:
    """Relabeled adjacency serialization plus the labeling that produces it."""
    bytes: bytes
    labeling: Tuple[int, ...]   # labeling[v] = canonical position of v

    @property
    def inverse(self) -> Tuple[int, ...]:
        inv = [0] * len(self.labeling)
        for v, pos in enumerate(self.labeling):
            inv[pos] = v
        return tuple(inv)


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Optional[Tuple[int, ...]] = None   # witness[v] = image of v

    def __bool__(self) -> bool:
        return self.isomorphic


def _arcs_of(graph: AnyGraph) -> Tuple[List[int], List[int], int]:
    if isinstance(graph, DiGraph):
        return list(graph.out), list(graph.inn), _KIND_DIGRAPH
    return list(graph.adj), list(graph.adj), _KIND_GRAPH


# ---------- twin reduction ----------

@dataclass
class _Quotient:
    out: List[int]
    inn: List[int]
    colors: List[tuple]
    members: List[List[int]]


def _contract(q: _Quotient, kind: int) -> bool:
    """Contract every twin class of the given kind; False if there is none."""
    k = len(q.out)
    groups: Dict[tuple, List[int]] = {}
    for v in range(k):
        if kind == _CLOSED:
            key = (q.colors[v], q.out[v] | 1 << v, q.inn[v] | 1 << v)
        else:
            key = (q.colors[v], q.out[v], q.inn[v])
        groups.setdefault(key, []).append(v)
    if all(len(g) == 1 for g in groups.values()):
        return False

    # new nodes in order of their smallest old node
    classes = sorted(groups.values(), key=lambda g: g[0])
    node_of = [0] * k
    for new, cls in enumerate(classes):
        for v in cls:
            node_of[v] = new

    def remap(mask: int, self_node: int) -> int:
        return mask_of(node_of[w] for w in bits(mask)) & ~(1 << self_node)

    out, inn, colors, members = [], [], [], []
    for new, cls in enumerate(classes):
        rep = cls[0]
        out.append(remap(q.out[rep], new))
        inn.append(remap(q.inn[rep], new))
        if len(cls) == 1:
            colors.append(q.colors[rep])
        else:
            colors.append((kind, len(cls), q.colors[rep]))
        members.append([v for old in cls for v in q.members[old]])
    q.out, q.inn, q.colors, q.members = out, inn, colors, members
    return True


def _reduce(out: List[int], inn: List[int], collapse: bool) -> _Quotient:
    n = len(out)
    q = _Quotient(list(out), list(inn), [()] * n, [[v] for v in range(n)])
    if not collapse:
        return q
    while _contract(q, _CLOSED) or _contract(q, _OPEN):
        pass
    return q


# ---------- refinement and search ----------

def _refine(cells: List[List[int]], out: List[int], inn: List[int]) -> List[List[int]]:
    while True:
        masks = [mask_of(c) for c in cells]
        refined: List[List[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: Dict[tuple, List[int]] = {}
            for v in cell:
                sig = tuple(((out[v] & m).bit_count(), (inn[v] & m).bit_count()) for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                split = True
            refined.extend(groups[sig] for sig in sorted(groups))
        cells = refined
        if not split:
            return cells


class _Search:
    def __init__(self, q: _Quotient):
        self.out = q.out
        self.inn = q.inn
        self.colors = q.colors
        self.best_key: Optional[tuple] = None
        self.best_order: Optional[List[int]] = None
        self.first_key: Optional[tuple] = None
        self.first_order: Optional[List[int]] = None
        self.automorphisms: List[Tuple[int, ...]] = []
        self.leaves = 0

    def run(self) -> List[int]:
        k = len(self.out)
        if k == 0:
            return []
        by_color: Dict[tuple, List[int]] = {}
        for v in range(k):
            by_color.setdefault(self.colors[v], []).append(v)
        cells = [by_color[c] for c in sorted(by_color)]
        self._explore(_refine(cells, self.out, self.inn), [])
        return self.best_order

    def _leaf(self, order: List[int]) -> None:
        self.leaves += 1
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        key = tuple(mask_of(pos[w] for w in bits(self.out[v])) for v in order)
        if self.first_key is None:
            self.first_key, self.first_order = key, order
        if self.best_key is None or key < self.best_key:
            self.best_key, self.best_order = key, order
            return
        for ref_key, ref_order in ((self.best_key, self.best_order), (self.first_key, self.first_order)):
            if key == ref_key:
                gamma = [0] * len(order)
                for v, w in zip(order, ref_order):
                    gamma[v] = w
                self.automorphisms.append(tuple(gamma))
                return

    def _orbit_roots(self, path: List[int]) -> List[int]:
        k = len(self.out)
        parent = list(range(k))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for gamma in self.automorphisms:
            if all(gamma[v] == v for v in path):
                for v in range(k):
                    a, b = find(v), find(gamma[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(k)]

    def _explore(self, cells: List[List[int]], path: List[int]) -> None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self._leaf([c[0] for c in cells])
            return
        cell = cells[target]
        explored: List[int] = []
        for v in cell:
            if explored and self.automorphisms:
                # orbits grow as automorphisms accumulate, so recompute
                roots = self._orbit_roots(path)
                if roots[v] in {roots[u] for u in explored}:
                    continue
            explored.append(v)
            split = cells[:target] + [[v], [w for w in cell if w != v]] + cells[target + 1:]
            self._explore(_refine(split, self.out, self.inn), path + [v])


def canonical_form(graph: AnyGraph, *, collapse_twins: bool = True,
                   max_vertices: Optional[int] = None) -> CanonicalForm:
    """Deterministic canonical labeling; equal bytes iff isomorphic."""
    limit = config.CANON_MAX_VERTICES if max_vertices is None else max_vertices
    n = graph.vertex_count
    if n > limit:
        raise GraphTooLargeError(n, limit)
    out, inn, kind = _arcs_of(graph)

    q = _reduce(out, inn, collapse_twins)
    search = _Search(q)
    order = search.run()

    labeling = [0] * n
    position = 0
    for node in order:
        for v in q.members[node]:
            labeling[v] = position
            position += 1

    inverse = [0] * n
    for v, p in enumerate(labeling):
        inverse[p] = v
    width = (n + 7) // 8
    body = b"".join(
        mask_of(labeling[w] for w in bits(out[v])).to_bytes(width, "big") for v in inverse
    )
    logger.debug("CANON n=%s quotient=%s leaves=%s automorphisms=%s",
                 n, len(q.out), search.leaves, len(search.automorphisms))
    return CanonicalForm(bytes([kind]) + n.to_bytes(4, "big") + body, tuple(labeling))


def _witness(c1: CanonicalForm, c2: CanonicalForm) -> Tuple[int, ...]:
    inv2 = c2.inverse
    return tuple(inv2[p] for p in c1.labeling)


def are_isomorphic(g1: Graph, g2: Graph, **kwargs) -> IsoResult:
    """Isomorphism test with a witness bijection (witness[v] is the image of v)."""
    if g1.vertex_count != g2.vertex_count or g1.edge_count() != g2.edge_count():
        return IsoResult(False)
    c1 = canonical_form(g1, **kwargs)
    c2 = canonical_form(g2, **kwargs)
    if c1.bytes != c2.bytes:
        return IsoResult(False)
    return IsoResult(True, _witness(c1, c2))


def digraph_isomorphism(d1: DiGraph, d2: DiGraph, **kwargs) -> IsoResult:
    if d1.vertex_count != d2.vertex_count or d1.arc_count() != d2.arc_count():
        return IsoResult(False)
    c1 = canonical_form(d1, **kwargs)
    c2 = canonical_form(d2, **kwargs)
    if c1.bytes != c2.bytes:
        return IsoResult(False)
    return IsoResult(True, _witness(c1, c2))


def are_digraph_isomorphic(d1: DiGraph, d2: DiGraph, **kwargs) -> bool:
    return digraph_isomorphism(d1, d2, **kwargs).isomorphic
