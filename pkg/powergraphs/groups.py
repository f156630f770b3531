"""
Finite groups as Cayley tables.

Elements are the indices 0..n-1 and the identity is always index 0. Catalog
families (cyclic, generalized quaternion, dihedral 2-groups, Heisenberg groups
mod an odd prime) and their direct products are built directly as tables.
"""

import logging
import re
from dataclasses import dataclass, replace
from functools import cached_property, reduce
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from . import config
from .errors import (
    AssociativityError,
    CayleyTableError,
    ElementRangeError,
    EntryRangeError,
    GroupOrderError,
    IdentityLawError,
    MissingInverseError,
    NonSquareTableError,
    SpecRangeError,
    SpecSyntaxError,
)


logger = logging.getLogger(__name__)

IDENTITY = 0

CYCLIC = "C"
QUATERNION = "Q"
DIHEDRAL = "D"
HEISENBERG = "H"

_ATOM_RE = re.compile(r"([A-Za-z])(\d+)")


def _is_power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


@dataclass(frozen=True, order=True)
class Atom:
    """One direct factor of a catalog group, e.g. C12 or Q8."""
    kind: str
    param: int

    def __post_init__(self):
        _check_atom(self.kind, self.param)

    @property
    def order(self) -> int:
        if self.kind == HEISENBERG:
            return self.param ** 3
        return self.param

    @property
    def is_abelian(self) -> bool:
        if self.kind == CYCLIC:
            return True
        # D4 is the Klein four-group
        return self.kind == DIHEDRAL and self.param == 4

    def __str__(self) -> str:
        return f"{self.kind}{self.param}"


def _check_atom(kind: str, param: int) -> None:
    label = f"{kind}{param}"
    if kind == CYCLIC:
        if param < 1:
            raise SpecRangeError("cyclic order must be at least 1", label)
    elif kind == QUATERNION:
        if not (_is_power_of_two(param) and param >= 8):
            raise SpecRangeError("quaternion order must be 2^k with k >= 3", label)
    elif kind == DIHEDRAL:
        if not (_is_power_of_two(param) and param >= 4):
            raise SpecRangeError("dihedral order must be 2^k with k >= 2", label)
    elif kind == HEISENBERG:
        if param == 2:
            raise SpecRangeError("Heisenberg group mod 2 is D8, use D8 instead", label)
        if not isprime(param):
            raise SpecRangeError("Heisenberg parameter must be an odd prime", label)
    else:
        raise SpecRangeError(f"unknown atom kind {kind!r}", label)


def Cyclic(n: int) -> Atom:
    return Atom(CYCLIC, n)


def Quaternion(order: int) -> Atom:
    return Atom(QUATERNION, order)


def Dihedral(order: int) -> Atom:
    return Atom(DIHEDRAL, order)


def Heisenberg(p: int) -> Atom:
    return Atom(HEISENBERG, p)


@dataclass(frozen=True)
class GroupSpec:
    """Direct product of catalog atoms."""
    terms: Tuple[Atom, ...]

    def __post_init__(self):
        if not self.terms:
            raise SpecRangeError("a group spec needs at least one atom", "")
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def order(self) -> int:
        return reduce(lambda acc, atom: acc * atom.order, self.terms, 1)

    @property
    def is_abelian(self) -> bool:
        return all(atom.is_abelian for atom in self.terms)

    def __str__(self) -> str:
        return "x".join(str(atom) for atom in self.terms)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse `C12`, `C2xC2xC3`, `Q8xC3`, `H3` ... into a GroupSpec."""
    offset = len(text) - len(text.lstrip())
    s = text.strip()
    if not s:
        raise SpecSyntaxError("empty group spec", offset)

    terms: List[Atom] = []
    pos = 0
    while True:
        m = _ATOM_RE.match(s, pos)
        if not m:
            raise SpecSyntaxError("expected an atom such as C12, Q8, D8 or H3", offset + pos)
        letter = m.group(1).upper()
        if letter not in (CYCLIC, QUATERNION, DIHEDRAL, HEISENBERG):
            raise SpecSyntaxError(f"unknown atom letter {m.group(1)!r}", offset + pos)
        terms.append(Atom(letter, int(m.group(2))))
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] not in "xX":
            raise SpecSyntaxError("expected 'x' between atoms", offset + pos)
        pos += 1

    return GroupSpec(tuple(terms))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated multiplication table; table[i, j] is the product i*j."""
    table: np.ndarray
    name: str = "G"
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        arr = np.array(self.table, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)
        if self.labels is not None and len(self.labels) != arr.shape[0]:
            object.__setattr__(self, "labels", None)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def identity(self) -> int:
        return IDENTITY

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def label(self, x: int) -> str:
        if self.labels is None:
            return str(x)
        return self.labels[x]

    def check_element(self, x: int) -> None:
        if not 0 <= x < self.order:
            raise ElementRangeError(x, self.order)

    @cached_property
    def orders(self) -> np.ndarray:
        """Element orders, by iterated multiplication of all elements at once."""
        n = self.order
        idx = np.arange(n)
        cur = idx.copy()
        orders = np.zeros(n, dtype=np.int64)
        for k in range(1, n + 1):
            orders[(cur == IDENTITY) & (orders == 0)] = k
            if orders.all():
                break
            cur = self.table[cur, idx]
        else:
            # only reachable for trusted tables that are not groups
            x = int(np.flatnonzero(orders == 0)[0])
            raise CayleyTableError(f"powers of element {x} never reach the identity")
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def powers(self, x: int) -> List[int]:
        """[x^0, x^1, ..., x^(o-1)]."""
        out = [IDENTITY]
        cur = x
        for _ in range(int(self.orders[x]) - 1):
            out.append(cur)
            cur = int(self.table[cur, x])
        return out

    def power(self, x: int, n: int) -> int:
        n %= int(self.orders[x])
        result = IDENTITY
        base = x
        while n:
            if n & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            n >>= 1
        return result

    def inverse(self, x: int) -> int:
        return self.power(x, -1)

    def order_census(self) -> List[int]:
        """Sorted element-order multiset."""
        return sorted(int(o) for o in self.orders)


def element_order(G: FiniteGroup, x: int) -> int:
    G.check_element(x)
    return int(G.orders[x])


def cyclic_subgroup(G: FiniteGroup, x: int) -> FrozenSet[int]:
    G.check_element(x)
    return frozenset(G.powers(x))


def is_nilpotent(G: FiniteGroup) -> bool:
    """A finite group is nilpotent iff elements of coprime orders commute."""
    o = G.orders
    coprime = np.gcd.outer(o, o) == 1
    commute = G.table == G.table.T
    return bool(np.all(commute | ~coprime))


# ---------- table validation ----------

def _validate_table(arr: np.ndarray, trust: bool = False) -> None:
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if bad.size:
        i, j = (int(v) for v in bad[0])
        raise EntryRangeError(f"entry ({i},{j}) = {int(arr[i, j])} is outside [0, {n})")

    idx = np.arange(n)
    for side, line in (("row", arr[IDENTITY]), ("column", arr[:, IDENTITY])):
        wrong = np.flatnonzero(line != idx)
        if wrong.size:
            j = int(wrong[0])
            raise IdentityLawError(
                f"element 0 is not the identity: {side} 0 has {int(line[j])} at position {j}"
            )

    for i in range(n):
        zeros = np.flatnonzero(arr[i] == IDENTITY)
        if zeros.size != 1 or arr[int(zeros[0]), i] != IDENTITY:
            raise MissingInverseError(i)

    if trust:
        logger.debug("Associativity check skipped for table of order %s", n)
        return
    for a in range(n):
        left = arr[arr[a]]       # (a*b)*c
        right = arr[a][arr]      # a*(b*c)
        diff = np.argwhere(left != right)
        if diff.size:
            b, c = (int(v) for v in diff[0])
            raise AssociativityError((a, b, c))


def from_cayley_table(order: int, table: Sequence[Sequence[int]], *, trust: bool = False,
                      name: str = "cayley", max_order: Optional[int] = None) -> FiniteGroup:
    """Validate a raw multiplication table and wrap it as a FiniteGroup."""
    limit = config.MAX_GROUP_ORDER if max_order is None else max_order
    rows = [list(r) for r in table]
    if order < 1 or len(rows) != order or any(len(r) != order for r in rows):
        raise NonSquareTableError(f"expected a {order}x{order} table")
    if order > limit:
        raise GroupOrderError(order, limit)
    arr = np.array(rows, dtype=np.int64)
    _validate_table(arr, trust=trust)
    return FiniteGroup(arr, name=name)


def validate(G: FiniteGroup) -> None:
    """Re-run the full validation on an existing group."""
    _validate_table(np.asarray(G.table))


# ---------- constructions ----------

def _cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, f"C{n}",
                       tuple(str(i) for i in range(n)))


def _dihedral(m: int) -> FiniteGroup:
    # r^i s^f  ->  i + n*f, with s r s = r^-1
    n = m // 2
    idx = np.arange(m)
    i, f = idx % n, idx // n
    i1, f1 = i[:, None], f[:, None]
    i2, f2 = i[None, :], f[None, :]
    rot = np.where(f1 == 0, i1 + i2, i1 - i2) % n
    flip = (f1 + f2) % 2
    labels = tuple(_word("r", k, "s" if g else "") for k, g in zip(i, f))
    return FiniteGroup(rot + n * flip, f"D{m}", labels)


def _quaternion(m: int) -> FiniteGroup:
    # a^i x^f  ->  i + n*f, with x a x^-1 = a^-1 and x^2 = a^(n/2)
    n = m // 2
    idx = np.arange(m)
    i, f = idx % n, idx // n
    i1, f1 = i[:, None], f[:, None]
    i2, f2 = i[None, :], f[None, :]
    rot = np.where(f1 == 0, i1 + i2, i1 - i2 + (n // 2) * f2) % n
    flip = (f1 + f2) % 2
    labels = tuple(_word("a", k, "x" if g else "") for k, g in zip(i, f))
    return FiniteGroup(rot + n * flip, f"Q{m}", labels)


def _heisenberg(p: int) -> FiniteGroup:
    # upper unitriangular [[1,a,c],[0,1,b],[0,0,1]] -> a*p^2 + b*p + c
    idx = np.arange(p ** 3)
    a, b, c = idx // (p * p), (idx // p) % p, idx % p
    a1, b1, c1 = a[:, None], b[:, None], c[:, None]
    a2, b2, c2 = a[None, :], b[None, :], c[None, :]
    table = ((a1 + a2) % p) * p * p + ((b1 + b2) % p) * p + (c1 + c2 + a1 * b2) % p
    labels = tuple(f"({x},{y},{z})" for x, y, z in zip(a, b, c))
    return FiniteGroup(table, f"H{p}", labels)


def _word(gen: str, k: int, suffix: str) -> str:
    if k == 0:
        return suffix or "e"
    head = gen if k == 1 else f"{gen}^{k}"
    return f"{head}{suffix}"


_BUILDERS = {
    CYCLIC: _cyclic,
    DIHEDRAL: _dihedral,
    QUATERNION: _quaternion,
    HEISENBERG: _heisenberg,
}


def direct_product(G: FiniteGroup, H: FiniteGroup, max_order: Optional[int] = None) -> FiniteGroup:
    """G x H on pairs (g, h) indexed g*|H| + h."""
    limit = config.MAX_GROUP_ORDER if max_order is None else max_order
    n = G.order * H.order
    if n > limit:
        raise GroupOrderError(n, limit, "direct product")
    m = H.order
    table = (G.table[:, None, :, None] * m + H.table[None, :, None, :]).reshape(n, n)
    labels = tuple(f"({G.label(g)},{H.label(h)})" for g in range(G.order) for h in range(m))
    return FiniteGroup(table, f"{G.name}x{H.name}", labels)


def realize(spec: GroupSpec, max_order: Optional[int] = None) -> FiniteGroup:
    limit = config.MAX_GROUP_ORDER if max_order is None else max_order
    if spec.order > limit:
        raise GroupOrderError(spec.order, limit)
    factors = [_BUILDERS[atom.kind](atom.param) for atom in spec.terms]
    G = reduce(lambda acc, H: direct_product(acc, H, max_order=limit), factors)
    if len(factors) == 1:
        return replace(G, name=str(spec))
    # single-atom labels stay readable; nested products flatten to one tuple
    return replace(G, name=str(spec), labels=_flat_labels(factors))


def _flat_labels(factors: List[FiniteGroup]) -> Tuple[str, ...]:
    labels: List[str] = [""]
    for F in factors:
        labels = [f"{head},{F.label(x)}" if head else F.label(x)
                  for head in labels for x in range(F.order)]
    return tuple(f"({lab})" for lab in labels)
