"""Exception hierarchy shared by the library and the command line."""

from typing import Optional, Tuple


class PowerGraphError(Exception):
    """Base class for every error raised on purpose by this package."""


class SpecSyntaxError(PowerGraphError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SpecRangeError(PowerGraphError, ValueError):
    def __init__(self, message: str, atom: str):
        super().__init__(f"{atom}: {message}")
        self.atom = atom


class CayleyTableError(PowerGraphError, ValueError):
    pass


class NonSquareTableError(CayleyTableError):
    pass


class EntryRangeError(CayleyTableError):
    pass


class IdentityLawError(CayleyTableError):
    pass


class AssociativityError(CayleyTableError):
    def __init__(self, witness: Tuple[int, int, int]):
        a, b, c = witness
        super().__init__(f"associativity fails for ({a}*{b})*{c} != {a}*({b}*{c})")
        self.witness = witness


class MissingInverseError(CayleyTableError):
    def __init__(self, element: int):
        super().__init__(f"element {element} has no two-sided inverse")
        self.element = element


class GroupOrderError(PowerGraphError, ValueError):
    def __init__(self, order: int, limit: int, what: Optional[str] = None):
        label = what or "group"
        super().__init__(f"{label} of order {order} exceeds the configured maximum {limit}")
        self.order = order
        self.limit = limit


class GraphFormatError(PowerGraphError, ValueError):
    pass


class PartitionMismatchError(PowerGraphError, ValueError):
    pass


class GraphTooLargeError(PowerGraphError, ValueError):
    def __init__(self, vertex_count: int, limit: int):
        super().__init__(f"graph with {vertex_count} vertices exceeds canonical-form bound {limit}")
        self.vertex_count = vertex_count
        self.limit = limit


class NotANilpotentPowerGraphError(PowerGraphError):
    pass


class ElementRangeError(PowerGraphError, ValueError):
    def __init__(self, element: int, order: int):
        super().__init__(f"element {element} is not in [0, {order})")
        self.element = element
        self.order = order
