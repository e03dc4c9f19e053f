"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SkewLatticeError(Exception):
    """Base class for all errors raised by skewlat."""


class BadShape(SkewLatticeError, ValueError):
    pass


class OutOfRangeEntry(SkewLatticeError, ValueError):
    def __init__(self, op: str, row: int, col: int, value: object):
        self.op, self.row, self.col, self.value = op, row, col, value
        super().__init__(f"{op} table entry ({row},{col}) = {value!r} is out of range")


class IndexOutOfRange(SkewLatticeError, IndexError):
    pass


class TermSyntaxError(SkewLatticeError, ValueError):
    """Parse failure; ``position`` is the 0-based offset into the source text."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class UnboundVariable(SkewLatticeError, KeyError):
    pass


class NotASkewLattice(SkewLatticeError, ValueError):
    pass


class ConsistencyError(SkewLatticeError, RuntimeError):
    """Two routes to the same structural fact disagreed (signals a bug)."""


class GreenMismatch(ConsistencyError):
    pass


class NotACongruence(SkewLatticeError, ValueError):
    pass


class NotAHomomorphism(SkewLatticeError, ValueError):
    pass


class TargetMismatch(SkewLatticeError, ValueError):
    pass


class RectangularityFailure(ConsistencyError):
    pass


class ComponentNotCongruence(ConsistencyError):
    pass


class NotComparable(SkewLatticeError, ValueError):
    pass


class PartitionFailure(ConsistencyError):
    pass


class LevelMismatch(SkewLatticeError, ValueError):
    pass


class BudgetExceeded(SkewLatticeError):
    """Search stopped because its time budget ran out (distinct from exhaustion)."""


class SizeLimit(SkewLatticeError, ValueError):
    pass
