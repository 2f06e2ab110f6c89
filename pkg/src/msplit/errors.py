"""Exception hierarchy shared by every msplit module."""

from __future__ import annotations


class MsplitError(ValueError):
    """Base class for all library errors."""


class NotPrime(MsplitError):
    pass


class ZeroInverse(MsplitError, ZeroDivisionError):
    pass


class DimensionMismatch(MsplitError):
    pass


class SizeCapExceeded(MsplitError):
    pass


class LoopPresent(MsplitError):
    def __init__(self, label: str):
        super().__init__(f"element {label!r} is a loop (zero column)")
        self.label = label


class ColoopPresent(MsplitError):
    def __init__(self, label: str):
        super().__init__(f"element {label!r} is a coloop (lies in no circuit)")
        self.label = label


class LabelCollision(MsplitError):
    pass


class ForeignSubset(MsplitError):
    pass


class NotACircuit(MsplitError):
    pass


class EmptyT(MsplitError):
    pass


class FullT(MsplitError):
    pass


class NoNptCircuit(MsplitError):
    pass


class NotEulerian(MsplitError):
    pass


class ParseError(MsplitError):
    pass


class ValidationError(MsplitError):
    pass
