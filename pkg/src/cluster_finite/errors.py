"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ClusterFiniteError(Exception):
    """Base class for every error raised by this package."""


class NotSkewSymmetrizable(ClusterFiniteError, ValueError):
    pass


class NotSymmetrizable(ClusterFiniteError, ValueError):
    pass


class MalformedDiagram(ClusterFiniteError, ValueError):
    pass


class MalformedCycle(ClusterFiniteError, ValueError):
    pass


class CapExceeded(ClusterFiniteError, RuntimeError):
    pass


class NotOrientable(ClusterFiniteError, ValueError):
    """The graph admits no orientation making every chordless cycle cyclic."""


class SignDomainMismatch(ClusterFiniteError, ValueError):
    pass


class NotACompanion(ClusterFiniteError, ValueError):
    pass


class NotKCompatible(ClusterFiniteError, ValueError):
    pass


class SymmetrizerMismatch(ClusterFiniteError, ValueError):
    pass


class NotPositive(ClusterFiniteError, ValueError):
    pass


class NotFinite(ClusterFiniteError, ValueError):
    pass


class ParseError(ClusterFiniteError, ValueError):
    """Malformed input text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
