"""Exception hierarchy shared by every turanlab module."""

from __future__ import annotations


class TuranLabError(Exception):
    """Base class for all library errors."""


class ParseError(TuranLabError, ValueError):
    """Malformed text input (hypergraph, lettering or matrix format)."""


class WrongArity(TuranLabError, ValueError):
    pass


class VertexOutOfRange(TuranLabError, ValueError):
    pass


class DuplicateEdge(TuranLabError, ValueError):
    pass


class ArityMismatch(TuranLabError, ValueError):
    pass


class ArityTooSmall(TuranLabError, ValueError):
    pass


class ParameterOrder(TuranLabError, ValueError):
    pass


class UnsupportedSize(TuranLabError, ValueError):
    pass


class DimensionMismatch(TuranLabError, ValueError):
    pass


class UnsupportedOrder(TuranLabError, ValueError):
    pass


class NotSquare(TuranLabError, ValueError):
    pass


class DegenerateEx(TuranLabError, ValueError):
    pass


class NotUniformMultiplicity(TuranLabError, ValueError):
    pass


class NotKHtFree(TuranLabError):
    """Raised when a hypergraph asserted to be K_{H,t}-free contains a copy.

    ``embedding`` maps vertices of the forbidden hypergraph to host vertices.
    """

    def __init__(self, message: str, embedding: dict[int, int]):
        super().__init__(message)
        self.embedding = embedding


class BudgetExceeded(TuranLabError):
    """A search ran out of nodes or time before proving optimality.

    ``record`` carries the best object found so far (a lower bound).
    """

    def __init__(self, message: str, record=None):
        super().__init__(message)
        self.record = record


class CorruptRecord(TuranLabError):
    """A cached result failed checksum or witness re-verification."""
