"""Generic exceptions for lcgalois.

Every exception carries the exit code the command line interface reports when the exception
escapes a command.
"""

from typing import Iterable, List

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_PARSE = 2


class GaloisError(Exception):
    """Base class for all lcgalois errors."""

    exit_code = EXIT_INVARIANT


class MissingParam(GaloisError):
    """An exception thrown when a parameter is missing, or the param lacks a value."""


class InvalidParam(GaloisError):
    """An exception thrown when a parameter is invalid."""


class ParseError(GaloisError):
    """Thrown when the text format cannot be parsed."""

    exit_code = EXIT_PARSE

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "") -> None:
        """Create a parse error with a location."""
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source or '<input>'}:{line}:{column}: {message}")


class UnknownCommand(GaloisError):
    """Thrown when the command line names no known operation."""

    exit_code = EXIT_PARSE


class InvariantViolation(GaloisError):
    """Thrown when a structure fails its invariants."""

    def __init__(self, diagnostics: Iterable[str]) -> None:
        """Create the exception from a list of diagnostics."""
        self.diagnostics: List[str] = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class BudgetExceeded(GaloisError):
    """Thrown when an enumeration would exceed its configured budget."""

    def __init__(self, what: str, requested: int, limit: int) -> None:
        """Create the exception, naming the budget and the figures involved."""
        self.what = what
        self.requested = requested
        self.limit = limit
        super().__init__(f"budget exceeded: {what} needs {requested}, limit is {limit}")


class NotConnected(GaloisError):
    """Thrown when an operation requires a connected object."""


class NotGalois(GaloisError):
    """Thrown when an operation requires a Galois object."""


class GroupMismatch(GaloisError):
    """Thrown when two structures are defined over different groups."""


class BaseMismatch(GaloisError):
    """Thrown when two covers do not share their base graph."""


class PointNotInCarrier(InvalidParam):
    """Thrown when a point is not an element of the carrier."""


class InvalidCover(InvariantViolation):
    """Thrown when a covering map fails the star-bijection condition."""


class EmptyGraph(GaloisError):
    """Thrown when an operation needs at least one vertex."""


class TruncationError(GaloisError):
    """Thrown when a simplicial truncation is too shallow for the requested level."""
