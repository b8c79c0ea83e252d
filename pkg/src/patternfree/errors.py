"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`PatternFreeError`,
so callers (and the CLI) can separate domain failures from bugs.
"""

from __future__ import annotations

__all__ = [
    "PatternFreeError",
    "FormatError",
    "IndexOutOfRange",
    "EmptyMatrix",
    "InvalidSize",
    "InvalidParams",
    "PreconditionFailed",
    "DegenerateSize",
    "PatternNotCovered",
    "NiceTupleNotFound",
    "SizeLimitExceeded",
    "PatternAcyclic",
    "RetriesExhausted",
    "IndivisibleSize",
    "NoQualifyingMatrix",
    "NotTotallyBalanced",
    "NotChordalBipartite",
    "OrderingNotFound",
    "InvalidSuite",
    "VerificationError",
]


class PatternFreeError(Exception):
    """Base class for all library errors."""


class FormatError(PatternFreeError, ValueError):
    """Malformed matrix text. Carries 1-based line/column of the first offence."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class IndexOutOfRange(PatternFreeError, IndexError):
    pass


class EmptyMatrix(PatternFreeError, ValueError):
    pass


class InvalidSize(PatternFreeError, ValueError):
    pass


class InvalidParams(PatternFreeError, ValueError):
    pass


class PreconditionFailed(PatternFreeError):
    """An extractor's density (or shape) precondition does not hold."""


class DegenerateSize(PatternFreeError):
    """A proof quantity rounds to zero at this input size."""


class PatternNotCovered(PatternFreeError):
    """The pattern is outside the class an extractor handles."""


class NiceTupleNotFound(PatternFreeError):
    pass


class SizeLimitExceeded(PatternFreeError):
    pass


class PatternAcyclic(PatternFreeError):
    pass


class RetriesExhausted(PatternFreeError):
    pass


class IndivisibleSize(PatternFreeError, ValueError):
    pass


class NoQualifyingMatrix(PatternFreeError):
    pass


class NotTotallyBalanced(PatternFreeError):
    pass


class NotChordalBipartite(NotTotallyBalanced):
    pass


class OrderingNotFound(PatternFreeError):
    pass


class InvalidSuite(PatternFreeError, ValueError):
    pass


class VerificationError(PatternFreeError, AssertionError):
    """A result failed its own re-verification. Always a bug."""
