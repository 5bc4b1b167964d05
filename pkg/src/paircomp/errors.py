"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PairCompError(Exception):
    """Base class for every error raised by the package."""


class DataError(PairCompError, ValueError):
    """The comparison data or a parameter is invalid."""


class BoundViolation(DataError):
    pass


class UnpairedEntry(DataError):
    pass


class DuplicateEntry(DataError):
    pass


class SelfComparison(DataError):
    pass


class BadIndex(DataError):
    pass


class BadParameter(DataError):
    pass


class MissingParameter(DataError):
    pass


class CapExceeded(DataError):
    pass


class DegenerateN(DataError):
    pass


class NotSkewSymmetric(DataError):
    pass


class NegativeEpsilon(DataError):
    pass


class UndefinedOutcome(DataError):
    pass


class ParseError(DataError):
    """Malformed input file; the message carries the offending line/field."""

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field


class DegenerateArray(DataError):
    """The relaxed least-squares problem has no unique solution direction."""
