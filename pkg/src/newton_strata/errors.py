"""
Exception hierarchy for newton_strata.

Library code raises these; only the CLI turns them into exit codes.
"""

from typing import Optional


class NewtonStrataError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(NewtonStrataError, ValueError):
    """Two vectors of different rank were combined."""


class PreconditionError(NewtonStrataError, ValueError):
    """An input violates the documented precondition of an operation."""


class UnsupportedInputError(NewtonStrataError, ValueError):
    """The input is outside the supported range (non-minuscule mu, unknown family, ...)."""


class WeylGroupTooLargeError(NewtonStrataError):
    """The Weyl group (or an orbit) exceeds the materialization limit."""


class NotInPosetError(NewtonStrataError, ValueError):
    """A class was looked up in a poset it does not belong to."""


class IncomparableError(NewtonStrataError, ValueError):
    """Two classes were expected to be comparable but are not."""


class ConsistencyError(NewtonStrataError, RuntimeError):
    """A theorem-level identity failed; this always signals a bug upstream."""

    def __init__(self, message: str, label: Optional[str] = None) -> None:
        super().__init__(message if label is None else f"{message} (class {label})")
        self.label = label


class PrecisionError(NewtonStrataError, ArithmeticError):
    """Finite p-adic precision is not enough to certify a result."""

    def __init__(self, message: str, suggested_precision: Optional[int] = None) -> None:
        if suggested_precision is not None:
            message = f"{message}; retry with precision >= {suggested_precision}"
        super().__init__(message)
        self.suggested_precision = suggested_precision


class NonUnitError(NewtonStrataError, ZeroDivisionError):
    """Inverse requested for a non-unit of a Galois ring."""


class LeafConditionError(NewtonStrataError, ValueError):
    """A (mu', w) pair violates one of the conditions defining a leaf datum."""

    def __init__(self, condition: int, message: str) -> None:
        super().__init__(f"condition {condition} violated: {message}")
        self.condition = condition
