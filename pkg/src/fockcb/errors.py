"""Exception types shared across the package.

Errors that signal a bug or a convention inconsistency derive from
:class:`InternalInconsistency`; the CLI maps those to exit status 3.
"""

from .laurent import NotDivisible


class FockError(Exception):
    """Base class for package errors."""


class InvalidInput(FockError, ValueError):
    """Bad user input (CLI exit status 2)."""


class InternalInconsistency(FockError):
    """A runtime assertion of the algorithm failed."""


class Singular(InternalInconsistency):
    pass


class NonLaurentResult(InternalInconsistency):
    pass


class DimensionMismatch(InternalInconsistency):
    pass


class AntisymmetryViolation(InternalInconsistency):
    pass


class NotInCrystal(InternalInconsistency):
    pass


class NotChainHead(InternalInconsistency):
    pass


class NotDominant(FockError):
    """Raised when the componentwise Heisenberg formula does not apply."""


class NonIntegral(FockError, ValueError):
    """A weight has no integral multicharge preimage."""


INTERNAL_ERRORS = (InternalInconsistency, NotDivisible)

__all__ = [
    "FockError",
    "InvalidInput",
    "InternalInconsistency",
    "Singular",
    "NonLaurentResult",
    "DimensionMismatch",
    "AntisymmetryViolation",
    "NotInCrystal",
    "NotChainHead",
    "NotDominant",
    "NonIntegral",
    "NotDivisible",
    "INTERNAL_ERRORS",
]
