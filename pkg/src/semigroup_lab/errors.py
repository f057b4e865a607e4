"""Exception types raised by the library.

All derive from ValueError so callers that only know about bad input still
catch them.
"""


class SemigroupLabError(ValueError):
    """Base class for library errors."""


class SpectrumError(SemigroupLabError):
    """Unknown family, malformed document or violated spectrum invariant."""


class DomainError(SemigroupLabError):
    """An argument lies outside the domain of an operation."""


class HypothesisError(SemigroupLabError):
    """A hypothesis gate of a constant chain is not satisfied."""


class InsufficientDataError(SemigroupLabError):
    """Too few usable points for a fit."""


class UsageError(SemigroupLabError):
    """Unknown command or malformed command-line arguments."""
