"""Exception types shared across the package."""

from __future__ import annotations


class SztlabError(Exception):
    """Base class for all package-specific errors."""


class EmptySetError(SztlabError, ValueError):
    """Raised when an operation requires a nonempty set."""


class BudgetError(SztlabError, ValueError):
    """Raised when a computation would exceed its configured budget.

    The ``required`` attribute records the estimated cost so callers can
    retry with an explicit larger budget.
    """

    def __init__(self, message: str, required: int) -> None:
        super().__init__(f"{message} (required budget {required})")
        self.required = required


class ContainmentError(SztlabError, ValueError):
    """Raised when a set is not contained in the set required by a lemma."""


class MapDomainError(SztlabError, ValueError):
    """Raised when a convex map is applied outside its domain."""


class FamilyError(SztlabError, ValueError):
    """Raised for unknown family kinds or invalid generator parameters."""


class ConfigError(SztlabError, ValueError):
    """Raised for malformed or inconsistent verification configs."""


class RatioGuardError(SztlabError, ValueError):
    """Raised when paired set sizes fall outside the allowed ratio window."""
