"""Exception hierarchy.

Input problems (malformed matrices, invalid curves, non-square operands) raise
plain ``ValueError``. Failures that come from the mathematics of a valid input
derive from :class:`DomainError` so callers (and the CLI) can tell them apart.
"""


class DomainError(Exception):
    """A well-formed input violates a mathematical precondition."""


class BadReductionError(DomainError, ValueError):
    """The prime divides the discriminant, or is excluded for short Weierstrass."""


class BudgetExceededError(DomainError):
    """Naive enumeration would exceed the configured budget."""


class UnderdeterminedError(DomainError):
    """Too few series coefficients, or a degenerate Hankel system."""


class NoSolutionError(DomainError):
    """No integral rational function of the requested degrees fits the series."""


class PoleError(DomainError, ZeroDivisionError):
    """An Euler factor has a vanishing denominator at the requested point."""
