"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class TruncationError(ArithmeticError):
    """A series evaluation failed to converge within its term budget."""
