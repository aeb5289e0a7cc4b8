"""Shared exception types."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class InvalidSpec(ValueError):
    """A representation spec violates the existence conditions of its family."""


class ChartDomainError(DomainError):
    """A chart point lies outside the coordinate patch."""
