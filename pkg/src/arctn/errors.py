"""Exception types shared across the package."""

from __future__ import annotations


class ArctnError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ArctnError, ValueError):
    """An input violates a mathematical precondition (wrong sign, size, arity)."""


class IntegrandError(ArctnError):
    """The integrand returned a non-finite value at a sample point."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class UnknownIntegrandError(ArctnError, LookupError):
    """Requested integrand id is not in the registry."""
