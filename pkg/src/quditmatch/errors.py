"""Exception types shared across the package."""

from __future__ import annotations


class QuditMatchError(Exception):
    """Base class for all package errors."""


class DomainError(QuditMatchError):
    """Invalid value for an otherwise well-formed request (bad digit, bad wire, ...)."""


class DimensionError(QuditMatchError):
    """A gate or state references a level at or beyond a wire's dimension."""


class ConfigurationError(QuditMatchError):
    """A builder was asked for a configuration it does not support."""


class SupportBudgetError(QuditMatchError):
    """Simulation support grew past the configured budget.

    Carries the support-size trace recorded up to the failure point so a
    partial report can still be emitted.
    """

    def __init__(self, message: str, trace: list[tuple[str, int]] | None = None):
        super().__init__(message)
        self.trace = list(trace or [])
