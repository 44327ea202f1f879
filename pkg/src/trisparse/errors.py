"""Exception types shared across the package."""

from __future__ import annotations


class GraphFormatError(ValueError):
    """Malformed graph input.

    Carries the offending 1-based line number when the source is line
    oriented (edge-list input); ``line`` is None for JSON payload errors.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class DomainError(ValueError):
    """Arguments outside an operation's mathematical domain."""


class CapExceededError(RuntimeError):
    """Problem size exceeds the configured exact-computation cap."""


class GenerationBudgetError(RuntimeError):
    """A randomized construction did not succeed within its retry budget."""


class CertificateError(ValueError):
    """A fractional-colouring certificate was used outside its contract."""
