"""
Exception types shared across kpcrystal.

Input problems derive from ValueError so callers that only know the
built-in hierarchy still catch them. Invariant violations derive from
RuntimeError: they mean a bug, not bad input.
"""

from typing import List, Optional


class KPCrystalError(Exception):
    """Base class for every error raised by kpcrystal."""


class InvalidInputError(KPCrystalError, ValueError):
    """Rejected user input (bad rank, non-reduced word, non-root, ...)."""


class ConfigError(InvalidInputError):
    """An environment setting could not be parsed."""


class SchemaValidationError(InvalidInputError):
    """
    A JSON artifact did not conform to its schema.

    Attributes:
        errors: formatted "path: message" strings, one per violation
    """

    def __init__(self, message: str, errors: Optional[List[str]] = None):
        super().__init__(message)
        self.errors = errors or []


class InvariantViolation(KPCrystalError, RuntimeError):
    """An internal invariant failed. Always a bug."""


class SearchInconclusive(KPCrystalError):
    """The semi-adaptedness search stopped at its visited-word cap."""

    def __init__(self, message: str, visited: int):
        super().__init__(message)
        self.visited = visited
