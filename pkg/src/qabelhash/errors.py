"""Exception hierarchy shared by the library, CLI, and service."""

from __future__ import annotations


class QabelhashError(Exception):
    """Base class for all library errors."""

    #: short machine-readable kind, stable across releases
    kind = "error"


class UsageError(QabelhashError):
    """Structurally invalid input: wrong dimensions, incompatible objects, bad flags."""

    kind = "usage"


class ParseError(QabelhashError):
    """Malformed or invariant-violating file content."""

    kind = "parse"

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location


class CapacityError(QabelhashError):
    """Input exceeds a configured enumeration or pairwise limit."""

    kind = "capacity"


class CertificationError(QabelhashError):
    """A bias certification failed or could not be achieved."""

    kind = "certification"

    def __init__(self, message: str, best_bias: float | None = None):
        super().__init__(message)
        self.best_bias = best_bias
