"""Exception types shared across the package."""

from __future__ import annotations


class SpreadrankError(Exception):
    """Base class for package-specific errors."""


class GraphParseError(SpreadrankError, ValueError):
    """Raised when an edge-list file cannot be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ConvergenceError(SpreadrankError, RuntimeError):
    """Raised when an iterative solver fails to converge within its budget."""

    def __init__(self, message: str, residual: float | None = None):
        if residual is not None:
            message = f"{message} (final residual {residual:.3e})"
        super().__init__(message)
        self.residual = residual


class SimulationError(SpreadrankError, RuntimeError):
    """Raised when a simulation run trips an internal safety check."""


class DataMismatchError(SpreadrankError, ValueError):
    """Raised when two tables that must cover the same node set do not."""

    def __init__(self, message: str, missing: tuple[str, ...] = (), extra: tuple[str, ...] = ()):
        parts = [message]
        if missing:
            parts.append("missing: " + ", ".join(missing))
        if extra:
            parts.append("unexpected: " + ", ".join(extra))
        super().__init__("; ".join(parts))
        self.missing = missing
        self.extra = extra


class ConfigError(SpreadrankError, ValueError):
    """Raised when a pipeline config file fails validation.

    ``fields`` lists the offending keys so the CLI can report them all at once.
    """

    def __init__(self, message: str, fields: tuple[str, ...] = ()):
        if fields:
            message = f"{message} (fields: {', '.join(fields)})"
        super().__init__(message)
        self.fields = fields
