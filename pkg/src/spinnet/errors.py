"""
Exception hierarchy for spinnet.

Every error raised by the library derives from SpinNetError so that the CLI can
map failures onto exit codes in one place.
"""

from typing import Optional


class SpinNetError(Exception):
    """Base class for all spinnet errors."""
    pass


class ConfigurationError(SpinNetError):
    """Raised when configuration is invalid."""
    pass


class GraphParseError(SpinNetError):
    """Raised when graph DSL text cannot be parsed."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class GraphStructureError(SpinNetError):
    """Raised when a rewrite precondition on a graph is violated."""
    pass


class DimensionCapError(SpinNetError):
    """Raised when a dense tensor would exceed the configured entry cap."""

    def __init__(self, entries: int, cap: int, what: str = "tensor"):
        self.entries = entries
        self.cap = cap
        super().__init__(
            f"{what} needs {entries} entries, above the dimension cap {cap}; "
            f"simplify or expand vertices first"
        )


class ReductionBudgetError(SpinNetError):
    """Raised when exact reduction exceeds its step or term budget."""
    pass


class EvaluationError(SpinNetError):
    """Raised when an internal evaluation invariant fails."""
    pass


class SamplingError(SpinNetError):
    """Raised for invalid Monte Carlo requests."""
    pass


class GeometryError(SpinNetError):
    """Base class for simplex reconstruction failures."""
    pass


class DegenerateSimplexError(GeometryError):
    """Normals do not span R^4, so the null space is not one-dimensional."""

    def __init__(self, nullity: int, message: Optional[str] = None):
        self.nullity = nullity
        super().__init__(message or f"degenerate normals: null space dimension {nullity}")


class NonSimplexError(GeometryError):
    """The Minkowski null vector has mixed signs."""
    pass
