"""
Exception hierarchy for the Dagger Workbench.

Domain operations raise these; the suite runner records them as ``error``
verdicts and the CLI maps configuration problems to a usage exit status.
"""

from typing import Any


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""


class CompositionError(WorkbenchError):
    """Raised when g ∘ f is requested but f.cod differs from g.dom."""


class ShapeMismatchError(WorkbenchError):
    """Raised when two payloads that must share a shape do not."""


class ModelMismatchError(WorkbenchError):
    """Raised when objects or morphisms from different models are combined."""


class ConfigurationError(WorkbenchError):
    """Raised for invalid suite configuration, unknown suites or axioms."""


class DivisionByZeroError(WorkbenchError):
    """Raised when a scalar that is numerically zero is inverted."""


class NonIsometryError(WorkbenchError):
    """Raised when a map that must be an isometry is not one."""


class DiagramError(WorkbenchError):
    """Raised when a diagram is not directed or has no greatest element."""


class MatrixFormatError(WorkbenchError):
    """Raised when the plain-text matrix exchange format cannot be parsed."""


class EqualiserUnavailableError(WorkbenchError):
    """Raised when a model cannot produce a dagger equaliser for a pair."""

    def __init__(self, message: str, search_result: Any = None) -> None:
        super().__init__(message)
        self.search_result = search_result


class SearchBoundError(WorkbenchError):
    """Raised when an exhaustive search is requested beyond its bound."""

    def __init__(self, message: str, estimated_cost: int) -> None:
        super().__init__(message)
        self.estimated_cost = estimated_cost
