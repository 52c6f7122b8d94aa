"""Exception types shared across the toolkit.

Every error carries a ``payload`` dict so the CLI can emit machine-readable
error JSON on stderr without string parsing.
"""

from __future__ import annotations


class ArlError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.message = message
        self.payload = payload

    def to_json_dict(self) -> dict:
        return {"error": type(self).__name__, "message": self.message, **self.payload}


class ParameterRangeError(ArlError):
    """A parameter is outside the range an operation admits."""


class HypothesisViolationError(ArlError):
    """An instance fails the degree-window hypothesis of the extraction step."""


class EnumerationCapError(ArlError):
    """A triangle enumeration would exceed the configured cap."""


class ModulusTooSmallError(ArlError):
    """The target modulus is too small for a faithful embedding."""


class EvaluationDomainError(ArlError):
    """A bound profile was evaluated outside its analytic domain."""


class UnverifiedFamilyError(ArlError):
    """An operation required a family that passes the matching check."""


class InvalidGeneratorSpecError(ArlError):
    """An instance-generator spec string could not be parsed."""


class SearchBudgetExceededError(ArlError):
    """Exhaustive search ran out of budget; carries the best bound found."""

    def __init__(self, message: str, best_size: int, best_witness, nodes: int):
        super().__init__(message, best_size=best_size, nodes=nodes)
        self.best_size = best_size
        self.best_witness = best_witness
        self.nodes = nodes
