"""
Exception hierarchy for SignQuery.
"""

from typing import Optional


class SignQueryError(Exception):
    """Base class for every error raised by SignQuery."""


class ParameterError(SignQueryError, ValueError):
    """An argument or configuration value is out of range."""


class EdgeListError(SignQueryError):
    """A line of an edge-list file could not be parsed."""

    def __init__(self, line_number: int, line: str, reason: str):
        super().__init__(f"line {line_number}: {reason}: {line!r}")
        self.line_number = line_number
        self.line = line


class ConflictingEdgeError(SignQueryError):
    """The same undirected edge appears twice with different signs."""

    def __init__(self, u: str, v: str, line_number: Optional[int] = None):
        where = f" (line {line_number})" if line_number is not None else ""
        super().__init__(f"conflicting duplicate edge {u} {v}{where}")
        self.u = u
        self.v = v
        self.line_number = line_number


class DisconnectedGraphError(SignQueryError):
    """An algorithm that needs a connected graph received a disconnected one."""

    def __init__(self, unreachable: int):
        super().__init__(f"graph is disconnected: node {unreachable} is unreachable")
        self.unreachable = unreachable


class EmptyGraphError(SignQueryError):
    """Cleaning or loading left no edges."""


class OracleError(SignQueryError):
    """The label oracle was used outside the query protocol."""


class InfeasibleSpecError(SignQueryError):
    """A generator target cannot be reached."""

    def __init__(self, message: str, achieved_fraction: float):
        super().__init__(f"{message} (achieved negative fraction {achieved_fraction:.4f})")
        self.achieved_fraction = achieved_fraction


class BoundViolationError(SignQueryError):
    """A run broke one of the guarantees of its learner."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations
