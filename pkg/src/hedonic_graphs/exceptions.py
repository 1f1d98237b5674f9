"""
@file exceptions.py
@description Custom exception classes for the hedonic-graphs toolkit
@module hedonic_graphs.exceptions
@author hedonic-graphs maintainers
@created 2026-10-17
"""

from typing import Any, Dict, Iterable, Optional


class HedonicGraphError(Exception):
    """
    Base exception for all hedonic-graphs errors.

    Every error raised by the toolkit inherits from this class, so callers can
    catch all toolkit failures with a single except clause. The ``exit_code``
    class attribute is what the command-line front end returns for the error.

    Attributes:
        message: Human-readable error message
        details: Optional dictionary containing additional error context
        exit_code: Process exit code used by the CLI

    Example:
        >>> raise HedonicGraphError("Solve failed", details={"concept": "is"})
    """

    exit_code: int = 2

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None) -> None:
        """
        Initialize HedonicGraphError.

        Args:
            message: Human-readable error message
            details: Optional dictionary with additional error context
        """
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        """Return string representation of error."""
        if self.details:
            return f"{self.message} (Details: {self.details})"
        return self.message


class ValidationError(HedonicGraphError):
    """
    Raised when an input document or value is malformed.

    Example:
        >>> raise ValidationError("players", "player identifiers must be unique")
    """

    def __init__(self, field: str, message: str) -> None:
        """
        Initialize ValidationError.

        Args:
            field: Name of the offending field
            message: What is wrong with it
        """
        super().__init__(f"Invalid {field}: {message}", details={"field": field})
        self.field = field


class UnknownFixtureError(HedonicGraphError):
    """Raised when a named fixture or generator family does not exist."""

    def __init__(self, name: str, known: Iterable[str] = ()) -> None:
        known_names = sorted(known)
        super().__init__(
            f"Unknown fixture: '{name}'",
            details={"name": name, "known": known_names} if known_names else {"name": name},
        )
        self.name = name


class BadParameterError(HedonicGraphError):
    """
    Raised when a generator or solver parameter is out of range.

    Example:
        >>> raise BadParameterError("k", "cycle length must be at least 3", value=2)
    """

    def __init__(self, parameter: str, message: str, value: Any = None) -> None:
        details: Dict[str, Any] = {"parameter": parameter}
        if value is not None:
            details["value"] = value
        super().__init__(f"Bad parameter '{parameter}': {message}", details=details)
        self.parameter = parameter


class SolverInvariantError(HedonicGraphError):
    """Raised when debug verification rejects a solver's own output."""

    def __init__(self, solver: str, concept: str, witness: Any) -> None:
        super().__init__(
            f"{solver} produced a partition that is not {concept}-stable",
            details={"solver": solver, "concept": concept, "witness": repr(witness)},
        )


class BudgetExceededError(HedonicGraphError):
    """
    Raised when an enumeration or search exceeds its configured budget.

    Budgets fail loudly: nothing is ever silently truncated.

    Example:
        >>> raise BudgetExceededError("partitions", 1000)
    """

    exit_code = 3

    def __init__(self, resource: str, limit: int) -> None:
        super().__init__(
            f"Budget exceeded: more than {limit} {resource}",
            details={"resource": resource, "limit": limit},
        )
        self.resource = resource
        self.limit = limit


class CapExceededError(BudgetExceededError):
    """Raised when connected-subset enumeration exceeds the subset cap."""

    def __init__(self, limit: int) -> None:
        super().__init__("connected subsets", limit)


class OracleBudgetExceededError(BudgetExceededError):
    """Raised when a counted region makes more preference comparisons than allowed."""

    def __init__(self, limit: int) -> None:
        super().__init__("preference comparisons", limit)


class PreconditionError(HedonicGraphError):
    """Base class for inputs that violate an operation's precondition."""

    exit_code = 4


class NotATreeError(PreconditionError):
    """Raised when a tree is required but the graph has a cycle or is disconnected."""

    def __init__(self, reason: str = "graph is not a tree") -> None:
        super().__init__(f"Not a tree: {reason}")


class NotAForestError(PreconditionError):
    """
    Raised when a forest solver receives a graph containing a cycle.

    Example:
        >>> if not nx.is_forest(g):
        ...     raise NotAForestError(graph.n)
    """

    def __init__(self, num_players: int) -> None:
        super().__init__(
            "Not a forest: the communication graph contains a cycle",
            details={"players": num_players},
        )


class NotAStarError(PreconditionError):
    """Raised when a star-only algorithm receives another topology."""

    def __init__(self, topology: str) -> None:
        super().__init__(
            f"Not a star: graph topology is {topology}", details={"topology": topology}
        )


class NotEnemyOrientedError(PreconditionError):
    """Raised when a symmetric enemy-oriented utility matrix is required."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"Not a symmetric enemy-oriented game: {reason}")


class NotAdditiveError(PreconditionError):
    """Raised when an operation needs a utility matrix but got explicit rankings."""

    def __init__(self, operation: str) -> None:
        super().__init__(
            f"{operation} requires additively separable preferences",
            details={"operation": operation},
        )


class PlayerNotMemberError(PreconditionError):
    """Raised when a player is asked to compare coalitions she does not belong to."""

    def __init__(self, player: int, coalition: Iterable[int]) -> None:
        members = sorted(coalition)
        super().__init__(
            f"Player {player} is not a member of coalition {members}",
            details={"player": player, "coalition": members},
        )


class InfeasibleCoalitionError(PreconditionError):
    """Raised when a disconnected coalition is ranked or compared."""

    def __init__(self, coalition: Iterable[int]) -> None:
        members = sorted(coalition)
        super().__init__(
            f"Coalition {members} is not connected in the communication graph",
            details={"coalition": members},
        )


class TargetNotInPartitionError(PreconditionError):
    """Raised when a deviation target is neither a block of the partition nor empty."""

    def __init__(self, target: Iterable[int]) -> None:
        members = sorted(target)
        super().__init__(
            f"Deviation target {members} is not a block of the partition",
            details={"target": members},
        )


class InfeasiblePartitionError(PreconditionError):
    """Raised when a partition has a disconnected block or does not cover the players."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"Infeasible partition: {reason}")


class InfeasibleStartError(PreconditionError):
    """Raised when dynamics are started from an infeasible partition."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"Infeasible start partition: {reason}")
