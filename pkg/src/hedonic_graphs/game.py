"""
@file game.py
@description Preference model: utility matrices, tiered rankings, the comparison oracle
@module hedonic_graphs.game
@author hedonic-graphs maintainers
@created 2026-10-17

Preferences come in two forms. A ``UtilityMatrix`` holds exact rational
utilities U(i, j) and ranks coalitions by their sums. ``ExplicitPreferences``
lists, per player, tiers of coalitions best-first; coalitions in one tier are
mutually indifferent and every unlisted connected coalition sits in an implicit
bottom tier. Solvers only ever look at preferences through :func:`compare`.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Any, Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple, Union

from hedonic_graphs.exceptions import (
    InfeasibleCoalitionError,
    NotAdditiveError,
    PlayerNotMemberError,
    ValidationError,
)
from hedonic_graphs.graph import (
    DEFAULT_SUBSET_CAP,
    Coalition,
    Graph,
    is_connected,
    list_connected_subsets,
    preference_tie_key,
)
from hedonic_graphs.oracle import record_oracle_call
from hedonic_graphs.validators import Rational, exact, parse_rational

logger = logging.getLogger(__name__)

Tier = FrozenSet[Coalition]


class Ordering(str, Enum):
    """Relation of one coalition to another under a player's preference."""

    BETTER = "better"
    EQUAL = "equal"
    WORSE = "worse"


@dataclass(frozen=True)
class UtilityMatrix:
    """
    Additively separable utilities with exact rational entries.

    Attributes:
        rows: ``rows[i][j]`` is U(i, j); the diagonal is zero
        symmetric: Whether U(i, j) = U(j, i) is asserted

    Example:
        >>> m = UtilityMatrix.from_entries(2, {(0, 1): "1/2", (1, 0): 3})
        >>> m.value(0, {0, 1})
        Fraction(1, 2)
    """

    rows: Tuple[Tuple[Rational, ...], ...]
    symmetric: bool = False

    def __post_init__(self) -> None:
        rows = tuple(tuple(exact(v) for v in row) for row in self.rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValidationError("utilities", f"row {i} has {len(row)} entries, expected {n}")
            for v in row:
                if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
                    raise ValidationError("utilities", f"{v!r} is not an exact rational")
            if row[i] != 0:
                raise ValidationError("utilities", f"U({i},{i}) must be 0")
        if self.symmetric:
            for i in range(n):
                for j in range(i + 1, n):
                    if rows[i][j] != rows[j][i]:
                        raise ValidationError(
                            "utilities", f"matrix marked symmetric but U({i},{j}) != U({j},{i})"
                        )
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_entries(
        cls,
        n: int,
        entries: Mapping[Tuple[int, int], Any],
        symmetric: bool = False,
        mirror: bool = False,
    ) -> "UtilityMatrix":
        """
        Build a matrix from sparse entries; missing pairs are 0.

        Args:
            n: Number of players
            entries: ``(i, j) -> value``; values may be ints, Fractions or ``"p/q"`` strings
            symmetric: Mark (and check) the matrix as symmetric
            mirror: Also write every entry to its transposed position

        Raises:
            ValidationError: On diagonal entries, bad indices or inexact values
        """
        rows = [[0 for _ in range(n)] for _ in range(n)]
        filled: Dict[Tuple[int, int], Rational] = {}
        for (i, j), raw in entries.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError("utilities", f"pair ({i}, {j}) is out of range")
            if i == j:
                raise ValidationError("utilities", f"diagonal entry U({i},{i}) must not be given")
            value = parse_rational(raw)
            targets = [(i, j), (j, i)] if mirror else [(i, j)]
            for a, b in targets:
                if (a, b) in filled and filled[(a, b)] != value:
                    raise ValidationError("utilities", f"conflicting values for U({a},{b})")
                filled[(a, b)] = value
                rows[a][b] = value
        return cls(tuple(tuple(row) for row in rows), symmetric=symmetric)

    @property
    def n(self) -> int:
        return len(self.rows)

    def u(self, i: int, j: int) -> Rational:
        return self.rows[i][j]

    def value(self, i: int, coalition: Iterable[int]) -> Rational:
        """Sum of ``i``'s utilities over the members of a coalition."""
        row = self.rows[i]
        return exact(sum((row[j] for j in coalition), 0))

    def entries(self) -> Iterator[Tuple[int, int, Rational]]:
        """Non-zero off-diagonal entries in row-major order."""
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if i != j and v != 0:
                    yield i, j, v

    def is_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.n) for j in range(i + 1, self.n)
        )

    def is_enemy_oriented(self) -> bool:
        """True iff every off-diagonal entry is 1 or -n."""
        allowed = (1, -self.n)
        return all(
            self.rows[i][j] in allowed for i in range(self.n) for j in range(self.n) if i != j
        )


@dataclass(frozen=True)
class ExplicitPreferences:
    """
    Tiered rankings of coalitions, best tier first.

    Attributes:
        rankings: ``rankings[i]`` is player ``i``'s tuple of tiers

    Example:
        >>> prefs = ExplicitPreferences(((frozenset({frozenset({0, 1})}),), ()))
        >>> prefs.rank(0, frozenset({0, 1}))
        0
    """

    rankings: Tuple[Tuple[Tier, ...], ...]

    def __post_init__(self) -> None:
        normalized = []
        for i, tiers in enumerate(self.rankings):
            seen: Dict[Coalition, int] = {}
            player_tiers = []
            for t, tier in enumerate(tiers):
                members = frozenset(frozenset(c) for c in tier)
                if not members:
                    raise ValidationError("rankings", f"player {i} has an empty tier {t}")
                for coalition in members:
                    if i not in coalition:
                        raise ValidationError(
                            "rankings", f"player {i} ranks {sorted(coalition)} without being in it"
                        )
                    if coalition in seen:
                        raise ValidationError(
                            "rankings",
                            f"player {i} lists {sorted(coalition)} in tiers "
                            f"{seen[coalition]} and {t}",
                        )
                    seen[coalition] = t
                player_tiers.append(members)
            normalized.append(tuple(player_tiers))
        object.__setattr__(self, "rankings", tuple(normalized))

    @property
    def n(self) -> int:
        return len(self.rankings)

    @cached_property
    def _ranks(self) -> Tuple[Dict[Coalition, int], ...]:
        return tuple(
            {coalition: t for t, tier in enumerate(tiers) for coalition in tier}
            for tiers in self.rankings
        )

    def rank(self, i: int, coalition: Coalition) -> Optional[int]:
        """Tier index of a listed coalition, or None if it is unlisted."""
        return self._ranks[i].get(coalition)

    def tier_count(self, i: int) -> int:
        return len(self.rankings[i])

    def listed(self, i: int) -> Iterator[Coalition]:
        for tier in self.rankings[i]:
            yield from tier


Preferences = Union[UtilityMatrix, ExplicitPreferences]


@dataclass(frozen=True)
class GameInstance:
    """
    A hedonic game on a communication graph.

    Attributes:
        graph: Communication graph
        preferences: Utility matrix or explicit rankings over the same players
    """

    graph: Graph
    preferences: Preferences

    def __post_init__(self) -> None:
        if self.preferences.n != self.graph.n:
            raise ValidationError(
                "preferences",
                f"describe {self.preferences.n} players but the graph has {self.graph.n}",
            )
        if isinstance(self.preferences, ExplicitPreferences):
            for i in range(self.graph.n):
                for coalition in self.preferences.listed(i):
                    if not all(0 <= j < self.graph.n for j in coalition):
                        raise ValidationError(
                            "rankings", f"{sorted(coalition)} has unknown players"
                        )
                    if not is_connected(self.graph, coalition):
                        raise ValidationError(
                            "rankings",
                            f"player {i} ranks disconnected coalition "
                            f"{self.graph.names(coalition)}",
                        )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def is_additive(self) -> bool:
        return isinstance(self.preferences, UtilityMatrix)

    @property
    def utilities(self) -> UtilityMatrix:
        """The utility matrix; raises NotAdditiveError for explicit games."""
        if not isinstance(self.preferences, UtilityMatrix):
            raise NotAdditiveError("utility lookup")
        return self.preferences


def _explicit_rank(game: GameInstance, prefs: ExplicitPreferences, i: int, x: Coalition) -> int:
    rank = prefs.rank(i, x)
    if rank is not None:
        return rank
    if not is_connected(game.graph, x):
        raise InfeasibleCoalitionError(x)
    return prefs.tier_count(i)


def compare(game: GameInstance, i: int, x: Coalition, y: Coalition) -> Ordering:
    """
    Compare two coalitions from player ``i``'s point of view.

    This is the preference oracle: every solver reads preferences only through
    it, and each call is reported to the active oracle counters.

    Args:
        game: The game
        i: Player index
        x: Coalition containing ``i``
        y: Coalition containing ``i``

    Returns:
        BETTER if ``x`` is strictly preferred to ``y``, EQUAL if indifferent, else WORSE

    Raises:
        PlayerNotMemberError: If ``i`` is missing from ``x`` or ``y``
        InfeasibleCoalitionError: If an explicit game is asked about a disconnected coalition

    Example:
        >>> compare(parliament3, c, frozenset({l, c}), frozenset({c, r}))
        <Ordering.BETTER: 'better'>
    """
    if i not in x:
        raise PlayerNotMemberError(i, x)
    if i not in y:
        raise PlayerNotMemberError(i, y)
    record_oracle_call()

    prefs = game.preferences
    if isinstance(prefs, UtilityMatrix):
        diff = prefs.value(i, x) - prefs.value(i, y)
    else:
        diff = _explicit_rank(game, prefs, i, y) - _explicit_rank(game, prefs, i, x)

    if diff > 0:
        return Ordering.BETTER
    if diff == 0:
        return Ordering.EQUAL
    return Ordering.WORSE


def weakly_prefers(game: GameInstance, i: int, x: Coalition, y: Coalition) -> bool:
    return compare(game, i, x, y) is not Ordering.WORSE


def strictly_prefers(game: GameInstance, i: int, x: Coalition, y: Coalition) -> bool:
    return compare(game, i, x, y) is Ordering.BETTER


def m_compare(game: GameInstance, x: Coalition, y: Coalition) -> bool:
    """
    Whether ``x`` m-dominates ``y``: they intersect and every common member weakly prefers ``x``.

    Example:
        >>> m_compare(parliament3, frozenset({l, c}), frozenset({l}))
        True
    """
    common = x & y
    if not common:
        return False
    return all(weakly_prefers(game, j, x, y) for j in sorted(common))


def individually_rational(game: GameInstance, x: Coalition) -> bool:
    """Whether every member weakly prefers ``x`` to being alone."""
    return all(weakly_prefers(game, j, x, frozenset([j])) for j in sorted(x))


def utility(game: GameInstance, i: int, j: int) -> Rational:
    """U(i, j) of an additive game."""
    return game.utilities.u(i, j)


def refine(game: GameInstance, cap: Optional[int] = DEFAULT_SUBSET_CAP) -> GameInstance:
    """
    Refine every player's preference into a strict total order.

    Within an indifference class, larger coalitions come first and equal sizes
    are ordered lexicographically by sorted members, so a proper superset is
    always strictly above its subsets. Strict preferences are kept.

    Args:
        game: Additive or explicit game
        cap: Maximum connected subsets per player (default: 10^6)

    Returns:
        An explicit game with one coalition per tier, covering every
        connected coalition of each player

    Raises:
        CapExceededError: If some player has more than ``cap`` connected coalitions

    Example:
        >>> strict = refine(parliament3)
        >>> [sorted(t) for (t,) in strict.preferences.rankings[c]][:2]
        [[0, 1, 2], [0, 1]]
    """
    rankings = []
    for i in range(game.n):
        candidates = list_connected_subsets(game.graph, anchor=i, cap=cap)

        def order(x: Coalition, y: Coalition, player: int = i) -> int:
            relation = compare(game, player, x, y)
            if relation is Ordering.BETTER:
                return -1
            if relation is Ordering.WORSE:
                return 1
            kx, ky = preference_tie_key(x), preference_tie_key(y)
            return (kx > ky) - (kx < ky)

        ordered = sorted(candidates, key=cmp_to_key(order))
        rankings.append(tuple(frozenset([coalition]) for coalition in ordered))

    logger.debug(f"Refined preferences of {game.n} player(s) into strict orders")
    return GameInstance(game.graph, ExplicitPreferences(tuple(rankings)))
