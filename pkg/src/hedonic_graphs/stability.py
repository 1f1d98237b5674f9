"""
@file stability.py
@description Partitions, stability concepts, deviations and the stability verifier
@module hedonic_graphs.stability
@author hedonic-graphs maintainers
@created 2026-10-17

A deviation moves one player ``i`` from her block into another block ``X`` of
the partition, or out on her own (target ``None``, forming ``{i}``). Only the
target's acceptance matters; the abandoned block is never consulted. Witness
search is deterministic: players by index, then the empty target, then blocks
in canonical coalition order.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from hedonic_graphs.exceptions import (
    InfeasiblePartitionError,
    TargetNotInPartitionError,
    ValidationError,
)
from hedonic_graphs.game import (
    GameInstance,
    Ordering,
    compare,
    strictly_prefers,
    weakly_prefers,
)
from hedonic_graphs.graph import (
    DEFAULT_SUBSET_CAP,
    Coalition,
    Graph,
    coalition_key,
    connected_subsets,
    is_connected,
)

logger = logging.getLogger(__name__)


class StabilityConcept(str, Enum):
    """The seven stability notions."""

    IR = "ir"
    IS = "is"
    NS = "ns"
    INS = "ins"
    IR_INS = "ir-ins"
    CR = "cr"
    SCR = "scr"

    @classmethod
    def parse(cls, text: str) -> "StabilityConcept":
        """
        Parse a concept tag, case-insensitively; ``ir_ins`` is accepted too.

        Raises:
            ValidationError: On an unknown tag
        """
        normalized = text.strip().lower().replace("_", "-")
        for concept in cls:
            if concept.value == normalized:
                return concept
        raise ValidationError("concept", f"unknown stability concept {text!r}")


INDIVIDUAL_CONCEPTS: Tuple[StabilityConcept, ...] = (
    StabilityConcept.NS,
    StabilityConcept.IS,
    StabilityConcept.INS,
    StabilityConcept.IR_INS,
)


class BlockKind(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


@dataclass(frozen=True)
class Partition:
    """
    A partition of the players into disjoint non-empty blocks.

    Blocks are stored ordered by their smallest member, so equal partitions
    compare equal regardless of input order.

    Example:
        >>> Partition.from_blocks([[2], [0, 1]]).blocks
        (frozenset({0, 1}), frozenset({2}))
    """

    blocks: Tuple[Coalition, ...]

    def __post_init__(self) -> None:
        blocks = [frozenset(b) for b in self.blocks]
        seen: FrozenSet[int] = frozenset()
        for block in blocks:
            if not block:
                raise ValidationError("partition", "blocks must be non-empty")
            if seen & block:
                raise ValidationError("partition", f"player(s) {sorted(seen & block)} appear twice")
            seen = seen | block
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=min)))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(frozenset(b) for b in blocks))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(frozenset([i]) for i in range(n)))

    @cached_property
    def _owner(self) -> Dict[int, Coalition]:
        return {i: block for block in self.blocks for i in block}

    @property
    def players(self) -> FrozenSet[int]:
        return frozenset(self._owner)

    def block_of(self, i: int) -> Coalition:
        """The block containing player ``i``."""
        try:
            return self._owner[i]
        except KeyError:
            raise ValidationError("partition", f"player {i} is not covered") from None

    def is_feasible(self, graph: Graph) -> bool:
        """Whether the partition covers exactly the graph's players with connected blocks."""
        return self.players == frozenset(range(graph.n)) and all(
            is_connected(graph, block) for block in self.blocks
        )


@dataclass(frozen=True)
class IndividualDeviation:
    """
    A single player's profitable move.

    Attributes:
        player: The deviating player
        target: Block she joins, or None for leaving to be alone
        concept: The concept this move violates
    """

    player: int
    target: Optional[Coalition]
    concept: StabilityConcept


@dataclass(frozen=True)
class BlockingCoalition:
    """A connected coalition that blocks the partition."""

    coalition: Coalition
    kind: BlockKind


Witness = Union[IndividualDeviation, BlockingCoalition]


@dataclass(frozen=True)
class Stable:
    """Verdict that no violation exists."""


STABLE = Stable()

Verdict = Union[Stable, IndividualDeviation, BlockingCoalition]


def check_feasible(game: GameInstance, partition: Partition) -> None:
    """
    Raise InfeasiblePartitionError unless the partition is feasible for the game.
    """
    expected = frozenset(range(game.n))
    if partition.players != expected:
        missing = sorted(expected - partition.players)
        extra = sorted(partition.players - expected)
        raise InfeasiblePartitionError(
            f"does not cover the players (missing {missing}, unknown {extra})"
        )
    for block in partition.blocks:
        if not is_connected(game.graph, block):
            raise InfeasiblePartitionError(f"block {game.graph.names(block)} is not connected")


def _joined(i: int, target: Optional[Coalition]) -> Coalition:
    return frozenset([i]) if not target else target | {i}


def is_deviation(
    game: GameInstance,
    i: int,
    current: Coalition,
    target: Optional[Coalition],
    concept: StabilityConcept,
) -> bool:
    """
    Whether moving ``i`` from ``current`` into ``target`` is a deviation of ``concept``.

    Only the comparisons the concept needs are made.
    """
    if concept not in INDIVIDUAL_CONCEPTS:
        raise ValidationError("concept", f"{concept.value} is not an individual-deviation concept")
    new = _joined(i, target)
    if not is_connected(game.graph, new):
        return False
    if not strictly_prefers(game, i, new, current):
        return False
    if not target or concept is StabilityConcept.NS:
        return True
    if concept is StabilityConcept.IS:
        return all(weakly_prefers(game, j, new, target) for j in sorted(target))
    neighbours = game.graph.adjacency[i] & target
    if not all(weakly_prefers(game, j, new, target) for j in sorted(neighbours)):
        return False
    if concept is StabilityConcept.INS:
        return True
    return all(weakly_prefers(game, j, new, frozenset([j])) for j in sorted(target))


def deviation_classes(
    game: GameInstance, i: int, current: Coalition, target: Optional[Coalition]
) -> FrozenSet[StabilityConcept]:
    """
    Every individual-deviation class a move satisfies.

    Moving to ``None`` forms ``{i}``; its acceptance conditions are vacuous.
    """
    new = _joined(i, target)
    if not is_connected(game.graph, new) or not strictly_prefers(game, i, new, current):
        return frozenset()
    if not target:
        return frozenset(INDIVIDUAL_CONCEPTS)

    kinds = {StabilityConcept.NS}
    accepts = {j: weakly_prefers(game, j, new, target) for j in sorted(target)}
    if all(accepts.values()):
        kinds.add(StabilityConcept.IS)
    if all(accepts[j] for j in game.graph.adjacency[i] & target):
        kinds.add(StabilityConcept.INS)
        if all(weakly_prefers(game, j, new, frozenset([j])) for j in sorted(target)):
            kinds.add(StabilityConcept.IR_INS)
    return frozenset(kinds)


def deviation_kind(
    game: GameInstance, partition: Partition, i: int, x: Optional[Coalition]
) -> FrozenSet[StabilityConcept]:
    """
    Classify the move of player ``i`` to block ``x`` (or to ``None``, being alone).

    Args:
        game: The game
        partition: Current partition
        i: Deviating player
        x: A block of ``partition`` other than ``i``'s, or None / empty for leaving alone

    Returns:
        The subset of {NS, IS, INS, IR_INS} the move satisfies; empty when
        ``x`` is ``i``'s own block or ``x`` plus ``i`` is disconnected

    Raises:
        TargetNotInPartitionError: If ``x`` is not a block of ``partition``

    Example:
        >>> deviation_kind(parliament3, Partition.singletons(3), c, frozenset({l}))
        frozenset({NS, IS, INS, IR_INS})
    """
    target = frozenset(x) if x else None
    if target is not None and target not in partition.blocks:
        raise TargetNotInPartitionError(target)
    current = partition.block_of(i)
    if target == current:
        return frozenset()
    return deviation_classes(game, i, current, target)


def _targets(partition: Partition) -> List[Optional[Coalition]]:
    return [None] + sorted(partition.blocks, key=coalition_key)


def all_deviations(
    game: GameInstance, partition: Partition, concept: StabilityConcept
) -> Iterator[IndividualDeviation]:
    """
    Every deviation of an individual concept, in deterministic order.

    The partition's blocks are assumed connected, so a block is a feasible
    target exactly when it contains a neighbour of the deviator.
    """
    if concept not in INDIVIDUAL_CONCEPTS:
        raise ValidationError("concept", f"{concept.value} is not an individual-deviation concept")
    targets = _targets(partition)
    for i in range(game.n):
        current = partition.block_of(i)
        neighbours = game.graph.adjacency[i]
        for target in targets:
            if target is None:
                if len(current) == 1:
                    continue
            elif target == current or not (neighbours & target):
                continue
            if is_deviation(game, i, current, target, concept):
                yield IndividualDeviation(i, target, concept)


def first_deviation(
    game: GameInstance, partition: Partition, concept: StabilityConcept
) -> Optional[IndividualDeviation]:
    return next(all_deviations(game, partition, concept), None)


def _blocking_kind(
    game: GameInstance, partition: Partition, x: Coalition, strong_only: bool
) -> Optional[BlockKind]:
    any_better = False
    all_better = True
    for j in sorted(x):
        relation = compare(game, j, x, partition.block_of(j))
        if relation is Ordering.WORSE:
            return None
        if relation is Ordering.BETTER:
            any_better = True
        else:
            all_better = False
            if strong_only:
                return None
    if all_better:
        return BlockKind.STRONG
    return BlockKind.WEAK if any_better else None


def verify(
    game: GameInstance,
    partition: Partition,
    concept: StabilityConcept,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
) -> Verdict:
    """
    Decide whether a feasible partition is stable under ``concept``.

    Args:
        game: The game
        partition: A feasible partition
        concept: Stability concept to check
        cap: Connected-subset cap for CR/SCR (default: 10^6)

    Returns:
        ``STABLE``, or the first witness in deterministic order

    Raises:
        InfeasiblePartitionError: If the partition is not feasible
        CapExceededError: If CR/SCR enumeration exceeds ``cap``

    Example:
        >>> verify(parliament3, pi1, StabilityConcept.NS)
        IndividualDeviation(player=2, target=frozenset({0, 1}), concept=<StabilityConcept.NS: 'ns'>)
    """
    check_feasible(game, partition)

    if concept is StabilityConcept.IR:
        for i in range(game.n):
            singleton = frozenset([i])
            if not weakly_prefers(game, i, partition.block_of(i), singleton):
                return IndividualDeviation(i, None, concept)
        return STABLE

    if concept in INDIVIDUAL_CONCEPTS:
        witness = first_deviation(game, partition, concept)
        return STABLE if witness is None else witness

    strong_only = concept is StabilityConcept.CR
    for x in connected_subsets(game.graph, cap=cap):
        kind = _blocking_kind(game, partition, x, strong_only)
        if kind is not None:
            return BlockingCoalition(x, kind)
    return STABLE


def is_stable(
    game: GameInstance,
    partition: Partition,
    concept: StabilityConcept,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
) -> bool:
    return isinstance(verify(game, partition, concept, cap), Stable)


def witness_holds(game: GameInstance, partition: Partition, witness: Witness) -> bool:
    """
    Re-check a witness against the partition it was issued for.

    Example:
        >>> witness_holds(game, pi, verify(game, pi, StabilityConcept.NS))
        True
    """
    if isinstance(witness, BlockingCoalition):
        x = witness.coalition
        if not x or not is_connected(game.graph, x):
            return False
        kind = _blocking_kind(game, partition, x, strong_only=False)
        if witness.kind is BlockKind.STRONG:
            return kind is BlockKind.STRONG
        return kind is not None

    i = witness.player
    if witness.concept is StabilityConcept.IR:
        return not weakly_prefers(game, i, partition.block_of(i), frozenset([i]))
    return witness.concept in deviation_kind(game, partition, i, witness.target)
