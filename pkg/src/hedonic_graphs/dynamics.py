"""
@file dynamics.py
@description Better-response deviation dynamics and the welfare potential
@module hedonic_graphs.dynamics
@author hedonic-graphs maintainers
@created 2026-10-17
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from hedonic_graphs.exceptions import InfeasibleStartError, ValidationError
from hedonic_graphs.game import GameInstance, UtilityMatrix
from hedonic_graphs.graph import Coalition, connected_components
from hedonic_graphs.stability import (
    INDIVIDUAL_CONCEPTS,
    IndividualDeviation,
    Partition,
    StabilityConcept,
    all_deviations,
    first_deviation,
)
from hedonic_graphs.validators import Rational, exact

logger = logging.getLogger(__name__)


class DynamicsOutcome(str, Enum):
    CONVERGED = "converged"
    STEP_LIMIT = "step-limit"


@dataclass(frozen=True)
class DynamicsStep:
    """
    One applied deviation.

    Attributes:
        player: The deviating player
        source: Her block before the move
        target: The block she joined, or None when she left to be alone
        potential_before: Welfare before the move (additive games only)
        potential_after: Welfare after the move, abandoned block split included
        local_delta: Welfare change had the abandoned block stayed together
        split: Whether the abandoned block fell apart into several components
    """

    player: int
    source: Coalition
    target: Optional[Coalition]
    potential_before: Optional[Rational]
    potential_after: Optional[Rational]
    local_delta: Optional[Rational]
    split: bool


@dataclass(frozen=True)
class DynamicsTrace:
    steps: Tuple[DynamicsStep, ...]
    terminal: Partition
    outcome: DynamicsOutcome


def potential(game: GameInstance, partition: Partition) -> Rational:
    """
    Total welfare: the sum over players of their utility for their own block.

    Raises:
        NotAdditiveError: If the game has explicit preferences

    Example:
        >>> potential(parliament3, Partition.from_blocks([[0, 1], [2]]))
        3
    """
    matrix = game.utilities
    return exact(sum((matrix.value(i, block) for block in partition.blocks for i in block), 0))


def _local_delta(
    matrix: UtilityMatrix, i: int, source: Coalition, target: Optional[Coalition]
) -> Rational:
    joined = frozenset([i]) if target is None else target | {i}
    remainder = source - {i}
    gain = matrix.value(i, joined) - matrix.value(i, source)
    received = sum((matrix.u(j, i) for j in joined - {i}), 0)
    lost = sum((matrix.u(j, i) for j in remainder), 0)
    return exact(gain + received - lost)


def apply_deviation(
    game: GameInstance, partition: Partition, deviation: IndividualDeviation
) -> Tuple[Partition, bool]:
    """
    Move a player and repair the abandoned block.

    Returns:
        The new partition and whether the abandoned block was split into
        its connected components
    """
    i, target = deviation.player, deviation.target
    source = partition.block_of(i)
    pieces = connected_components(game.graph, source - {i})
    joined = frozenset([i]) if target is None else target | {i}
    kept = [b for b in partition.blocks if b != source and b != target]
    return Partition(tuple(kept + [joined] + pieces)), len(pieces) > 1


def _check_start(game: GameInstance, start: Partition) -> None:
    if start.players != frozenset(range(game.n)):
        raise InfeasibleStartError("start partition does not cover exactly the players")
    if not start.is_feasible(game.graph):
        raise InfeasibleStartError("start partition has a disconnected block")


def run_dynamics(
    game: GameInstance,
    start: Optional[Partition] = None,
    rule: StabilityConcept = StabilityConcept.NS,
    max_steps: int = 1000,
    seed: Optional[int] = None,
) -> DynamicsTrace:
    """
    Apply deviations of ``rule`` until none is left or the step limit is reached.

    Without a seed the first deviation in deterministic order is applied
    (players by index, then the empty target, then blocks in canonical order).
    With a seed the deviation is drawn uniformly among all of them.

    Args:
        game: The game
        start: Starting feasible partition (default: all singletons)
        rule: NS, IS, INS or IR_INS
        max_steps: Maximum number of applied deviations
        seed: Seed of the random policy

    Returns:
        The trace; a CONVERGED terminal is stable under ``rule``

    Raises:
        InfeasibleStartError: If ``start`` is not a feasible partition
        ValidationError: If ``rule`` is not an individual-deviation concept

    Example:
        >>> run_dynamics(parliament3, max_steps=100).outcome
        <DynamicsOutcome.STEP_LIMIT: 'step-limit'>
    """
    if rule not in INDIVIDUAL_CONCEPTS:
        raise ValidationError("rule", f"{rule.value} has no individual deviations")
    partition = start if start is not None else Partition.singletons(game.n)
    _check_start(game, partition)

    matrix = game.preferences if isinstance(game.preferences, UtilityMatrix) else None
    rng = random.Random(seed) if seed is not None else None
    steps: List[DynamicsStep] = []

    def next_deviation(current: Partition) -> Optional[IndividualDeviation]:
        if rng is None:
            return first_deviation(game, current, rule)
        options = list(all_deviations(game, current, rule))
        return rng.choice(options) if options else None

    deviation = next_deviation(partition)
    while deviation is not None and len(steps) < max_steps:
        source = partition.block_of(deviation.player)
        before = potential(game, partition) if matrix is not None else None
        partition, split = apply_deviation(game, partition, deviation)
        after = potential(game, partition) if matrix is not None else None
        delta = (
            _local_delta(matrix, deviation.player, source, deviation.target)
            if matrix is not None
            else None
        )
        steps.append(
            DynamicsStep(deviation.player, source, deviation.target, before, after, delta, split)
        )
        deviation = next_deviation(partition)

    if deviation is None:
        logger.debug(f"Dynamics converged after {len(steps)} step(s)")
        return DynamicsTrace(tuple(steps), partition, DynamicsOutcome.CONVERGED)
    logger.warning(f"Dynamics stopped at the step limit ({max_steps}) without converging")
    return DynamicsTrace(tuple(steps), partition, DynamicsOutcome.STEP_LIMIT)
