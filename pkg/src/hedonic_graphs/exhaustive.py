"""
@file exhaustive.py
@description Brute-force ground truth for stability, cliques and local max cuts
@module hedonic_graphs.exhaustive
@author hedonic-graphs maintainers
@created 2026-10-17

These oracles exist for desk-scale cross-checks. Every enumeration runs under
an EnumerationBudget and raises BudgetExceededError instead of truncating.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from contextvars import copy_context
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import networkx as nx

from hedonic_graphs.config import EnumerationBudget
from hedonic_graphs.exceptions import BudgetExceededError
from hedonic_graphs.game import GameInstance
from hedonic_graphs.graph import (
    Coalition,
    Graph,
    WeightedGraph,
    coalition_key,
    connected_subsets,
)
from hedonic_graphs.stability import Partition, StabilityConcept, is_stable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CliqueResult:
    """
    Maximum clique of a graph.

    Attributes:
        size: Clique number
        clique: A maximum clique, first in canonical order
        unique: Whether it is the only clique of that size
    """

    size: int
    clique: Coalition
    unique: bool


@dataclass(frozen=True)
class Cut:
    """A bipartition ``(side_a, side_b)``; ``side_a`` holds node 0."""

    side_a: Coalition
    side_b: Coalition
    weight: int


def enumerate_feasible_partitions(
    graph: Graph, budget: Optional[EnumerationBudget] = None
) -> Iterator[Partition]:
    """
    Stream every partition of the players into connected blocks, each exactly once.

    The lowest unassigned player picks each connected block containing her
    within the unassigned players, then the rest is partitioned recursively.

    Args:
        graph: Communication graph
        budget: Enumeration limits (defaults to ``EnumerationBudget()``)

    Yields:
        Feasible partitions in deterministic order

    Raises:
        BudgetExceededError: After ``budget.max_partitions`` partitions

    Example:
        >>> sum(1 for _ in enumerate_feasible_partitions(path_of(5)))
        16
    """
    budget = budget or EnumerationBudget()
    emitted = 0

    def extend(unassigned: Coalition, blocks: Tuple[Coalition, ...]) -> Iterator[Partition]:
        nonlocal emitted
        if not unassigned:
            emitted += 1
            if emitted > budget.max_partitions:
                raise BudgetExceededError("feasible partitions", budget.max_partitions)
            yield Partition(blocks)
            return
        lowest = min(unassigned)
        for block in connected_subsets(
            graph, anchor=lowest, within=unassigned, cap=budget.max_subsets
        ):
            yield from extend(unassigned - block, blocks + (block,))

    yield from extend(frozenset(range(graph.n)), ())
    logger.debug(f"Enumerated {emitted} feasible partition(s) on {graph.n} player(s)")


def find_stable_exhaustive(
    game: GameInstance,
    concept: StabilityConcept,
    budget: Optional[EnumerationBudget] = None,
    threads: int = 1,
) -> List[Partition]:
    """
    All feasible partitions that are stable under ``concept``, in enumeration order.

    Args:
        game: The game
        concept: Any stability concept, SCR included
        budget: Enumeration limits
        threads: Worker threads for verification; the result does not depend on it

    Raises:
        BudgetExceededError: If an enumeration exceeds the budget

    Example:
        >>> find_stable_exhaustive(parliament3, StabilityConcept.NS)
        []
    """
    budget = budget or EnumerationBudget()
    partitions = enumerate_feasible_partitions(game.graph, budget)

    def stable(partition: Partition) -> bool:
        return is_stable(game, partition, concept, cap=budget.max_subsets)

    if threads <= 1:
        found = [p for p in partitions if stable(p)]
    else:
        candidates = list(partitions)
        contexts = [copy_context() for _ in candidates]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(lambda ctx, p: ctx.run(stable, p), contexts, candidates))
        found = [p for p, ok in zip(candidates, verdicts) if ok]

    logger.debug(f"{len(found)} {concept.value}-stable partition(s) found exhaustively")
    return found


def first_stable_exhaustive(
    game: GameInstance,
    concept: StabilityConcept,
    budget: Optional[EnumerationBudget] = None,
) -> Optional[Partition]:
    """The first stable feasible partition in enumeration order, or None."""
    budget = budget or EnumerationBudget()
    return next(
        (
            p
            for p in enumerate_feasible_partitions(game.graph, budget)
            if is_stable(game, p, concept, cap=budget.max_subsets)
        ),
        None,
    )


def has_stable_exhaustive(
    game: GameInstance,
    concept: StabilityConcept,
    budget: Optional[EnumerationBudget] = None,
) -> bool:
    """Whether some feasible partition is stable; stops at the first one."""
    return first_stable_exhaustive(game, concept, budget) is not None


def max_clique_bruteforce(graph: Graph, budget: Optional[EnumerationBudget] = None) -> CliqueResult:
    """
    Maximum clique size, a witness, and whether the maximum clique is unique.

    Every maximum clique is maximal, so the maximal cliques suffice.

    Raises:
        BudgetExceededError: If the graph has more than ``budget.max_clique_nodes`` nodes

    Example:
        >>> max_clique_bruteforce(cycle_of(4))
        CliqueResult(size=2, clique=frozenset({0, 1}), unique=False)
    """
    budget = budget or EnumerationBudget()
    if graph.n > budget.max_clique_nodes:
        raise BudgetExceededError("clique nodes", budget.max_clique_nodes)
    cliques = (frozenset(c) for c in nx.find_cliques(graph.to_networkx()))
    maximal = sorted(cliques, key=coalition_key)
    size = max(len(c) for c in maximal)
    largest = [c for c in maximal if len(c) == size]
    return CliqueResult(size=size, clique=largest[0], unique=len(largest) == 1)


def is_local_max_cut(wg: WeightedGraph, side: Coalition) -> bool:
    """No single node gains cut weight by switching sides."""
    for v in range(wg.n):
        same = sum(wg.w(v, u) for u in wg.graph.adjacency[v] if (u in side) == (v in side))
        other = sum(wg.w(v, u) for u in wg.graph.adjacency[v] if (u in side) != (v in side))
        if same > other:
            return False
    return True


def local_maxcut_bruteforce(
    wg: WeightedGraph, budget: Optional[EnumerationBudget] = None
) -> List[Cut]:
    """
    Every locally optimal cut, as unordered bipartitions with node 0 on side A.

    Raises:
        BudgetExceededError: If the graph has more than ``budget.max_cut_nodes`` nodes

    Example:
        >>> [sorted(c.side_a) for c in local_maxcut_bruteforce(unit_triangle)]
        [[0, 1], [0, 2], [0]]
    """
    budget = budget or EnumerationBudget()
    if wg.n > budget.max_cut_nodes:
        raise BudgetExceededError("cut nodes", budget.max_cut_nodes)

    everyone = frozenset(range(wg.n))
    cuts: List[Cut] = []
    for bits in itertools.product([0, 1], repeat=wg.n - 1):
        side_a = frozenset([0]) | {v for v, bit in enumerate(bits, start=1) if bit == 0}
        if is_local_max_cut(wg, side_a):
            cuts.append(Cut(side_a, everyone - side_a, wg.cut_weight(side_a)))
    logger.debug(f"{len(cuts)} local max cut(s) among {2 ** (wg.n - 1)} bipartition(s)")
    return cuts
