"""
@file solvers.py
@description Constructive stability solvers for forests and stars
@module hedonic_graphs.solvers
@author hedonic-graphs maintainers
@created 2026-10-17

Forest solvers handle every component on its own (given root for its
component, lowest index elsewhere) and union the results. Every "pick a best
coalition" step breaks ties by size descending, then lexicographically.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from hedonic_graphs.exceptions import (
    NotAStarError,
    NotEnemyOrientedError,
    SolverInvariantError,
    ValidationError,
)
from hedonic_graphs.game import (
    GameInstance,
    UtilityMatrix,
    individually_rational,
    m_compare,
    refine,
    strictly_prefers,
    weakly_prefers,
)
from hedonic_graphs.graph import (
    DEFAULT_SUBSET_CAP,
    Coalition,
    RootedTree,
    classify,
    list_connected_subsets,
    preference_tie_key,
    root_forest,
    star_center,
)
from hedonic_graphs.stability import (
    Partition,
    Stable,
    StabilityConcept,
    is_deviation,
    verify,
)

logger = logging.getLogger(__name__)

BlockChangeListener = Callable[[Coalition, Coalition], None]

DP_CONCEPTS = (StabilityConcept.NS, StabilityConcept.INS, StabilityConcept.IR_INS)


def _best_for(game: GameInstance, i: int, options: Sequence[Coalition]) -> Coalition:
    """A most preferred option of player ``i``, first in tie-break order among equals."""
    ordered = sorted(options, key=preference_tie_key)
    best = ordered[0]
    for option in ordered[1:]:
        if strictly_prefers(game, i, option, best):
            best = option
    return best


def _debug_check(
    game: GameInstance,
    partition: Partition,
    concepts: Sequence[StabilityConcept],
    solver: str,
    cap: Optional[int],
) -> None:
    for concept in concepts:
        verdict = verify(game, partition, concept, cap=cap)
        if not isinstance(verdict, Stable):
            logger.error(f"{solver} output failed {concept.value} verification: {verdict}")
            raise SolverInvariantError(solver, concept.value, verdict)
    logger.debug(f"{solver} output passed {', '.join(c.value for c in concepts)} verification")


@dataclass
class IsSolverState:
    """Per-node bookkeeping of the individually stable solver."""

    best: Dict[int, Coalition] = field(default_factory=dict)
    admissible: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    blocks: Dict[int, List[Coalition]] = field(default_factory=dict)


def _solve_is_tree(
    game: GameInstance, tree: RootedTree, on_block_change: Optional[BlockChangeListener]
) -> List[Coalition]:
    def changed(before: Coalition, after: Coalition) -> None:
        if on_block_change is not None:
            on_block_change(before, after)

    state = IsSolverState()
    for i in tree.bottom_up():
        singleton = frozenset([i])
        state.admissible[i] = tuple(
            k for k in tree.children[i] if m_compare(game, state.best[k] | {i}, state.best[k])
        )
        block = _best_for(
            game, i, [singleton] + [state.best[k] | {i} for k in state.admissible[i]]
        )
        changed(singleton, block)
        for k in state.admissible[i]:
            if state.best[k] <= block:
                changed(state.best[k], block)

        absorbed = True
        while absorbed:
            absorbed = False
            for j in tree.ch(block):
                extended = block | {j}
                if strictly_prefers(game, j, extended, state.best[j]) and m_compare(
                    game, extended, block
                ):
                    changed(block, extended)
                    changed(state.best[j], extended)
                    block = extended
                    absorbed = True
                    break

        state.best[i] = block
        state.blocks[i] = [block] + [b for k in tree.ch(block) for b in state.blocks[k]]
        logger.debug(f"Node {i}: block {sorted(block)}")

    return state.blocks[tree.root]


def solve_is(
    game: GameInstance,
    root: Optional[int] = None,
    on_block_change: Optional[BlockChangeListener] = None,
    debug_verify: bool = False,
) -> Partition:
    """
    Find an individually stable feasible partition of a forest game.

    Nodes are processed bottom-up. Each node joins the best block offered by
    children whose members agree, then absorbs further children (lowest index
    first, rescanning after every absorption) as long as the child strictly
    gains and the block's members do not lose.

    Args:
        game: Game on a forest
        root: Optional root for its component
        on_block_change: Called as ``(before, after)`` each time a block grows;
            members of ``before`` moving to ``after`` never lose
        debug_verify: Re-verify the output for IS

    Returns:
        A feasible, individually rational, individually stable partition

    Raises:
        NotAForestError: If the graph has a cycle

    Example:
        >>> solve_is(parliament3, root=c).blocks
        (frozenset({0, 1}), frozenset({2}))
    """
    blocks: List[Coalition] = []
    for tree in root_forest(game.graph, root):
        blocks.extend(_solve_is_tree(game, tree, on_block_change))
    partition = Partition(tuple(blocks))
    logger.debug(f"IS solver produced {len(partition.blocks)} block(s)")
    if debug_verify:
        _debug_check(game, partition, [StabilityConcept.IS], "solve_is", None)
    return partition


def _solve_core_tree(game: GameInstance, tree: RootedTree, cap: Optional[int]) -> List[Coalition]:
    guarantee: Dict[int, Coalition] = {}
    for i in tree.bottom_up():
        candidates = [
            x
            for x in list_connected_subsets(game.graph, anchor=i, within=tree.succ(i), cap=cap)
            if all(weakly_prefers(game, j, x, guarantee[j]) for j in sorted(x - {i}))
        ]
        guarantee[i] = _best_for(game, i, candidates)
        logger.debug(
            f"Node {i}: {len(candidates)} candidate(s), guarantee {sorted(guarantee[i])}"
        )

    blocks: List[Coalition] = []
    heads = [tree.root]
    while heads:
        head = heads.pop()
        block = guarantee[head]
        blocks.append(block)
        heads.extend(reversed(tree.ch(block)))
    return blocks


def solve_core(
    game: GameInstance,
    root: Optional[int] = None,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
    debug_verify: bool = False,
) -> Partition:
    """
    Find a core stable feasible partition of a forest game.

    Bottom-up, each node's guarantee is its best connected coalition inside
    its subtree that every other member weakly prefers to her own guarantee.
    Top-down, the root's guarantee is placed, then the guarantees of the
    nodes hanging below it, and so on.

    Args:
        game: Game on a forest
        root: Optional root for its component
        cap: Connected-subset cap per node
        debug_verify: Re-verify the output for CR

    Raises:
        NotAForestError: If the graph has a cycle
        CapExceededError: If a node has more than ``cap`` candidate coalitions

    Example:
        >>> solve_core(parliament3, root=c).blocks
        (frozenset({0, 1}), frozenset({2}))
    """
    blocks: List[Coalition] = []
    for tree in root_forest(game.graph, root):
        blocks.extend(_solve_core_tree(game, tree, cap))
    partition = Partition(tuple(blocks))
    if debug_verify:
        _debug_check(game, partition, [StabilityConcept.CR], "solve_core", cap)
    return partition


def solve_core_is(
    game: GameInstance,
    root: Optional[int] = None,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
    debug_verify: bool = False,
) -> Partition:
    """
    Find a partition that is both core stable and individually stable.

    Runs the core solver on the strict refinement of the game; the result is
    judged against the original preferences.

    Raises:
        NotAForestError: If the graph has a cycle
        CapExceededError: If some player has more than ``cap`` connected coalitions
    """
    strict = refine(game, cap=cap)
    partition = solve_core(strict, root=root, cap=cap)
    if debug_verify:
        _debug_check(
            game, partition, [StabilityConcept.CR, StabilityConcept.IS], "solve_core_is", cap
        )
    return partition


@dataclass
class DpTable:
    """
    Memo of the existence recursion on one rooted tree.

    Attributes:
        feasible: Whether each coalition heads a stable partition of the subtree below it
        witness: For ``(X, j)`` with ``j`` a child of ``X``, a stable block chosen for ``j``
        candidates: Per node, the connected coalitions it heads, in canonical order
    """

    feasible: Dict[Coalition, bool] = field(default_factory=dict)
    witness: Dict[Tuple[Coalition, int], Coalition] = field(default_factory=dict)
    candidates: Dict[int, Tuple[Coalition, ...]] = field(default_factory=dict)


def build_dp_table(
    game: GameInstance,
    tree: RootedTree,
    concept: StabilityConcept,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
) -> DpTable:
    """
    Fill the existence table of one rooted tree for NS, INS or IR_INS.

    A coalition ``X`` headed by ``i`` survives when it is individually rational
    and every child ``j`` of ``X`` has a surviving block ``X_j`` such that
    neither ``j`` wants to move into ``X`` nor ``j``'s parent into ``X_j``.
    On a tree these are the only moves across the border of ``X``.
    """
    table = DpTable()
    for i in tree.bottom_up():
        table.candidates[i] = list_connected_subsets(
            game.graph, anchor=i, within=tree.succ(i), cap=cap
        )
        for x in table.candidates[i]:
            table.feasible[x] = individually_rational(game, x) and _children_settle(
                game, tree, concept, table, x
            )
    logger.debug(
        f"DP table for root {tree.root}: {len(table.feasible)} coalition(s), "
        f"{sum(table.feasible.values())} surviving"
    )
    return table


def _children_settle(
    game: GameInstance,
    tree: RootedTree,
    concept: StabilityConcept,
    table: DpTable,
    x: Coalition,
) -> bool:
    for j in tree.ch(x):
        parent = tree.parent[j]
        chosen = None
        for xj in table.candidates[j]:
            if not table.feasible[xj]:
                continue
            if is_deviation(game, j, xj, x, concept) or is_deviation(game, parent, x, xj, concept):
                continue
            chosen = xj
            break
        if chosen is None:
            return False
        table.witness[(x, j)] = chosen
    return True


def _reconstruct(tree: RootedTree, table: DpTable) -> Optional[List[Coalition]]:
    top = next((x for x in table.candidates[tree.root] if table.feasible[x]), None)
    if top is None:
        return None
    blocks: List[Coalition] = []
    pending = [top]
    while pending:
        x = pending.pop()
        blocks.append(x)
        pending.extend(table.witness[(x, j)] for j in tree.ch(x))
    return blocks


def solve_dp(
    game: GameInstance,
    concept: StabilityConcept,
    root: Optional[int] = None,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
    debug_verify: bool = False,
) -> Optional[Partition]:
    """
    Decide whether a forest game has an NS, INS or IR_INS feasible partition, and build one.

    Args:
        game: Game on a forest
        concept: One of NS, INS, IR_INS
        root: Optional root for its component
        cap: Connected-subset cap per node
        debug_verify: Re-verify a constructed partition for ``concept``

    Returns:
        A stable partition, or None when none exists

    Raises:
        NotAForestError: If the graph has a cycle
        ValidationError: If ``concept`` is not supported
        CapExceededError: If a node has more than ``cap`` coalitions

    Example:
        >>> solve_dp(parliament3, StabilityConcept.NS) is None
        True
    """
    if concept not in DP_CONCEPTS:
        raise ValidationError(
            "concept", f"dynamic programming supports ns, ins, ir-ins, not {concept.value}"
        )

    blocks: List[Coalition] = []
    for tree in root_forest(game.graph, root):
        found = _reconstruct(tree, build_dp_table(game, tree, concept, cap))
        if found is None:
            logger.debug(f"No {concept.value} partition on the component rooted at {tree.root}")
            return None
        blocks.extend(found)

    partition = Partition(tuple(blocks))
    if debug_verify:
        _debug_check(game, partition, [concept], "solve_dp", cap)
    return partition


def _require_star(game: GameInstance) -> int:
    center = star_center(game.graph)
    if center is None:
        raise NotAStarError(classify(game.graph).value)
    return center


def star_greedy_ir_ins(game: GameInstance, debug_verify: bool = False) -> Partition:
    """
    Build an IR-in-neighbour stable partition of a star game greedily.

    The center starts from her favourite pair among those the leaf accepts
    (lowest leaf index among equals). If she prefers being alone to all of
    them, everyone stays alone. Otherwise leaves join, lowest index first,
    while joining is an IR-in-neighbour deviation.

    Raises:
        NotAStarError: If the graph is not a star

    Example:
        >>> star_greedy_ir_ins(hostile_star) == Partition.singletons(hostile_star.n)
        True
    """
    center = _require_star(game)
    leaves = [j for j in range(game.n) if j != center]
    alone = frozenset([center])

    pairs = [
        frozenset([center, j])
        for j in leaves
        if weakly_prefers(game, j, frozenset([center, j]), frozenset([j]))
    ]
    acceptable = [pair for pair in pairs if weakly_prefers(game, center, pair, alone)]
    if not acceptable:
        logger.debug("Star center prefers being alone; returning singletons")
        return Partition.singletons(game.n)

    coalition = acceptable[0]
    for pair in acceptable[1:]:
        if strictly_prefers(game, center, pair, coalition):
            coalition = pair

    while True:
        joiner = next(
            (
                j
                for j in leaves
                if j not in coalition
                and is_deviation(game, j, frozenset([j]), coalition, StabilityConcept.IR_INS)
            ),
            None,
        )
        if joiner is None:
            break
        coalition = coalition | {joiner}

    rest = tuple(frozenset([j]) for j in leaves if j not in coalition)
    partition = Partition((coalition,) + rest)
    if debug_verify:
        _debug_check(game, partition, [StabilityConcept.IR_INS], "star_greedy_ir_ins", None)
    return partition


def _enemy_matrix(game: GameInstance) -> UtilityMatrix:
    if not isinstance(game.preferences, UtilityMatrix):
        raise NotEnemyOrientedError("preferences are explicit rankings")
    matrix = game.preferences
    if not matrix.is_enemy_oriented():
        raise NotEnemyOrientedError(f"utilities must all be 1 or -{matrix.n}")
    if not matrix.is_symmetric():
        raise NotEnemyOrientedError("utilities are not symmetric")
    return matrix


def star_greedy_enemy_ns(game: GameInstance, debug_verify: bool = False) -> Partition:
    """
    Build a Nash stable partition of a symmetric enemy-oriented star game.

    The center's coalition grows by the lowest-index player who is a friend of
    every current member; everyone else stays alone.

    Raises:
        NotAStarError: If the graph is not a star
        NotEnemyOrientedError: If utilities are not symmetric enemy-oriented
    """
    center = _require_star(game)
    matrix = _enemy_matrix(game)

    coalition = frozenset([center])
    while True:
        friend = next(
            (
                j
                for j in range(game.n)
                if j not in coalition
                and all(matrix.u(j, m) == 1 and matrix.u(m, j) == 1 for m in coalition)
            ),
            None,
        )
        if friend is None:
            break
        coalition = coalition | {friend}

    others = tuple(frozenset([j]) for j in range(game.n) if j not in coalition)
    partition = Partition((coalition,) + others)
    if debug_verify:
        _debug_check(game, partition, [StabilityConcept.NS], "star_greedy_enemy_ns", None)
    return partition
