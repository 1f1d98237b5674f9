"""
@file toolkit.py
@description Library facade: solver dispatch, verification, enumeration, generation, dynamics
@module hedonic_graphs.toolkit
@author hedonic-graphs maintainers
@created 2026-10-17
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple, Union

from hedonic_graphs.cache import CacheManager
from hedonic_graphs.config import HedonicConfig
from hedonic_graphs.dynamics import DynamicsTrace, run_dynamics
from hedonic_graphs.exceptions import BadParameterError, HedonicGraphError, ValidationError
from hedonic_graphs.exhaustive import (
    enumerate_feasible_partitions,
    find_stable_exhaustive,
    first_stable_exhaustive,
)
from hedonic_graphs.game import GameInstance, UtilityMatrix
from hedonic_graphs.generators import (
    FIXTURES,
    cycle_no_is,
    fixture,
    random_instance,
    reduce_clique_enemy_star,
    reduce_clique_ins_star,
    reduce_clique_irins_tree,
    reduce_clique_scr_star,
    reduce_maxcut_star,
    unique_clique_family,
)
from hedonic_graphs.graph import (
    Coalition,
    Graph,
    WeightedGraph,
    configure_subset_cache,
    list_connected_subsets,
    star_center,
)
from hedonic_graphs.oracle import count_oracle_calls
from hedonic_graphs.solvers import (
    solve_core,
    solve_core_is,
    solve_dp,
    solve_is,
    star_greedy_enemy_ns,
    star_greedy_ir_ins,
)
from hedonic_graphs.stability import STABLE, Partition, Stable, StabilityConcept, Verdict, verify

logger = logging.getLogger(__name__)

SOLVE_CONCEPTS = ("is", "cr", "cr-is", "ns", "ins", "ir-ins", "scr")

FAMILIES = tuple(FIXTURES) + (
    "cycle-no-is",
    "enemy-star",
    "scr-star",
    "ins-star",
    "irins-tree",
    "maxcut-star",
    "unique-clique",
    "random",
)

SCR_WARNING = "scr has no polynomial construction; answered by exhaustive search"


def normalize_concept(concept: str) -> str:
    return concept.strip().lower().replace("_", "-")


def _is_enemy_star(game: GameInstance) -> bool:
    prefs = game.preferences
    return (
        isinstance(prefs, UtilityMatrix)
        and star_center(game.graph) is not None
        and prefs.is_enemy_oriented()
        and prefs.is_symmetric()
    )


def select_solver(game: GameInstance, concept: str) -> str:
    """
    Name the solver that answers ``solve`` for a concept on this game.

    Forest concepts go to their tree solver whatever the topology; the solver
    itself rejects cyclic graphs. Stars take the greedy fast paths where one
    applies, and SCR is always exhaustive.

    Raises:
        ValidationError: On an unknown concept

    Example:
        >>> select_solver(fixture("parliament3"), "ns")
        'dp'
    """
    concept = normalize_concept(concept)
    if concept not in SOLVE_CONCEPTS:
        raise ValidationError("concept", f"must be one of {', '.join(SOLVE_CONCEPTS)}")
    if concept == "is":
        return "tree-is"
    if concept == "cr":
        return "core"
    if concept == "cr-is":
        return "core-is"
    if concept == "scr":
        return "exhaustive"
    if concept == "ir-ins" and star_center(game.graph) is not None:
        return "star-greedy-ir-ins"
    if concept == "ns" and _is_enemy_star(game):
        return "star-greedy-enemy-ns"
    return "dp"


@dataclass(frozen=True)
class SolveOutcome:
    """
    Answer of :meth:`HedonicToolkit.solve`.

    Attributes:
        concept: Requested concept tag
        solver: Solver that produced the answer
        partition: A stable partition, or None when none exists
        oracle_calls: Preference comparisons made
        warnings: Degraded-path notices
    """

    concept: str
    solver: str
    partition: Optional[Partition]
    oracle_calls: int
    warnings: Tuple[str, ...] = field(default_factory=tuple)


class HedonicToolkit:
    """
    Entry point for solving, verifying and generating hedonic graph games.

    Example:
        >>> from hedonic_graphs import HedonicToolkit, fixture
        >>> toolkit = HedonicToolkit()
        >>> outcome = toolkit.solve(fixture("parliament3"), "cr-is")
        >>> outcome.partition.blocks
        (frozenset({0, 1}), frozenset({2}))

        From environment variables:
        >>> toolkit = HedonicToolkit(HedonicConfig.from_env())
    """

    def __init__(self, config: Optional[HedonicConfig] = None) -> None:
        """
        Initialize the toolkit.

        Args:
            config: Optional configuration (defaults to ``HedonicConfig.from_env()``)
        """
        self.config = config or HedonicConfig.from_env()
        self.cache_manager = CacheManager(self.config.cache_config)
        configure_subset_cache(self.config.cache_config)
        logger.info("Hedonic toolkit initialized")

    def __enter__(self) -> "HedonicToolkit":
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        self.close()

    def close(self) -> None:
        """Drop cached results."""
        self.cache_manager.clear()
        logger.info("Hedonic toolkit closed")

    @property
    def cap(self) -> int:
        return self.config.budget.max_subsets

    def _run_solver(
        self, game: GameInstance, concept: str, solver: str, root: Optional[int]
    ) -> Optional[Partition]:
        debug = self.config.solver_config.debug_verify
        if solver == "tree-is":
            return solve_is(game, root=root, debug_verify=debug)
        if solver == "core":
            return solve_core(game, root=root, cap=self.cap, debug_verify=debug)
        if solver == "core-is":
            return solve_core_is(game, root=root, cap=self.cap, debug_verify=debug)
        if solver == "star-greedy-ir-ins":
            return star_greedy_ir_ins(game, debug_verify=debug)
        if solver == "star-greedy-enemy-ns":
            return star_greedy_enemy_ns(game, debug_verify=debug)
        if solver == "dp":
            return solve_dp(
                game, StabilityConcept.parse(concept), root=root, cap=self.cap, debug_verify=debug
            )
        target = StabilityConcept.parse(concept)
        threads = self.config.solver_config.threads
        if threads > 1:
            found = find_stable_exhaustive(game, target, self.config.budget, threads=threads)
            return found[0] if found else None
        return first_stable_exhaustive(game, target, self.config.budget)

    def solve(self, game: GameInstance, concept: str, root: Optional[int] = None) -> SolveOutcome:
        """
        Construct a stable feasible partition or prove that none exists.

        Args:
            game: The game
            concept: One of is, cr, cr-is, ns, ins, ir-ins, scr
            root: Optional root player index for the forest solvers

        Returns:
            SolveOutcome; ``partition`` is None when no stable partition exists

        Raises:
            ValidationError: On an unknown concept
            PreconditionError: If the solver's graph precondition fails
            BudgetExceededError: If an enumeration or the oracle budget is exceeded

        Example:
            >>> toolkit.solve(fixture("parliament3"), "ns").partition is None
            True
        """
        solver = select_solver(game, concept)
        concept = normalize_concept(concept)
        logger.info(f"Solving {concept} on {game.n} player(s) with {solver}")

        cache_key = self.cache_manager.generate_key(
            "solve", game=game, concept=concept, root=root
        )
        cached = self.cache_manager.get(cache_key)
        if cached is not None:
            logger.info(f"Returning cached {concept} result")
            return cached  # type: ignore[no-any-return]

        warnings: List[str] = []
        if solver == "exhaustive":
            logger.warning(SCR_WARNING)
            warnings.append(SCR_WARNING)

        try:
            with count_oracle_calls(self.config.solver_config.max_oracle_calls) as counter:
                partition = self._run_solver(game, concept, solver, root)
        except HedonicGraphError:
            raise
        except Exception as e:
            logger.error(f"Unexpected error while solving {concept}: {e}")
            raise HedonicGraphError(f"Solve failed: {e}") from e

        outcome = SolveOutcome(concept, solver, partition, counter.calls, tuple(warnings))
        self.cache_manager.set(cache_key, outcome)
        verdict = "NONE" if partition is None else f"{len(partition.blocks)} block(s)"
        logger.info(f"Solve {concept} completed: {verdict}, {counter.calls} comparison(s)")
        return outcome

    def verify(self, game: GameInstance, partition: Partition, concept: str) -> Verdict:
        """
        Check a partition against one concept.

        ``cr-is`` is checked as CR first, then IS; the first violation is returned.

        Raises:
            InfeasiblePartitionError: If the partition is not feasible
            ValidationError: On an unknown concept
        """
        tag = normalize_concept(concept)
        concepts = (
            [StabilityConcept.CR, StabilityConcept.IS]
            if tag == "cr-is"
            else [StabilityConcept.parse(tag)]
        )
        logger.info(f"Verifying {tag} on {game.n} player(s)")
        try:
            for single in concepts:
                verdict = verify(game, partition, single, cap=self.cap)
                if not isinstance(verdict, Stable):
                    logger.info(f"Verification of {tag} found a witness")
                    return verdict
        except HedonicGraphError:
            raise
        except Exception as e:
            logger.error(f"Unexpected error while verifying {tag}: {e}")
            raise HedonicGraphError(f"Verification failed: {e}") from e
        logger.info(f"Partition is {tag}-stable")
        return STABLE

    def connected_subsets(self, graph: Graph) -> Tuple[Coalition, ...]:
        return list_connected_subsets(graph, cap=self.cap)

    def feasible_partitions(self, graph: Graph) -> List[Partition]:
        return list(enumerate_feasible_partitions(graph, self.config.budget))

    def dynamics(
        self,
        game: GameInstance,
        start: Optional[Partition] = None,
        rule: str = "ns",
        max_steps: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> DynamicsTrace:
        """
        Run deviation dynamics with the configured defaults.

        Args:
            game: The game
            start: Starting partition (default: singletons)
            rule: ns, is, ins or ir-ins
            max_steps: Step limit (default: ``DynamicsConfig.max_steps``)
            seed: Random-policy seed (default: ``DynamicsConfig.seed``)
        """
        defaults = self.config.dynamics_config
        logger.info(f"Running {rule} dynamics on {game.n} player(s)")
        return run_dynamics(
            game,
            start=start,
            rule=StabilityConcept.parse(rule),
            max_steps=defaults.max_steps if max_steps is None else max_steps,
            seed=defaults.seed if seed is None else seed,
        )

    def generate(
        self,
        family: str,
        base: Optional[Graph] = None,
        weighted: Optional[WeightedGraph] = None,
        t: Optional[int] = None,
        s: Optional[int] = None,
        k: Optional[int] = None,
        pendants: int = 0,
        kind: str = "tree",
        n: Optional[int] = None,
        preferences: str = "additive",
        seed: int = 0,
    ) -> Union[GameInstance, Graph]:
        """
        Build an instance of a named family.

        ``unique-clique`` yields a graph; every other family yields a game.

        Raises:
            BadParameterError: On an unknown family or a missing parameter

        Example:
            >>> toolkit.generate("cycle-no-is", k=4).n
            4
        """

        def need(name: str, value: Any) -> Any:
            if value is None:
                raise BadParameterError(name, f"is required for family {family}")
            return value

        logger.info(f"Generating family {family}")
        if family in FIXTURES:
            return fixture(family)
        if family == "cycle-no-is":
            return cycle_no_is(need("k", k), pendants=pendants)
        if family == "enemy-star":
            return reduce_clique_enemy_star(need("base", base))
        if family == "scr-star":
            return reduce_clique_scr_star(need("base", base), need("t", t))
        if family == "ins-star":
            return reduce_clique_ins_star(need("base", base), need("t", t))
        if family == "irins-tree":
            return reduce_clique_irins_tree(need("base", base), need("t", t))
        if family == "maxcut-star":
            return reduce_maxcut_star(need("weighted", weighted))
        if family == "unique-clique":
            return unique_clique_family(need("base", base), need("s", s))
        if family == "random":
            return random_instance(kind, need("n", n), preferences, seed)
        raise BadParameterError("family", f"must be one of {', '.join(FAMILIES)}", value=family)
