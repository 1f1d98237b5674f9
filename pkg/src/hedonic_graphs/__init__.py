"""
hedonic-graphs

Coalition formation on communication graphs: hedonic games whose feasible
coalitions are the connected subsets of a graph. Provides exact stability
verification, polynomial solvers on trees and forests, exhaustive oracles for
small instances, hardness-reduction generators and deviation dynamics.

Example:
    >>> from hedonic_graphs import HedonicToolkit, fixture
    >>> toolkit = HedonicToolkit()
    >>> outcome = toolkit.solve(fixture("parliament3"), "cr-is")
    >>> print(outcome.partition)
"""

from hedonic_graphs.config import (
    CacheConfig,
    DynamicsConfig,
    EnumerationBudget,
    HedonicConfig,
    SolverConfig,
)
from hedonic_graphs.dynamics import DynamicsOutcome, DynamicsTrace, potential, run_dynamics
from hedonic_graphs.exceptions import (
    BudgetExceededError,
    CapExceededError,
    HedonicGraphError,
    NotAForestError,
    NotATreeError,
    OracleBudgetExceededError,
    PreconditionError,
    ValidationError,
)
from hedonic_graphs.exhaustive import (
    enumerate_feasible_partitions,
    find_stable_exhaustive,
    has_stable_exhaustive,
    local_maxcut_bruteforce,
    max_clique_bruteforce,
)
from hedonic_graphs.game import (
    ExplicitPreferences,
    GameInstance,
    Ordering,
    UtilityMatrix,
    compare,
    m_compare,
    refine,
)
from hedonic_graphs.generators import (
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
from hedonic_graphs.graph import Graph, RootedTree, WeightedGraph, connected_subsets, root_tree
from hedonic_graphs.models import GameDocument, PartitionDocument, load_game, load_partition
from hedonic_graphs.oracle import count_oracle_calls
from hedonic_graphs.solvers import (
    solve_core,
    solve_core_is,
    solve_dp,
    solve_is,
    star_greedy_enemy_ns,
    star_greedy_ir_ins,
)
from hedonic_graphs.stability import (
    STABLE,
    BlockingCoalition,
    IndividualDeviation,
    Partition,
    StabilityConcept,
    deviation_kind,
    verify,
)
from hedonic_graphs.toolkit import HedonicToolkit, SolveOutcome, select_solver

__version__ = "0.1.0"
__author__ = "hedonic-graphs maintainers"
__license__ = "MIT"

__all__ = [
    # Facade
    "HedonicToolkit",
    "SolveOutcome",
    "select_solver",
    # Configuration
    "HedonicConfig",
    "EnumerationBudget",
    "CacheConfig",
    "SolverConfig",
    "DynamicsConfig",
    # Model
    "Graph",
    "WeightedGraph",
    "RootedTree",
    "root_tree",
    "connected_subsets",
    "GameInstance",
    "UtilityMatrix",
    "ExplicitPreferences",
    "Ordering",
    "compare",
    "m_compare",
    "refine",
    "count_oracle_calls",
    # Stability
    "Partition",
    "StabilityConcept",
    "IndividualDeviation",
    "BlockingCoalition",
    "STABLE",
    "deviation_kind",
    "verify",
    # Solvers
    "solve_is",
    "solve_core",
    "solve_core_is",
    "solve_dp",
    "star_greedy_ir_ins",
    "star_greedy_enemy_ns",
    # Exhaustive oracles
    "enumerate_feasible_partitions",
    "find_stable_exhaustive",
    "has_stable_exhaustive",
    "max_clique_bruteforce",
    "local_maxcut_bruteforce",
    # Generators
    "fixture",
    "cycle_no_is",
    "reduce_clique_enemy_star",
    "reduce_clique_scr_star",
    "reduce_clique_ins_star",
    "reduce_clique_irins_tree",
    "reduce_maxcut_star",
    "unique_clique_family",
    "random_instance",
    # Dynamics
    "run_dynamics",
    "potential",
    "DynamicsTrace",
    "DynamicsOutcome",
    # Files
    "GameDocument",
    "PartitionDocument",
    "load_game",
    "load_partition",
    # Exceptions
    "HedonicGraphError",
    "ValidationError",
    "PreconditionError",
    "NotATreeError",
    "NotAForestError",
    "BudgetExceededError",
    "CapExceededError",
    "OracleBudgetExceededError",
]
