import itertools
import random

import pytest

from hedonic_graphs.dynamics import DynamicsOutcome, apply_deviation, potential, run_dynamics
from hedonic_graphs.exceptions import InfeasibleStartError, NotAdditiveError, ValidationError
from hedonic_graphs.game import GameInstance, UtilityMatrix
from hedonic_graphs.generators import cycle_no_is, random_instance
from hedonic_graphs.graph import Graph
from hedonic_graphs.stability import (
    STABLE,
    IndividualDeviation,
    Partition,
    StabilityConcept,
    verify,
)

NS, IS = StabilityConcept.NS, StabilityConcept.IS


def complete_symmetric_game(n, seed):
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    entries = {pair: rng.randint(-5, 5) for pair in pairs}
    matrix = UtilityMatrix.from_entries(n, entries, symmetric=True, mirror=True)
    return GameInstance(Graph(tuple(f"p{i}" for i in range(n)), frozenset(pairs)), matrix)


@pytest.fixture
def complete4():
    players = ("a", "b", "c", "d")
    edges = frozenset((i, j) for i in range(4) for j in range(i + 1, 4))
    entries = {(0, 1): 3, (0, 2): -2, (0, 3): 1, (1, 2): 2, (1, 3): -4, (2, 3): 5}
    matrix = UtilityMatrix.from_entries(4, entries, symmetric=True, mirror=True)
    return GameInstance(Graph(players, edges), matrix)


def test_potential(parliament3, pi1):
    assert potential(parliament3, pi1) == 3
    assert potential(parliament3, Partition.singletons(3)) == 0


def test_potential_requires_utilities():
    game = cycle_no_is(3)

    with pytest.raises(NotAdditiveError):
        potential(game, Partition.singletons(3))


def test_nash_dynamics_cycle_on_example_game(parliament3):
    trace = run_dynamics(parliament3, rule=NS, max_steps=20)

    assert trace.outcome is DynamicsOutcome.STEP_LIMIT
    assert len(trace.steps) == 20
    assert trace.terminal.is_feasible(parliament3.graph)


def test_steps_on_symmetric_stars_increase_local_welfare():
    for seed in range(30):
        game = random_instance("star", 3 + seed % 4, "symmetric_additive", seed)
        for rule in (NS, IS):
            trace = run_dynamics(game, rule=rule, max_steps=200)
            for step in trace.steps:
                assert step.local_delta > 0
                if not step.split:
                    assert step.potential_after - step.potential_before == step.local_delta


def test_dynamics_converge_on_complete_graph(complete4):
    trace = run_dynamics(complete4, rule=NS)

    assert trace.outcome is DynamicsOutcome.CONVERGED
    assert verify(complete4, trace.terminal, NS) is STABLE
    assert all(step.potential_after > step.potential_before for step in trace.steps)
    assert not any(step.split for step in trace.steps)


def test_dynamics_converge_on_random_complete_graphs():
    for seed in range(200):
        game = complete_symmetric_game(3 + seed % 5, seed)
        rule = (NS, IS)[seed % 2]
        policy = seed if seed % 3 == 0 else None

        trace = run_dynamics(game, rule=rule, seed=policy)

        assert trace.outcome is DynamicsOutcome.CONVERGED
        assert verify(game, trace.terminal, rule) is STABLE
        for step in trace.steps:
            assert not step.split
            assert step.potential_after > step.potential_before
            assert step.potential_after - step.potential_before == step.local_delta


@pytest.mark.slow
def test_nash_dynamics_on_random_symmetric_stars():
    for seed in range(200):
        game = random_instance("star", 3 + seed % 18, "symmetric_additive", seed)

        trace = run_dynamics(game, rule=NS, max_steps=100)

        assert trace.terminal.is_feasible(game.graph)
        for step in trace.steps:
            assert step.local_delta > 0
            if not step.split:
                assert step.potential_after - step.potential_before == step.local_delta
        if trace.outcome is DynamicsOutcome.CONVERGED:
            assert verify(game, trace.terminal, NS) is STABLE


def test_seeded_dynamics_are_reproducible(complete4):
    first = run_dynamics(complete4, rule=IS, seed=5)

    assert run_dynamics(complete4, rule=IS, seed=5) == first
    assert first.outcome is DynamicsOutcome.CONVERGED
    assert verify(complete4, first.terminal, IS) is STABLE


def test_explicit_games_have_no_potential():
    trace = run_dynamics(cycle_no_is(3), rule=IS, max_steps=15)

    assert trace.outcome is DynamicsOutcome.STEP_LIMIT
    assert all(step.potential_before is None for step in trace.steps)


def test_dynamics_reject_bad_input(parliament3):
    with pytest.raises(InfeasibleStartError):
        run_dynamics(parliament3, start=Partition.from_blocks([[0, 2], [1]]))
    with pytest.raises(InfeasibleStartError):
        run_dynamics(parliament3, start=Partition.from_blocks([[0, 1]]))
    with pytest.raises(ValidationError):
        run_dynamics(parliament3, rule=StabilityConcept.CR)


def test_apply_deviation_splits_abandoned_block(parliament3):
    grand = Partition.from_blocks([[0, 1, 2]])

    result, split = apply_deviation(parliament3, grand, IndividualDeviation(1, None, NS))

    assert split
    assert result == Partition.singletons(3)


def test_apply_deviation_joins_target(parliament3, pi1):
    result, split = apply_deviation(
        parliament3, pi1, IndividualDeviation(2, frozenset({0, 1}), NS)
    )

    assert not split
    assert result == Partition.from_blocks([[0, 1, 2]])
