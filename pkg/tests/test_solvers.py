import pytest

from hedonic_graphs.exceptions import (
    NotAForestError,
    NotAStarError,
    NotEnemyOrientedError,
    ValidationError,
)
from hedonic_graphs.exhaustive import has_stable_exhaustive
from hedonic_graphs.game import Ordering, compare
from hedonic_graphs.generators import cycle_no_is, random_instance
from hedonic_graphs.graph import list_connected_subsets, root_forest
from hedonic_graphs.oracle import count_oracle_calls
from hedonic_graphs.solvers import (
    build_dp_table,
    solve_core,
    solve_core_is,
    solve_dp,
    solve_is,
    star_greedy_enemy_ns,
    star_greedy_ir_ins,
)
from hedonic_graphs.stability import STABLE, Partition, StabilityConcept, verify

L, C, R = 0, 1, 2
CR, IS = StabilityConcept.CR, StabilityConcept.IS
NS, INS, IR_INS = StabilityConcept.NS, StabilityConcept.INS, StabilityConcept.IR_INS


def random_forest_games(count, max_n, kinds=("tree", "forest", "path", "star")):
    for seed in range(count):
        kind = kinds[seed % len(kinds)]
        preferences = ("additive", "explicit", "symmetric_additive")[seed % 3]
        yield random_instance(kind, 2 + seed % (max_n - 1), preferences, seed)


def test_solve_is_on_parliament(parliament3, pi1):
    assert solve_is(parliament3, root=C) == pi1


def test_solve_core_on_parliament(parliament3, pi1):
    assert solve_core(parliament3, root=C) == pi1
    assert solve_core_is(parliament3, root=C) == pi1


def test_solve_is_reports_block_growth(parliament3):
    changes = []
    solve_is(parliament3, root=C, on_block_change=lambda before, after: changes.append(after))

    assert frozenset({L, C}) in changes
    assert all(len(after) >= 1 for after in changes)


@pytest.mark.slow
def test_solve_is_block_growth_never_hurts_movers():
    for game in random_forest_games(200, 8):
        moves = []

        def record(before, after):
            moves.extend((player, before, after) for player in before & after)

        solve_is(game, on_block_change=record)
        for player, old, new in moves:
            assert compare(game, player, new, old) is not Ordering.WORSE


def test_forest_solvers_reject_cycles():
    game = cycle_no_is(4)
    with pytest.raises(NotAForestError):
        solve_is(game)
    with pytest.raises(NotAForestError):
        solve_core(game)
    with pytest.raises(NotAForestError):
        solve_dp(game, NS)


def test_solve_dp_example_games(parliament3, parliament5, pi1):
    assert solve_dp(parliament3, NS) is None
    assert solve_dp(parliament3, INS) is None
    assert solve_dp(parliament3, IR_INS) == pi1
    assert solve_dp(parliament5, IR_INS) is None
    assert not has_stable_exhaustive(parliament5, IR_INS)


def test_solve_dp_rejects_unsupported_concepts(parliament3):
    with pytest.raises(ValidationError):
        solve_dp(parliament3, CR)


def test_solve_dp_debug_verification_passes(parliament3, pi1):
    assert solve_dp(parliament3, IR_INS, debug_verify=True) == pi1


def test_dp_table_on_path_has_every_connected_coalition(parliament3):
    (tree,) = root_forest(parliament3.graph)
    table = build_dp_table(parliament3, tree, IR_INS)

    assert len(table.feasible) == 3 * 4 // 2


@pytest.mark.slow
def test_solve_is_sound_with_oracle_bound():
    for game in random_forest_games(500, 8):
        with count_oracle_calls() as counter:
            partition = solve_is(game)
        assert partition.is_feasible(game.graph)
        assert verify(game, partition, IS) is STABLE
        assert verify(game, partition, StabilityConcept.IR) is STABLE
        assert counter.calls <= 10 * game.n**4


@pytest.mark.slow
def test_core_solvers_sound():
    for game in random_forest_games(300, 8):
        core = solve_core(game)
        assert verify(game, core, CR) is STABLE
        both = solve_core_is(game)
        assert verify(game, both, CR) is STABLE
        assert verify(game, both, IS) is STABLE


@pytest.mark.slow
@pytest.mark.parametrize("concept", [NS, INS, IR_INS])
def test_solve_dp_matches_exhaustive_search(concept):
    for game in random_forest_games(300, 7):
        feasible = len(list_connected_subsets(game.graph))
        with count_oracle_calls() as counter:
            partition = solve_dp(game, concept)
        assert (partition is not None) == has_stable_exhaustive(game, concept)
        if partition is not None:
            assert verify(game, partition, concept) is STABLE
        assert counter.calls <= 10 * game.n**2 * feasible**2


def test_star_greedy_ir_ins_on_example(parliament3, pi1):
    assert star_greedy_ir_ins(parliament3) == pi1


@pytest.mark.slow
def test_star_greedy_ir_ins_on_random_stars():
    for seed in range(500):
        game = random_instance("star", 2 + seed % 8, ("additive", "explicit")[seed % 2], seed)
        with count_oracle_calls() as counter:
            partition = star_greedy_ir_ins(game)
        assert verify(game, partition, IR_INS) is STABLE
        assert counter.calls <= 10 * game.n**3


def test_star_greedy_ir_ins_requires_star():
    with pytest.raises(NotAStarError):
        star_greedy_ir_ins(random_instance("path", 5, "additive", 0))


def test_star_greedy_enemy_ns_on_example(enemy_variant):
    assert star_greedy_enemy_ns(enemy_variant) == Partition.from_blocks([[L, C], [R]])


@pytest.mark.slow
def test_star_greedy_enemy_ns_on_random_enemy_stars():
    for seed in range(500):
        game = random_instance("star", 2 + seed % 8, "enemy", seed)
        partition = star_greedy_enemy_ns(game)
        assert verify(game, partition, NS) is STABLE


def test_star_greedy_enemy_ns_preconditions(parliament3):
    with pytest.raises(NotEnemyOrientedError):
        star_greedy_enemy_ns(parliament3)
    with pytest.raises(NotAStarError):
        star_greedy_enemy_ns(random_instance("path", 5, "enemy", 0))
