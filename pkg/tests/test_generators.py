import random
from fractions import Fraction

import networkx as nx
import pytest

from hedonic_graphs.exceptions import BadParameterError, UnknownFixtureError
from hedonic_graphs.exhaustive import (
    find_stable_exhaustive,
    has_stable_exhaustive,
    local_maxcut_bruteforce,
    max_clique_bruteforce,
)
from hedonic_graphs.game import ExplicitPreferences
from hedonic_graphs.generators import (
    clique_number_via_unique_family,
    cycle_no_is,
    fixture,
    random_instance,
    reduce_clique_enemy_star,
    reduce_clique_ins_star,
    reduce_clique_irins_tree,
    reduce_clique_scr_star,
    reduce_maxcut_star,
    smallest_non_divisor,
    unique_clique_family,
)
from hedonic_graphs.graph import Graph, Topology, WeightedGraph, classify, star_center
from hedonic_graphs.stability import StabilityConcept

CR, SCR, NS, INS, IR_INS = (
    StabilityConcept.CR,
    StabilityConcept.SCR,
    StabilityConcept.NS,
    StabilityConcept.INS,
    StabilityConcept.IR_INS,
)


@pytest.fixture
def pair():
    return Graph.from_names(["x", "y"], [])


def as_graph(nxg):
    players = tuple(f"v{i}" for i in range(nxg.number_of_nodes()))
    return Graph(players, frozenset(nxg.edges()))


def base_graphs(family):
    if family == "atlas":
        graphs = [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= 5]
    else:
        graphs = [nx.gnp_random_graph(6, 0.5, seed=seed) for seed in range(100)]
    return [as_graph(g) for g in graphs]


def clique_profile(graph):
    sizes = [len(c) for c in nx.find_cliques(graph.to_networkx())]
    omega = max(sizes)
    return omega, sizes.count(omega)


def test_fixture_lookup(parliament3):
    assert parliament3.graph.players == ("l", "c", "r")
    assert parliament3.utilities.u(1, 0) == 2
    assert fixture("parliament5").n == 5
    with pytest.raises(UnknownFixtureError):
        fixture("parliament7")


def test_smallest_non_divisor():
    assert [smallest_non_divisor(k) for k in (3, 4, 5, 6, 12)] == [2, 3, 2, 4, 5]


def test_cycle_family_shape():
    game = cycle_no_is(4, pendants=2)

    assert game.n == 6
    assert game.graph.players[:4] == ("i1", "i2", "i3", "i4")
    assert classify(game.graph) is Topology.CYCLIC
    assert isinstance(game.preferences, ExplicitPreferences)
    assert game.preferences.tier_count(0) == 2
    with pytest.raises(BadParameterError):
        cycle_no_is(2)


def test_cycle_family_arcs_respect_non_divisor():
    game = cycle_no_is(4)
    longest = max(len(c) for c in game.preferences.listed(0))

    assert longest == smallest_non_divisor(4)


def test_enemy_star_core_blocks_are_maximum_cliques(triangle, path3):
    for base in (triangle, path3):
        game = reduce_clique_enemy_star(base)
        omega = max_clique_bruteforce(base).size
        assert game.utilities.is_enemy_oriented()
        assert star_center(game.graph) == 0

        stable = find_stable_exhaustive(game, CR)
        assert stable
        for partition in stable:
            members = partition.block_of(0) - {0}
            base_members = {m - 1 for m in members}
            assert len(base_members) == omega
            assert all(base.has_edge(u, v) for u in base_members for v in base_members if u != v)


def test_enemy_star_strict_core_iff_unique_maximum_clique(triangle, path3):
    assert has_stable_exhaustive(reduce_clique_enemy_star(triangle), SCR)
    assert not has_stable_exhaustive(reduce_clique_enemy_star(path3), SCR)


def test_scr_star_uses_exact_fractions(triangle):
    game = reduce_clique_scr_star(triangle, 3)

    assert game.utilities.u(3, 4) == Fraction(-1, 2)
    assert game.utilities.is_symmetric()
    with pytest.raises(BadParameterError):
        reduce_clique_scr_star(triangle, 1)


@pytest.mark.parametrize("t", [2, 3, 4])
def test_scr_star_existence_tracks_clique_number(t, triangle, path3, pair):
    for base in (triangle, path3, pair):
        omega = max_clique_bruteforce(base).size
        assert has_stable_exhaustive(reduce_clique_scr_star(base, t), SCR) == (omega >= t)


@pytest.mark.parametrize("t", [2, 3, 4])
def test_ins_star_existence_tracks_clique_number(t, triangle, path3, pair):
    for base in (triangle, path3, pair):
        omega = max_clique_bruteforce(base).size
        game = reduce_clique_ins_star(base, t)
        assert has_stable_exhaustive(game, INS) == (omega >= t)
        assert has_stable_exhaustive(game, NS) == (omega >= t)


@pytest.mark.parametrize("t", [2, 3, 4])
def test_irins_tree_existence_tracks_clique_number(t, triangle, path3, pair):
    for base in (triangle, path3, pair):
        omega = max_clique_bruteforce(base).size
        game = reduce_clique_irins_tree(base, t)
        assert classify(game.graph) is Topology.TREE
        assert has_stable_exhaustive(game, IR_INS) == (omega >= t)


def test_reductions_rename_colliding_gadget_players():
    base = Graph.from_names(["s", "a"], [("s", "a")])

    assert reduce_clique_enemy_star(base).graph.players == ("s'", "s", "a")
    assert reduce_clique_ins_star(base, 1).graph.players[:3] == ("a'", "b", "c")


def test_maxcut_star_in_neighbour_stable_outcomes_are_local_max_cuts():
    wg = WeightedGraph.from_names(
        ["x", "y", "z", "w"], {("x", "y"): 1, ("y", "z"): 2, ("x", "z"): 1, ("z", "w"): 3}
    )
    game = reduce_maxcut_star(wg)
    everyone = frozenset(range(wg.n))

    induced = set()
    for partition in find_stable_exhaustive(game, INS):
        side = frozenset(m - 1 for m in partition.block_of(0) - {0})
        induced.add(frozenset({side, everyone - side}))
    expected = {frozenset({c.side_a, c.side_b}) for c in local_maxcut_bruteforce(wg)}

    assert induced == expected


@pytest.mark.slow
@pytest.mark.parametrize("family", ["atlas", "random6"])
def test_enemy_star_core_blocks_on_small_graphs(family):
    for base in base_graphs(family):
        omega, count = clique_profile(base)
        maximum = {frozenset(c) for c in nx.find_cliques(base.to_networkx()) if len(c) == omega}
        game = reduce_clique_enemy_star(base)

        centers = {
            frozenset(m - 1 for m in partition.block_of(0) - {0})
            for partition in find_stable_exhaustive(game, CR)
        }
        assert centers == maximum
        assert has_stable_exhaustive(game, SCR) == (count == 1)


@pytest.mark.slow
@pytest.mark.parametrize("t", [2, 3, 4])
@pytest.mark.parametrize("family", ["atlas", "random6"])
def test_clique_reductions_track_clique_number(family, t):
    for base in base_graphs(family):
        exists = clique_profile(base)[0] >= t
        ins_game = reduce_clique_ins_star(base, t)

        assert has_stable_exhaustive(reduce_clique_scr_star(base, t), SCR) == exists
        assert has_stable_exhaustive(ins_game, INS) == exists
        assert has_stable_exhaustive(ins_game, NS) == exists
        assert has_stable_exhaustive(reduce_clique_irins_tree(base, t), IR_INS) == exists


@pytest.mark.slow
@pytest.mark.parametrize("family", ["atlas", "random6"])
def test_maxcut_star_outcomes_are_exactly_local_max_cuts(family):
    for index, base in enumerate(base_graphs(family)):
        rng = random.Random(index)
        wg = WeightedGraph(base, tuple((edge, rng.randint(0, 4)) for edge in sorted(base.edges)))
        game = reduce_maxcut_star(wg)
        everyone = frozenset(range(wg.n))

        induced = set()
        for partition in find_stable_exhaustive(game, INS):
            side = frozenset(m - 1 for m in partition.block_of(0) - {0})
            induced.add(frozenset({side, everyone - side}))
        expected = {frozenset({c.side_a, c.side_b}) for c in local_maxcut_bruteforce(wg)}

        assert induced == expected


def test_unique_clique_family(path3, triangle):
    family = unique_clique_family(path3, 3)

    assert family.n == 6
    assert max_clique_bruteforce(family).unique
    assert not max_clique_bruteforce(unique_clique_family(triangle, 3)).unique
    with pytest.raises(BadParameterError):
        unique_clique_family(triangle, 4)


def test_clique_number_via_unique_family(triangle, path3, pair):
    assert clique_number_via_unique_family(triangle) == 3
    assert clique_number_via_unique_family(path3) == 2
    assert clique_number_via_unique_family(pair) == 1


def test_random_instance_is_deterministic():
    first = random_instance("tree", 6, "explicit", seed=11)

    assert random_instance("tree", 6, "explicit", seed=11) == first
    assert random_instance("tree", 6, "additive", seed=1) != random_instance(
        "tree", 6, "additive", seed=2
    )


def test_random_instance_kinds():
    assert classify(random_instance("path", 5, "additive", 0).graph) is Topology.PATH
    assert classify(random_instance("cycle", 4, "additive", 0).graph) is Topology.CYCLIC
    assert random_instance("star", 6, "enemy", 7).utilities.is_enemy_oriented()
    assert random_instance("star", 6, "symmetric_additive", 7).utilities.is_symmetric()
    assert classify(random_instance("forest", 7, "additive", 4).graph) is not Topology.CYCLIC
    with pytest.raises(BadParameterError):
        random_instance("cycle", 2, "additive", 0)
    with pytest.raises(BadParameterError):
        random_instance("grid", 4, "additive", 0)
    with pytest.raises(BadParameterError):
        random_instance("tree", 4, "cardinal", 0)
