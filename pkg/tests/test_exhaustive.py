import itertools
import random

import networkx as nx
import pytest

from hedonic_graphs.config import EnumerationBudget
from hedonic_graphs.exceptions import BudgetExceededError
from hedonic_graphs.exhaustive import (
    enumerate_feasible_partitions,
    find_stable_exhaustive,
    first_stable_exhaustive,
    has_stable_exhaustive,
    is_local_max_cut,
    local_maxcut_bruteforce,
    max_clique_bruteforce,
)
from hedonic_graphs.generators import cycle_no_is, random_instance
from hedonic_graphs.graph import Graph, WeightedGraph
from hedonic_graphs.stability import StabilityConcept

NS, IS, INS, CR = (
    StabilityConcept.NS,
    StabilityConcept.IS,
    StabilityConcept.INS,
    StabilityConcept.CR,
)


def path_of(n):
    return Graph(tuple(f"v{i}" for i in range(n)), frozenset((i, i + 1) for i in range(n - 1)))


def unit_triangle():
    return WeightedGraph.from_names(
        ["x", "y", "z"], {("x", "y"): 1, ("y", "z"): 1, ("x", "z"): 1}
    )


def random_graph(n, seed, density):
    rng = random.Random(seed)
    pairs = itertools.combinations(range(n), 2)
    edges = frozenset(pair for pair in pairs if rng.random() < density)
    return Graph(tuple(f"v{i}" for i in range(n)), edges)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        yield [[first]] + partition
        for k, block in enumerate(partition):
            yield partition[:k] + [[first] + block] + partition[k + 1 :]


def test_feasible_partition_counts(triangle):
    star = Graph.from_names("scde", [("s", "c"), ("s", "d"), ("s", "e")])

    for n in range(1, 7):
        assert sum(1 for _ in enumerate_feasible_partitions(path_of(n))) == 2 ** (n - 1)
    assert sum(1 for _ in enumerate_feasible_partitions(star)) == 8
    assert sum(1 for _ in enumerate_feasible_partitions(triangle)) == 5


@pytest.mark.parametrize("n", range(1, 8))
def test_feasible_partitions_match_filtered_set_partitions(n):
    for seed, density in enumerate((0.25, 0.5, 0.8)):
        graph = random_graph(n, 10 * n + seed, density)
        nxg = graph.to_networkx()
        expected = {
            frozenset(frozenset(block) for block in partition)
            for partition in set_partitions(list(range(n)))
            if all(nx.is_connected(nxg.subgraph(block)) for block in partition)
        }

        emitted = [frozenset(p.blocks) for p in enumerate_feasible_partitions(graph)]
        assert len(emitted) == len(expected)
        assert set(emitted) == expected


def test_feasible_partitions_are_distinct_and_feasible():
    graph = Graph.from_names("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    partitions = list(enumerate_feasible_partitions(graph))

    assert len(partitions) == len(set(partitions))
    assert all(p.is_feasible(graph) for p in partitions)


def test_partition_budget_fails_loudly():
    with pytest.raises(BudgetExceededError):
        list(enumerate_feasible_partitions(path_of(5), EnumerationBudget(max_partitions=3)))


def test_example_game_ground_truth(parliament3, pi1):
    assert find_stable_exhaustive(parliament3, NS) == []
    assert find_stable_exhaustive(parliament3, INS) == []
    assert pi1 in find_stable_exhaustive(parliament3, CR)
    assert pi1 in find_stable_exhaustive(parliament3, IS)
    assert first_stable_exhaustive(parliament3, NS) is None
    assert has_stable_exhaustive(parliament3, StabilityConcept.IR_INS)


def test_thread_count_does_not_change_result():
    game = random_instance("tree", 6, "additive", seed=3)

    sequential = find_stable_exhaustive(game, IS)
    assert find_stable_exhaustive(game, IS, threads=4) == sequential
    assert first_stable_exhaustive(game, IS) == (sequential[0] if sequential else None)


@pytest.mark.slow
def test_every_forest_game_has_an_individually_stable_partition():
    kinds = ("tree", "forest", "path", "star")
    for seed in range(500):
        preferences = ("additive", "explicit", "symmetric_additive")[seed % 3]
        game = random_instance(kinds[seed % 4], 2 + seed % 7, preferences, seed)
        assert has_stable_exhaustive(game, IS)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_cycle_family_has_no_individually_stable_partition(k):
    assert not has_stable_exhaustive(cycle_no_is(k), IS)


def test_cycle_family_with_pendant_has_no_individually_stable_partition():
    assert not has_stable_exhaustive(cycle_no_is(3, pendants=1), IS)


def test_max_clique_bruteforce(triangle):
    square = Graph.from_names("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    paw = Graph.from_names("xyzw", [("x", "y"), ("y", "z"), ("x", "z"), ("z", "w")])

    result = max_clique_bruteforce(square)
    assert (result.size, sorted(result.clique), result.unique) == (2, [0, 1], False)
    result = max_clique_bruteforce(paw)
    assert (result.size, sorted(result.clique), result.unique) == (3, [0, 1, 2], True)
    assert max_clique_bruteforce(Graph.from_names("ab", [])).size == 1
    with pytest.raises(BudgetExceededError):
        max_clique_bruteforce(triangle, EnumerationBudget(max_clique_nodes=2))


def test_local_maxcut_bruteforce_order():
    cuts = local_maxcut_bruteforce(unit_triangle())

    assert [sorted(c.side_a) for c in cuts] == [[0, 1], [0, 2], [0]]
    assert all(c.weight == 2 for c in cuts)
    assert all(0 not in c.side_b for c in cuts)


def test_is_local_max_cut():
    wg = unit_triangle()

    assert is_local_max_cut(wg, frozenset({0}))
    assert not is_local_max_cut(wg, frozenset({0, 1, 2}))
    with pytest.raises(BudgetExceededError):
        local_maxcut_bruteforce(wg, EnumerationBudget(max_cut_nodes=2))
