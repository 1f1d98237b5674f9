"""
@file generators.py
@description Example games, the no-IS cycle family, hardness reductions, random instances
@module hedonic_graphs.generators
@author hedonic-graphs maintainers
@created 2026-10-17

Every constructor is deterministic. Reductions keep the base graph's player
identifiers and add gadget players (``s``, ``a``, ``b``, ...) under fresh names
when the base graph already uses them.
"""

import logging
import random
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from hedonic_graphs.config import EnumerationBudget
from hedonic_graphs.exceptions import BadParameterError, UnknownFixtureError
from hedonic_graphs.exhaustive import max_clique_bruteforce
from hedonic_graphs.game import ExplicitPreferences, GameInstance, Tier, UtilityMatrix
from hedonic_graphs.graph import (
    DEFAULT_SUBSET_CAP,
    Coalition,
    Edge,
    Graph,
    WeightedGraph,
    list_connected_subsets,
)
from hedonic_graphs.validators import Rational, validate_positive_int

logger = logging.getLogger(__name__)

__all__ = [
    "FIXTURES",
    "GRAPH_KINDS",
    "PREFERENCE_KINDS",
    "WeightedGraph",
    "clique_number_via_unique_family",
    "cycle_no_is",
    "fixture",
    "random_instance",
    "reduce_clique_enemy_star",
    "reduce_clique_ins_star",
    "reduce_clique_irins_tree",
    "reduce_clique_scr_star",
    "reduce_maxcut_star",
    "smallest_non_divisor",
    "unique_clique_family",
]

GRAPH_KINDS = ("tree", "path", "star", "cycle", "forest")
PREFERENCE_KINDS = ("additive", "symmetric_additive", "enemy", "explicit")


def _additive_game(
    players: Sequence[str],
    edges: Iterable[Tuple[str, str]],
    utilities: Mapping[Tuple[str, str], Rational],
    symmetric: bool = False,
) -> GameInstance:
    graph = Graph.from_names(players, edges)
    entries = {(graph.index(i), graph.index(j)): v for (i, j), v in utilities.items()}
    matrix = UtilityMatrix.from_entries(graph.n, entries, symmetric=symmetric, mirror=symmetric)
    return GameInstance(graph, matrix)


def _parliament3() -> GameInstance:
    return _additive_game(
        ["l", "c", "r"],
        [("l", "c"), ("c", "r")],
        {
            ("l", "c"): 1,
            ("l", "r"): -2,
            ("c", "l"): 2,
            ("c", "r"): 0,
            ("r", "c"): 2,
            ("r", "l"): 0,
        },
    )


def _parliament3_enemy_variant() -> GameInstance:
    return _additive_game(
        ["l", "c", "r"],
        [("l", "c"), ("c", "r")],
        {("l", "c"): 1, ("c", "r"): 1, ("l", "r"): -3},
        symmetric=True,
    )


def _parliament5() -> GameInstance:
    u = {
        ("el", "l"): -1,
        ("el", "c"): 2,
        ("l", "r"): -10,
        ("c", "el"): -2,
        ("c", "l"): 2,
        ("c", "r"): 2,
        ("c", "er"): -2,
        ("r", "l"): -10,
        ("er", "c"): 2,
        ("er", "r"): -1,
    }
    return _additive_game(
        ["el", "l", "c", "r", "er"],
        [("el", "l"), ("l", "c"), ("c", "r"), ("r", "er")],
        u,
    )


FIXTURES: Dict[str, Callable[[], GameInstance]] = {
    "parliament3": _parliament3,
    "parliament3_enemy_variant": _parliament3_enemy_variant,
    "parliament5": _parliament5,
}


def fixture(name: str) -> GameInstance:
    """
    Return a published example game.

    Raises:
        UnknownFixtureError: If ``name`` is not a known fixture

    Example:
        >>> game = fixture("parliament3")
        >>> game.utilities.u(1, 0)
        2
    """
    try:
        factory = FIXTURES[name]
    except KeyError:
        raise UnknownFixtureError(name, FIXTURES) from None
    return factory()


def smallest_non_divisor(k: int) -> int:
    d = 2
    while k % d == 0:
        d += 1
    return d


def cycle_no_is(k: int, pendants: int = 0) -> GameInstance:
    """
    A cycle game with no individually stable feasible partition.

    Players ``i1..ik`` sit on a cycle. With ``d`` the smallest number not
    dividing ``k``, each ``i_h`` ranks the arcs through her of at most ``d``
    players: arcs containing her successor first, the other arcs second, all
    of them above every other coalition. Optional pendant players hang off
    ``i1`` and only rank their own singleton.

    Args:
        k: Cycle length, at least 3
        pendants: Number of extra players attached to ``i1``

    Raises:
        BadParameterError: If ``k < 3`` or ``pendants < 0``

    Example:
        >>> cycle_no_is(6).n
        6
    """
    validate_positive_int(k, "k", minimum=3)
    validate_positive_int(pendants, "pendants", minimum=0)
    d = smallest_non_divisor(k)

    rankings: List[Tuple[Tier, ...]] = []
    for h in range(k):
        arcs = {
            frozenset((start + offset) % k for offset in range(length))
            for length in range(1, d + 1)
            for start in range(h - length + 1, h + 1)
        }
        successor = (h + 1) % k
        with_successor = frozenset(a for a in arcs if successor in a)
        without_successor = frozenset(a for a in arcs if successor not in a)
        rankings.append((with_successor, without_successor))
    for p in range(pendants):
        rankings.append((frozenset([frozenset([k + p])]),))

    players = [f"i{h + 1}" for h in range(k)] + [f"p{p + 1}" for p in range(pendants)]
    edges = {(h, (h + 1) % k) for h in range(k)} | {(0, k + p) for p in range(pendants)}
    graph = Graph(tuple(players), frozenset(edges))
    logger.debug(f"Cycle game with k={k}, d={d}, {pendants} pendant(s)")
    return GameInstance(graph, ExplicitPreferences(tuple(rankings)))


def _fresh(names: Sequence[str], taken: Iterable[str]) -> List[str]:
    used = set(taken)
    fresh = []
    for name in names:
        while name in used:
            name += "'"
        used.add(name)
        fresh.append(name)
    return fresh


def _require_t(t: int, minimum: int) -> int:
    return validate_positive_int(t, "t", minimum=minimum)


def reduce_clique_enemy_star(g: Graph) -> GameInstance:
    """
    Symmetric enemy-oriented star whose core outcomes encode maximum cliques of ``g``.

    The center ``s`` likes everyone; two base players like each other exactly
    when adjacent in ``g`` and otherwise value each other at ``-|N|``.

    Example:
        >>> reduce_clique_enemy_star(triangle).utilities.is_enemy_oriented()
        True
    """
    (s,) = _fresh(["s"], g.players)
    n = g.n + 1
    u: Dict[Tuple[str, str], Rational] = {}
    for i, v in enumerate(g.players):
        u[(s, v)] = 1
        for j in range(i + 1, g.n):
            u[(v, g.players[j])] = 1 if g.has_edge(i, j) else -n
    return _additive_game([s, *g.players], [(s, v) for v in g.players], u, symmetric=True)


def reduce_clique_scr_star(g: Graph, t: int) -> GameInstance:
    """
    Symmetric star game with a strictly core stable outcome iff ``g`` has a ``t``-clique.

    Raises:
        BadParameterError: If ``t < 2``
    """
    _require_t(t, 2)
    a, b, c = _fresh(["a", "b", "c"], g.players)
    big_m = g.n + 3 + 1
    u: Dict[Tuple[str, str], Rational] = {(a, b): t - 1, (c, b): t - 1, (a, c): -big_m}
    for i, v in enumerate(g.players):
        u[(a, v)] = -big_m
        u[(c, v)] = -big_m
        u[(b, v)] = 1
        for j in range(i + 1, g.n):
            u[(v, g.players[j])] = Fraction(-1, t - 1) if g.has_edge(i, j) else -big_m
    edges = [(b, a), (b, c)] + [(b, v) for v in g.players]
    return _additive_game([a, b, c, *g.players], edges, u, symmetric=True)


def reduce_clique_ins_star(g: Graph, t: int) -> GameInstance:
    """
    Star game with an in-neighbour stable (and a Nash stable) outcome iff ``g`` has a ``t``-clique.

    Raises:
        BadParameterError: If ``t < 1``
    """
    _require_t(t, 1)
    a, b, c = _fresh(["a", "b", "c"], g.players)
    big_m = g.n + 3 + 1
    u: Dict[Tuple[str, str], Rational] = {
        (a, b): 1,
        (a, c): -2,
        (b, a): t,
        (b, c): 0,
        (c, a): 0,
        (c, b): 2,
    }
    for i, v in enumerate(g.players):
        for gadget in (a, c):
            u[(gadget, v)] = -big_m
            u[(v, gadget)] = -big_m
        u[(b, v)] = 1
        u[(v, b)] = 0
        for j, w in enumerate(g.players):
            if i != j and not g.has_edge(i, j):
                u[(v, w)] = -big_m
    edges = [(b, a), (b, c)] + [(b, v) for v in g.players]
    return _additive_game([a, b, c, *g.players], edges, u)


def reduce_clique_irins_tree(g: Graph, t: int) -> GameInstance:
    """
    Tree game with an IR-in-neighbour stable outcome iff ``g`` has a ``t``-clique.

    The spine is ``a-b-c-d-e`` and every base player is a leaf under ``c``.

    Raises:
        BadParameterError: If ``t < 1``
    """
    _require_t(t, 1)
    a, b, c, d, e = _fresh(["a", "b", "c", "d", "e"], g.players)
    big_m = g.n + 5 + 1
    u: Dict[Tuple[str, str], Rational] = {
        (a, b): -1,
        (a, c): 2,
        (b, d): -big_m,
        (c, a): -t,
        (c, b): t,
        (c, d): t,
        (c, e): -t,
        (d, b): -big_m,
        (e, c): 2,
        (e, d): -1,
    }
    for i, v in enumerate(g.players):
        for gadget in (a, b, d, e):
            u[(gadget, v)] = -big_m
            u[(v, gadget)] = -big_m
        u[(c, v)] = 1
        for j, w in enumerate(g.players):
            if i != j and not g.has_edge(i, j):
                u[(v, w)] = -big_m
    edges = [(a, b), (b, c), (c, d), (d, e)] + [(c, v) for v in g.players]
    return _additive_game([a, b, c, d, e, *g.players], edges, u)


def reduce_maxcut_star(wg: WeightedGraph) -> GameInstance:
    """
    Symmetric star game whose in-neighbour stable outcomes induce local max cuts of ``wg``.

    A base player values the center at her total incident weight and each
    neighbour at minus twice the edge weight.

    Example:
        >>> game = reduce_maxcut_star(WeightedGraph.from_names(["u", "v"], {("u", "v"): 1}))
        >>> game.utilities.u(0, 1), game.utilities.u(1, 2)
        (1, -2)
    """
    base = wg.graph
    (s,) = _fresh(["s"], base.players)
    u: Dict[Tuple[str, str], Rational] = {}
    for i, v in enumerate(base.players):
        u[(v, s)] = sum(wg.w(i, j) for j in base.adjacency[i])
        for j in range(i + 1, base.n):
            u[(v, base.players[j])] = -2 * wg.w(i, j)
    return _additive_game([s, *base.players], [(s, v) for v in base.players], u, symmetric=True)


def unique_clique_family(g: Graph, s: int) -> Graph:
    """
    ``g`` plus a disjoint fresh ``s``-clique.

    Raises:
        BadParameterError: If ``s`` is outside ``1..|V|``

    Example:
        >>> max_clique_bruteforce(unique_clique_family(path_of(3), 3)).unique
        True
    """
    validate_positive_int(s, "s", minimum=1)
    if s > g.n:
        raise BadParameterError("s", f"must be at most {g.n}", value=s)
    extra = _fresh([f"k{q + 1}" for q in range(s)], g.players)
    offset = g.n
    clique: List[Edge] = [(offset + p, offset + q) for p in range(s) for q in range(p + 1, s)]
    return Graph(tuple(g.players) + tuple(extra), frozenset(set(g.edges) | set(clique)))


def clique_number_via_unique_family(
    g: Graph,
    unique_oracle: Optional[Callable[[Graph], bool]] = None,
    budget: Optional[EnumerationBudget] = None,
) -> int:
    """
    Recover the clique number of ``g`` from uniqueness answers alone.

    The clique number is the largest ``s`` for which ``g`` plus a fresh
    ``s``-clique does not have a unique maximum clique.

    Args:
        g: Base graph
        unique_oracle: Decides unique-maximum-clique; brute force by default
        budget: Limits for the default oracle
    """
    oracle = unique_oracle or (lambda h: max_clique_bruteforce(h, budget).unique)
    for s in range(g.n, 0, -1):
        if not oracle(unique_clique_family(g, s)):
            return s
    raise BadParameterError("unique_oracle", "answered 'unique' for every family member")


def _random_edges(kind: str, n: int, rng: random.Random) -> List[Edge]:
    if kind == "path":
        return [(v - 1, v) for v in range(1, n)]
    if kind == "star":
        return [(0, v) for v in range(1, n)]
    if kind == "cycle":
        return [(v, (v + 1) % n) for v in range(n)]
    tree = [(rng.randrange(v), v) for v in range(1, n)]
    if kind == "forest":
        return [edge for edge in tree if rng.random() >= 0.25]
    return tree


def _random_rankings(graph: Graph, rng: random.Random, cap: Optional[int]) -> ExplicitPreferences:
    rankings = []
    for i in range(graph.n):
        coalitions: List[Coalition] = list(list_connected_subsets(graph, anchor=i, cap=cap))
        rng.shuffle(coalitions)
        tiers: List[Tier] = []
        current = [coalitions[0]]
        for coalition in coalitions[1:]:
            if rng.random() < 0.5:
                tiers.append(frozenset(current))
                current = []
            current.append(coalition)
        tiers.append(frozenset(current))
        rankings.append(tuple(tiers))
    return ExplicitPreferences(tuple(rankings))


def random_instance(
    kind: str,
    n: int,
    preference_kind: str,
    seed: int,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
) -> GameInstance:
    """
    Random game, fully determined by its arguments.

    Args:
        kind: One of tree, path, star, cycle, forest
        n: Number of players
        preference_kind: One of additive, symmetric_additive, enemy, explicit
        seed: Seed of the generator
        cap: Connected-subset cap per player for explicit rankings

    Returns:
        Additive games draw integer utilities in [-9, 9]; enemy games draw 1 or
        ``-n`` per pair; explicit games tier every connected coalition of each
        player at random

    Raises:
        BadParameterError: On an unknown kind, ``n < 1``, or a cycle with fewer than 3 players

    Example:
        >>> random_instance("star", 6, "enemy", seed=7).utilities.is_enemy_oriented()
        True
    """
    if kind not in GRAPH_KINDS:
        raise BadParameterError("kind", f"must be one of {', '.join(GRAPH_KINDS)}", value=kind)
    if preference_kind not in PREFERENCE_KINDS:
        raise BadParameterError(
            "preferences", f"must be one of {', '.join(PREFERENCE_KINDS)}", value=preference_kind
        )
    validate_positive_int(n, "n", minimum=3 if kind == "cycle" else 1)

    rng = random.Random(seed)
    graph = Graph(tuple(f"p{v}" for v in range(n)), frozenset(_random_edges(kind, n, rng)))

    if preference_kind == "explicit":
        return GameInstance(graph, _random_rankings(graph, rng, cap))

    entries: Dict[Tuple[int, int], Rational] = {}
    symmetric = preference_kind != "additive"
    for i in range(n):
        for j in range(n):
            if i == j or (symmetric and j < i):
                continue
            if preference_kind == "enemy":
                entries[(i, j)] = rng.choice([1, -n])
            else:
                entries[(i, j)] = rng.randint(-9, 9)
    matrix = UtilityMatrix.from_entries(n, entries, symmetric=symmetric, mirror=symmetric)
    return GameInstance(graph, matrix)
