"""
@file graph.py
@description Communication graphs, rooted trees and connected-subset enumeration
@module hedonic_graphs.graph
@author hedonic-graphs maintainers
@created 2026-10-17

Player identifiers are external strings mapped to dense integer indices; every
internal structure works on indices. Graphs are immutable and hashable.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import networkx as nx

from hedonic_graphs.cache import CacheManager
from hedonic_graphs.config import CacheConfig, EnumerationBudget
from hedonic_graphs.exceptions import (
    CapExceededError,
    NotAForestError,
    NotATreeError,
    ValidationError,
)

logger = logging.getLogger(__name__)

Coalition = FrozenSet[int]
Edge = Tuple[int, int]

_subset_cache = CacheManager(CacheConfig())

# Limit applied when callers pass no explicit cap; None disables it.
DEFAULT_SUBSET_CAP = EnumerationBudget().max_subsets


def configure_subset_cache(config: CacheConfig) -> None:
    """Replace the process-wide connected-subset cache."""
    global _subset_cache
    _subset_cache = CacheManager(config)


def coalition_key(members: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    """
    Canonical sort key for coalitions: size ascending, then sorted members.

    Example:
        >>> sorted([{2}, {0, 1}, {1}], key=coalition_key)
        [{1}, {2}, {0, 1}]
    """
    ordered = tuple(sorted(members))
    return (len(ordered), ordered)


def preference_tie_key(members: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    """Tie-break key among equally good coalitions: larger first, then lexicographic."""
    ordered = tuple(sorted(members))
    return (-len(ordered), ordered)


def make_coalition(members: Iterable[int]) -> Coalition:
    """Build a coalition, rejecting the empty set."""
    coalition = frozenset(members)
    if not coalition:
        raise ValidationError("coalition", "coalitions must be non-empty")
    return coalition


class Topology(str, Enum):
    """Most specific shape of a communication graph."""

    PATH = "path"
    STAR = "star"
    TREE = "tree"
    FOREST = "forest"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class Graph:
    """
    Undirected communication graph over indexed players.

    Attributes:
        players: Player identifiers; position is the player's index
        edges: Unordered index pairs, stored as ``(low, high)``

    Example:
        >>> g = Graph.from_names(["l", "c", "r"], [("l", "c"), ("c", "r")])
        >>> g.neighbors(1)
        frozenset({0, 2})
    """

    players: Tuple[str, ...]
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        players = tuple(self.players)
        if not players:
            raise ValidationError("players", "a graph needs at least one player")
        for name in players:
            if not isinstance(name, str) or not name:
                raise ValidationError("players", f"identifier {name!r} must be a non-empty string")
        if len(set(players)) != len(players):
            raise ValidationError("players", "player identifiers must be unique")

        raw_edges = list(self.edges)
        normalized: Set[Edge] = set()
        for u, v in raw_edges:
            if not (0 <= u < len(players) and 0 <= v < len(players)):
                raise ValidationError("edges", f"endpoint of ({u}, {v}) is not a player index")
            if u == v:
                raise ValidationError("edges", f"self-loop on {players[u]!r}")
            edge = (min(u, v), max(u, v))
            if edge in normalized:
                raise ValidationError("edges", f"duplicate edge {players[u]!r}-{players[v]!r}")
            normalized.add(edge)

        object.__setattr__(self, "players", players)
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_names(cls, players: Sequence[str], edges: Iterable[Tuple[str, str]]) -> "Graph":
        """
        Build a graph from identifier pairs.

        Raises:
            ValidationError: If an edge names an unknown player
        """
        index = {name: i for i, name in enumerate(players)}
        indexed: Set[Edge] = set()
        for u, v in edges:
            if u not in index or v not in index:
                raise ValidationError("edges", f"edge ({u}, {v}) names an unknown player")
            edge = (min(index[u], index[v]), max(index[u], index[v]))
            if edge in indexed:
                raise ValidationError("edges", f"duplicate edge {u!r}-{v!r}")
            indexed.add(edge)
        return cls(tuple(players), frozenset(indexed))

    @property
    def n(self) -> int:
        return len(self.players)

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.players)}

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        neighbors: List[Set[int]] = [set() for _ in self.players]
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return tuple(frozenset(s) for s in neighbors)

    def index(self, name: str) -> int:
        """Return the index of a player identifier."""
        try:
            return self._index[name]
        except KeyError:
            raise ValidationError("player", f"unknown player {name!r}") from None

    def neighbors(self, i: int) -> FrozenSet[int]:
        return self.adjacency[i]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def names(self, coalition: Iterable[int]) -> List[str]:
        """Player identifiers of a coalition, in index order."""
        return [self.players[i] for i in sorted(coalition)]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class WeightedGraph:
    """
    Graph with non-negative integer edge weights; pairs without an edge weigh 0.

    Attributes:
        graph: Underlying graph
        weights: ``((u, v), w)`` per edge, ``u < v``, sorted

    Example:
        >>> wg = WeightedGraph.from_names(["u", "v"], {("u", "v"): 5})
        >>> wg.w(1, 0)
        5
    """

    graph: Graph
    weights: Tuple[Tuple[Edge, int], ...]

    def __post_init__(self) -> None:
        normalized: Dict[Edge, int] = {}
        for (u, v), weight in self.weights:
            edge = (min(u, v), max(u, v))
            if edge not in self.graph.edges:
                raise ValidationError("weights", f"({u}, {v}) is not an edge")
            if edge in normalized:
                raise ValidationError("weights", f"edge ({u}, {v}) is weighted twice")
            if isinstance(weight, bool) or not isinstance(weight, int) or weight < 0:
                raise ValidationError("weights", f"{weight!r} is not a non-negative integer")
            normalized[edge] = weight
        for edge in self.graph.edges:
            normalized.setdefault(edge, 0)
        object.__setattr__(self, "weights", tuple(sorted(normalized.items())))

    @classmethod
    def from_names(
        cls, players: Sequence[str], weights: Mapping[Tuple[str, str], int]
    ) -> "WeightedGraph":
        """Build a weighted graph whose edges are the keys of ``weights``."""
        graph = Graph.from_names(players, weights.keys())
        return cls(
            graph,
            tuple(((graph.index(u), graph.index(v)), w) for (u, v), w in weights.items()),
        )

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def _weight_map(self) -> Dict[Edge, int]:
        return dict(self.weights)

    def w(self, u: int, v: int) -> int:
        return self._weight_map.get((min(u, v), max(u, v)), 0)

    def cut_weight(self, side: Iterable[int]) -> int:
        """Total weight of edges with exactly one endpoint in ``side``."""
        members = frozenset(side)
        return sum(w for (u, v), w in self.weights if (u in members) != (v in members))


def is_connected(graph: Graph, x: Iterable[int]) -> bool:
    """
    Decide whether the subgraph induced on ``x`` is connected.

    Singletons are connected; the empty set is not.

    Example:
        >>> is_connected(path, {0, 2})
        False
    """
    members = frozenset(x)
    if not members:
        return False
    start = next(iter(members))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in graph.adjacency[u]:
            if v in members and v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(members)


def connected_components(graph: Graph, nodes: Iterable[int]) -> List[Coalition]:
    """Components of the subgraph induced on ``nodes``, ordered by smallest member."""
    remaining = set(nodes)
    components: List[Coalition] = []
    while remaining:
        start = min(remaining)
        component = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in graph.adjacency[u]:
                if v in remaining and v not in component:
                    component.add(v)
                    queue.append(v)
        remaining -= component
        components.append(frozenset(component))
    return components


def star_center(graph: Graph) -> Optional[int]:
    """
    Return the center of a star graph, or None if the graph is not a star.

    A single node is its own center; on two nodes the lower index is chosen.
    """
    if len(graph.edges) != graph.n - 1:
        return None
    for i in range(graph.n):
        if graph.degree(i) == graph.n - 1:
            return i
    return None


def classify(graph: Graph) -> Topology:
    """
    Return the most specific topology tag of a graph.

    Paths win over stars (a three-node path is reported as a path), stars
    over trees, and trees over forests.

    Example:
        >>> classify(Graph.from_names("abc", [("a", "b"), ("b", "c"), ("c", "a")]))
        <Topology.CYCLIC: 'cyclic'>
    """
    g = graph.to_networkx()
    if not nx.is_forest(g):
        return Topology.CYCLIC
    if not nx.is_connected(g):
        return Topology.FOREST
    if max((d for _, d in g.degree()), default=0) <= 2:
        return Topology.PATH
    if star_center(graph) is not None:
        return Topology.STAR
    return Topology.TREE


@dataclass(frozen=True, eq=False)
class RootedTree:
    """
    A tree component oriented away from a root.

    Attributes:
        base: The whole communication graph
        root: Root index
        nodes: Players of the oriented component
        parent: Parent of every non-root node
        children: Children of every node, ascending
        height: Height of every node (0 for leaves)
        order: Breadth-first order from the root
    """

    base: Graph
    root: int
    nodes: FrozenSet[int]
    parent: Mapping[int, int]
    children: Mapping[int, Tuple[int, ...]]
    height: Mapping[int, int]
    order: Tuple[int, ...]

    @cached_property
    def _successors(self) -> Dict[int, Coalition]:
        succ: Dict[int, Coalition] = {}
        for i in reversed(self.order):
            members = {i}
            for k in self.children[i]:
                members |= succ[k]
            succ[i] = frozenset(members)
        return succ

    def succ(self, i: int) -> Coalition:
        """Node ``i`` together with all its descendants."""
        return self._successors[i]

    def ch(self, x: Iterable[int]) -> Tuple[int, ...]:
        """Children of a set: nodes outside ``x`` whose parent lies in ``x``, ascending."""
        members = frozenset(x)
        found = {k for i in members for k in self.children[i] if k not in members}
        return tuple(sorted(found))

    def bottom_up(self) -> List[int]:
        """Nodes ordered by height, then index."""
        return sorted(self.nodes, key=lambda i: (self.height[i], i))


def _orient(graph: Graph, root: int, component: Iterable[int]) -> RootedTree:
    nodes = frozenset(component)
    parent: Dict[int, int] = {}
    children: Dict[int, List[int]] = {i: [] for i in nodes}
    order: List[int] = []
    queue = deque([root])
    seen = {root}
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in sorted(graph.adjacency[u]):
            if v not in seen:
                seen.add(v)
                parent[v] = u
                children[u].append(v)
                queue.append(v)

    height: Dict[int, int] = {}
    for i in reversed(order):
        height[i] = 1 + max((height[k] for k in children[i]), default=-1)

    return RootedTree(
        base=graph,
        root=root,
        nodes=nodes,
        parent=parent,
        children={i: tuple(ks) for i, ks in children.items()},
        height=height,
        order=tuple(order),
    )


def root_tree(graph: Graph, r: int) -> RootedTree:
    """
    Orient a tree away from ``r``.

    Args:
        graph: A connected acyclic graph
        r: Root index

    Returns:
        The rooted tree with parent, children and height maps

    Raises:
        NotATreeError: If the graph has a cycle or is disconnected
        ValidationError: If ``r`` is not a player index

    Example:
        >>> tree = root_tree(path, 1)
        >>> tree.children[1], tree.height[1]
        ((0, 2), 1)
    """
    if not 0 <= r < graph.n:
        raise ValidationError("root", f"{r} is not a player index")
    g = graph.to_networkx()
    if not nx.is_forest(g):
        raise NotATreeError("graph contains a cycle")
    if not nx.is_connected(g):
        raise NotATreeError("graph is disconnected")
    return _orient(graph, r, range(graph.n))


def root_forest(graph: Graph, root: Optional[int] = None) -> List[RootedTree]:
    """
    Orient every component of a forest.

    The given root orients its own component; every other component is rooted
    at its lowest-index node.

    Raises:
        NotAForestError: If the graph contains a cycle
    """
    if root is not None and not 0 <= root < graph.n:
        raise ValidationError("root", f"{root} is not a player index")
    g = graph.to_networkx()
    if not nx.is_forest(g):
        raise NotAForestError(graph.n)
    trees: List[RootedTree] = []
    for component in sorted(nx.connected_components(g), key=min):
        r = root if root is not None and root in component else min(component)
        trees.append(_orient(graph, r, component))
    logger.debug(f"Rooted forest with {len(trees)} component(s)")
    return trees


def connected_subsets(
    graph: Graph,
    anchor: Optional[int] = None,
    within: Optional[Iterable[int]] = None,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
) -> Iterator[Coalition]:
    """
    Enumerate connected subsets, each exactly once, smallest first.

    Sets are grown one adjacent node at a time, so the work tracks the number
    of connected subsets rather than 2^n. Within one size the order is
    lexicographic on sorted members.

    Args:
        graph: Communication graph
        anchor: If given, only subsets containing this player
        within: If given, only subsets of these players
        cap: Maximum number of subsets to emit (default: 10^6, None for no limit)

    Yields:
        Connected coalitions in canonical order

    Raises:
        CapExceededError: When more than ``cap`` subsets exist
        ValidationError: If ``anchor`` lies outside ``within``

    Example:
        >>> [sorted(c) for c in connected_subsets(path, anchor=1)]
        [[1], [0, 1], [1, 2], [0, 1, 2]]
    """
    allowed = frozenset(range(graph.n)) if within is None else frozenset(within)
    if anchor is not None and anchor not in allowed:
        raise ValidationError("anchor", f"player {anchor} lies outside the restriction set")

    if anchor is not None:
        level: Set[Coalition] = {frozenset([anchor])}
    else:
        level = {frozenset([v]) for v in allowed}

    emitted = 0
    while level:
        for coalition in sorted(level, key=coalition_key):
            emitted += 1
            if cap is not None and emitted > cap:
                raise CapExceededError(cap)
            yield coalition
        grown: Set[Coalition] = set()
        for coalition in level:
            frontier: Set[int] = set()
            for u in coalition:
                frontier |= graph.adjacency[u]
            for v in (frontier & allowed) - coalition:
                grown.add(coalition | {v})
        level = grown


def list_connected_subsets(
    graph: Graph,
    anchor: Optional[int] = None,
    within: Optional[Iterable[int]] = None,
    cap: Optional[int] = DEFAULT_SUBSET_CAP,
) -> Tuple[Coalition, ...]:
    """Memoized, materialized form of :func:`connected_subsets`."""
    restriction = None if within is None else frozenset(within)
    key = ("connected_subsets", graph, anchor, restriction, cap)
    return _subset_cache.get_or_set(
        key, lambda: tuple(connected_subsets(graph, anchor, restriction, cap))
    )
