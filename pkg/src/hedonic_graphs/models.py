"""
@file models.py
@description Pydantic models for game, partition and graph files and for reports
@module hedonic_graphs.models
@author hedonic-graphs maintainers
@created 2026-10-17

Files name players by identifier; the in-memory model uses indices. Rationals
are written as ``"p/q"`` or integer strings and read back exactly.
"""

import logging
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Type, TypeVar, Union

import pydantic
from pydantic import BaseModel, Field, field_validator

from hedonic_graphs.dynamics import DynamicsTrace
from hedonic_graphs.exceptions import ValidationError
from hedonic_graphs.game import ExplicitPreferences, GameInstance, UtilityMatrix
from hedonic_graphs.graph import Coalition, Graph, WeightedGraph, coalition_key
from hedonic_graphs.stability import (
    BlockingCoalition,
    IndividualDeviation,
    Partition,
    Stable,
    Verdict,
)
from hedonic_graphs.validators import (
    Rational,
    format_rational,
    parse_rational,
    validate_player_names,
)

logger = logging.getLogger(__name__)

RationalText = Union[str, int]
Names = List[str]

M = TypeVar("M", bound=BaseModel)


def _check_names(value: List[str]) -> List[str]:
    try:
        return validate_player_names(value)
    except ValidationError as e:
        raise ValueError(e.message) from None


class AdditivePreferencesDocument(BaseModel):
    """
    Additively separable utilities keyed by player identifiers.

    Attributes:
        symmetric: Whether U(i, j) = U(j, i); one direction per pair is enough
        utilities: ``utilities[i][j]`` is U(i, j); missing entries are 0
    """

    type: Literal["additive"] = "additive"
    symmetric: bool = Field(False, description="Whether the matrix is symmetric")
    utilities: Dict[str, Dict[str, RationalText]] = Field(
        default_factory=dict, description="Sparse utility matrix"
    )


class ExplicitPreferencesDocument(BaseModel):
    """Per-player tiers, best first; each tier is a list of coalitions, each a list of names."""

    type: Literal["explicit"] = "explicit"
    rankings: Dict[str, List[List[Names]]] = Field(..., description="Tiered rankings")


PreferencesDocument = Annotated[
    Union[AdditivePreferencesDocument, ExplicitPreferencesDocument],
    Field(discriminator="type"),
]


class GameDocument(BaseModel):
    """
    A game file.

    Example:
        >>> doc = GameDocument.model_validate_json(Path("parliament3.json").read_text())
        >>> game = doc.to_game()
    """

    players: Names = Field(..., description="Player identifiers")
    edges: List[Tuple[str, str]] = Field(default_factory=list, description="Communication links")
    preferences: PreferencesDocument

    @field_validator("players")
    @classmethod
    def validate_players(cls, v: List[str]) -> List[str]:
        return _check_names(v)

    @classmethod
    def from_game(cls, game: GameInstance) -> "GameDocument":
        graph = game.graph
        edges = [(graph.players[u], graph.players[v]) for u, v in graph.sorted_edges()]
        prefs = game.preferences
        document: Union[AdditivePreferencesDocument, ExplicitPreferencesDocument]
        if isinstance(prefs, UtilityMatrix):
            utilities: Dict[str, Dict[str, RationalText]] = {}
            for i, j, value in prefs.entries():
                utilities.setdefault(graph.players[i], {})[graph.players[j]] = format_rational(
                    value
                )
            document = AdditivePreferencesDocument(symmetric=prefs.symmetric, utilities=utilities)
        else:
            document = ExplicitPreferencesDocument(
                rankings={
                    graph.players[i]: [
                        [graph.names(c) for c in sorted(tier, key=coalition_key)] for tier in tiers
                    ]
                    for i, tiers in enumerate(prefs.rankings)
                }
            )
        return cls(players=list(graph.players), edges=edges, preferences=document)

    def to_game(self) -> GameInstance:
        """
        Build the in-memory game.

        Raises:
            ValidationError: On unknown players, malformed rationals or invalid rankings
        """
        graph = Graph.from_names(self.players, self.edges)
        prefs = self.preferences
        if isinstance(prefs, AdditivePreferencesDocument):
            entries: Dict[Tuple[int, int], Rational] = {}
            for i, row in prefs.utilities.items():
                for j, raw in row.items():
                    entries[(graph.index(i), graph.index(j))] = parse_rational(
                        raw, field=f"utilities[{i}][{j}]"
                    )
            matrix = UtilityMatrix.from_entries(
                graph.n, entries, symmetric=prefs.symmetric, mirror=prefs.symmetric
            )
            return GameInstance(graph, matrix)

        unknown = sorted(set(prefs.rankings) - set(graph.players))
        if unknown:
            raise ValidationError("rankings", f"unknown player(s) {unknown}")
        rankings = []
        for name in graph.players:
            tiers = prefs.rankings.get(name, [])
            rankings.append(
                tuple(
                    frozenset(_coalition(graph, members) for members in tier) for tier in tiers
                )
            )
        return GameInstance(graph, ExplicitPreferences(tuple(rankings)))


def _coalition(graph: Graph, members: Names) -> Coalition:
    if not members:
        raise ValidationError("coalition", "coalitions must be non-empty")
    return frozenset(graph.index(name) for name in members)


class PartitionDocument(BaseModel):
    """A partition file: ``{"partition": [[names...], ...]}``."""

    partition: List[Names] = Field(..., description="Blocks of player identifiers")

    @classmethod
    def from_partition(cls, graph: Graph, partition: Partition) -> "PartitionDocument":
        return cls(partition=[graph.names(block) for block in partition.blocks])

    def to_partition(self, graph: Graph) -> Partition:
        """
        Raises:
            ValidationError: On unknown players, empty or overlapping blocks
        """
        return Partition(tuple(_coalition(graph, block) for block in self.partition))


class GraphDocument(BaseModel):
    """A plain graph file, used as the base of reductions."""

    players: Names
    edges: List[Tuple[str, str]] = Field(default_factory=list)

    @field_validator("players")
    @classmethod
    def validate_players(cls, v: List[str]) -> List[str]:
        return _check_names(v)

    def to_graph(self) -> Graph:
        return Graph.from_names(self.players, self.edges)


class WeightedGraphDocument(BaseModel):
    """A weighted graph file; each edge is ``[u, v, weight]``."""

    players: Names
    edges: List[Tuple[str, str, int]] = Field(default_factory=list)

    @field_validator("players")
    @classmethod
    def validate_players(cls, v: List[str]) -> List[str]:
        return _check_names(v)

    def to_weighted_graph(self) -> WeightedGraph:
        weights: Dict[Tuple[str, str], int] = {}
        for u, v, w in self.edges:
            if (u, v) in weights or (v, u) in weights:
                raise ValidationError("edges", f"duplicate edge {u!r}-{v!r}")
            weights[(u, v)] = w
        return WeightedGraph.from_names(self.players, weights)


def load_document(model: Type[M], path: Union[str, Path]) -> M:
    """
    Read and validate a JSON file.

    Raises:
        ValidationError: If the file is unreadable, not JSON, or does not match ``model``
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError("file", f"cannot read {path}: {e}") from e
    try:
        return model.model_validate_json(text)
    except pydantic.ValidationError as e:
        raise ValidationError("file", f"{path} is not a valid {model.__name__}: {e}") from e


def load_game(path: Union[str, Path]) -> GameInstance:
    return load_document(GameDocument, path).to_game()


def load_partition(path: Union[str, Path], graph: Graph) -> Partition:
    return load_document(PartitionDocument, path).to_partition(graph)


def _optional_rational(value: Optional[Rational]) -> Optional[str]:
    return None if value is None else format_rational(value)


class WitnessReport(BaseModel):
    """A violation found by the verifier."""

    kind: Literal["deviation", "blocking"]
    concept: Optional[str] = None
    player: Optional[str] = None
    target: Optional[Names] = Field(None, description="Joined block; null for leaving alone")
    coalition: Optional[Names] = None
    block_kind: Optional[str] = None

    @classmethod
    def from_witness(
        cls, graph: Graph, witness: Union[IndividualDeviation, BlockingCoalition]
    ) -> "WitnessReport":
        if isinstance(witness, BlockingCoalition):
            return cls(
                kind="blocking",
                coalition=graph.names(witness.coalition),
                block_kind=witness.kind.value,
            )
        return cls(
            kind="deviation",
            concept=witness.concept.value,
            player=graph.players[witness.player],
            target=None if witness.target is None else graph.names(witness.target),
        )


class SolveReport(BaseModel):
    """Result of ``solve``."""

    concept: str
    solver: str
    verdict: Literal["PARTITION", "NONE"]
    partition: Optional[List[Names]] = None
    oracle_calls: int = Field(0, description="Preference comparisons made")
    warnings: List[str] = Field(default_factory=list)


class VerifyReport(BaseModel):
    """Result of ``verify``."""

    concept: str
    verdict: Literal["STABLE", "WITNESS"]
    witness: Optional[WitnessReport] = None

    @classmethod
    def from_verdict(cls, graph: Graph, concept: str, verdict: Verdict) -> "VerifyReport":
        if isinstance(verdict, Stable):
            return cls(concept=concept, verdict="STABLE")
        return cls(
            concept=concept, verdict="WITNESS", witness=WitnessReport.from_witness(graph, verdict)
        )


class EnumerationReport(BaseModel):
    """Result of ``enumerate``: coalitions or partitions, in enumeration order."""

    what: Literal["connected-subsets", "feasible-partitions"]
    count: int
    items: List[Union[Names, List[Names]]] = Field(default_factory=list)


class DynamicsStepReport(BaseModel):
    player: str
    source: Names
    target: Optional[Names] = None
    potential_before: Optional[str] = None
    potential_after: Optional[str] = None
    local_delta: Optional[str] = None
    split: bool = False


class DynamicsReport(BaseModel):
    """Result of ``dynamics``."""

    rule: str
    outcome: str
    steps: List[DynamicsStepReport] = Field(default_factory=list)
    terminal: List[Names]

    @classmethod
    def from_trace(cls, graph: Graph, rule: str, trace: DynamicsTrace) -> "DynamicsReport":
        return cls(
            rule=rule,
            outcome=trace.outcome.value,
            steps=[
                DynamicsStepReport(
                    player=graph.players[step.player],
                    source=graph.names(step.source),
                    target=None if step.target is None else graph.names(step.target),
                    potential_before=_optional_rational(step.potential_before),
                    potential_after=_optional_rational(step.potential_after),
                    local_delta=_optional_rational(step.local_delta),
                    split=step.split,
                )
                for step in trace.steps
            ],
            terminal=[graph.names(block) for block in trace.terminal.blocks],
        )
