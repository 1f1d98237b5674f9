"""
Command-line interface for the hedonic-graphs toolkit.

Reads game and partition files, runs the solvers and verifiers, generates
instances and replays deviation dynamics. The first line written to stdout is
the verdict token (PARTITION, NONE, STABLE, WITNESS, ...); logs go to stderr.
With ``--format machine`` stdout carries exactly one JSON document.

Exit codes: 0 success (NONE included), 1 verify found a witness, 2 usage or
format error, 3 budget exceeded, 4 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, List, Optional, Union

from pydantic import BaseModel

from hedonic_graphs.config import LOG_LEVELS, HedonicConfig
from hedonic_graphs.exceptions import HedonicGraphError
from hedonic_graphs.game import GameInstance
from hedonic_graphs.graph import Graph
from hedonic_graphs.models import (
    DynamicsReport,
    EnumerationReport,
    GameDocument,
    GraphDocument,
    SolveReport,
    VerifyReport,
    WeightedGraphDocument,
    load_document,
    load_game,
    load_partition,
)
from hedonic_graphs.stability import Partition
from hedonic_graphs.toolkit import FAMILIES, SOLVE_CONCEPTS, HedonicToolkit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_USAGE = 2

Handler = Callable[[HedonicToolkit, argparse.Namespace], int]


def _print_json(data: Any) -> None:
    """Pretty-print dictionaries or pydantic models as JSON."""
    if hasattr(data, "model_dump"):
        payload = data.model_dump()
    elif hasattr(data, "__dict__"):
        payload = data.__dict__
    else:
        payload = data

    print(json.dumps(payload, default=str, indent=2))


def _emit(args: argparse.Namespace, report: BaseModel, lines: List[str]) -> None:
    if args.format == "machine":
        _print_json(report)
        return
    for line in lines:
        print(line)


def _block_lines(graph: Graph, partition: Partition) -> List[str]:
    return [" ".join(graph.names(block)) for block in partition.blocks]


def _load_config(args: argparse.Namespace) -> HedonicConfig:
    config = HedonicConfig.from_env(
        max_subsets=args.max_subsets,
        max_partitions=args.max_partitions,
        threads=args.threads,
        log_level=args.log_level,
    )
    if args.debug_verify:
        config.solver_config.debug_verify = True
    return config


def _cmd_solve(toolkit: HedonicToolkit, args: argparse.Namespace) -> int:
    game = load_game(args.game)
    root = game.graph.index(args.root) if args.root is not None else None
    outcome = toolkit.solve(game, args.concept, root=root)

    if outcome.partition is None:
        report = SolveReport(
            concept=outcome.concept,
            solver=outcome.solver,
            verdict="NONE",
            oracle_calls=outcome.oracle_calls,
            warnings=list(outcome.warnings),
        )
        _emit(args, report, ["NONE"])
        return EXIT_OK

    report = SolveReport(
        concept=outcome.concept,
        solver=outcome.solver,
        verdict="PARTITION",
        partition=[game.graph.names(block) for block in outcome.partition.blocks],
        oracle_calls=outcome.oracle_calls,
        warnings=list(outcome.warnings),
    )
    _emit(args, report, ["PARTITION"] + _block_lines(game.graph, outcome.partition))
    return EXIT_OK


def _describe_witness(report: VerifyReport) -> str:
    witness = report.witness
    if witness is None:
        return ""
    if witness.kind == "blocking":
        members = " ".join(witness.coalition or [])
        return f"blocking {witness.block_kind} {{{members}}}"
    target = "alone" if witness.target is None else "{" + " ".join(witness.target) + "}"
    return f"deviation {witness.concept} {witness.player} -> {target}"


def _cmd_verify(toolkit: HedonicToolkit, args: argparse.Namespace) -> int:
    game = load_game(args.game)
    partition = load_partition(args.partition, game.graph)
    verdict = toolkit.verify(game, partition, args.concept)
    report = VerifyReport.from_verdict(game.graph, args.concept, verdict)

    if report.verdict == "STABLE":
        _emit(args, report, ["STABLE"])
        return EXIT_OK
    _emit(args, report, ["WITNESS", _describe_witness(report)])
    return EXIT_WITNESS


def _cmd_enumerate(toolkit: HedonicToolkit, args: argparse.Namespace) -> int:
    graph = load_game(args.game).graph
    items: List[Any]
    if args.what == "connected-subsets":
        subsets = toolkit.connected_subsets(graph)
        items = [graph.names(c) for c in subsets]
        lines = [" ".join(names) for names in items]
    else:
        partitions = toolkit.feasible_partitions(graph)
        items = [[graph.names(block) for block in p.blocks] for p in partitions]
        lines = [" | ".join(" ".join(block) for block in blocks) for blocks in items]

    report = EnumerationReport(what=args.what, count=len(items), items=items)
    _emit(args, report, [f"COUNT {len(items)}"] + lines)
    return EXIT_OK


def _cmd_generate(toolkit: HedonicToolkit, args: argparse.Namespace) -> int:
    base = load_document(GraphDocument, args.base).to_graph() if args.base else None
    weighted = (
        load_document(WeightedGraphDocument, args.weighted).to_weighted_graph()
        if args.weighted
        else None
    )
    instance = toolkit.generate(
        args.family,
        base=base,
        weighted=weighted,
        t=args.t,
        s=args.s,
        k=args.k,
        pendants=args.pendants,
        kind=args.kind,
        n=args.n,
        preferences=args.preferences,
        seed=args.seed,
    )
    document: Union[GameDocument, GraphDocument]
    if isinstance(instance, GameInstance):
        document = GameDocument.from_game(instance)
    else:
        document = GraphDocument(
            players=list(instance.players),
            edges=[(instance.players[u], instance.players[v]) for u, v in instance.sorted_edges()],
        )

    if args.output:
        Path(args.output).write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info(f"Wrote {args.family} instance to {args.output}")
        _emit(args, document, [f"GENERATED {args.output}"])
    else:
        _print_json(document)
    return EXIT_OK


def _cmd_dynamics(toolkit: HedonicToolkit, args: argparse.Namespace) -> int:
    game = load_game(args.game)
    start = load_partition(args.start, game.graph) if args.start else None
    trace = toolkit.dynamics(
        game, start=start, rule=args.rule, max_steps=args.max_steps, seed=args.seed
    )
    report = DynamicsReport.from_trace(game.graph, args.rule, trace)

    lines = [report.outcome.upper()]
    for step in report.steps:
        target = "alone" if step.target is None else "{" + " ".join(step.target) + "}"
        line = f"{step.player}: {{{' '.join(step.source)}}} -> {target}"
        if step.potential_after is not None:
            line += f" potential {step.potential_before} -> {step.potential_after}"
        lines.append(line)
    lines.append("TERMINAL")
    lines.extend(_block_lines(game.graph, trace.terminal))
    _emit(args, report, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Create the top-level CLI parser."""
    parser = argparse.ArgumentParser(
        prog="hedonic",
        description="Solve, verify and generate hedonic coalition-formation games on graphs.",
    )
    parser.add_argument(
        "--format",
        choices=("human", "machine"),
        default="human",
        help="Output format: verdict lines (default) or one JSON document.",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        help="Logging level (falls back to HEDONIC_LOG_LEVEL, default INFO).",
    )
    parser.add_argument(
        "--max-subsets",
        type=int,
        help="Cap on enumerated connected subsets (falls back to HEDONIC_MAX_SUBSETS).",
    )
    parser.add_argument(
        "--max-partitions",
        type=int,
        help="Budget of enumerated feasible partitions (falls back to HEDONIC_MAX_PARTITIONS).",
    )
    parser.add_argument(
        "--threads",
        type=int,
        help="Worker threads for exhaustive search (default: 1).",
    )
    parser.add_argument(
        "--debug-verify",
        action="store_true",
        help="Re-verify every solver output before returning it.",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser(
        "solve", help="Construct a stable partition or prove none exists."
    )
    solve.add_argument("--concept", required=True, choices=SOLVE_CONCEPTS)
    solve.add_argument("--root", help="Player to root the forest solvers at.")
    solve.add_argument("game", help="Game file (JSON).")
    solve.set_defaults(func=_cmd_solve)

    verify = subparsers.add_parser("verify", help="Check a partition against a concept.")
    verify.add_argument("--concept", required=True, choices=("ir",) + SOLVE_CONCEPTS)
    verify.add_argument("game", help="Game file (JSON).")
    verify.add_argument("partition", help="Partition file (JSON).")
    verify.set_defaults(func=_cmd_verify)

    enumerate_ = subparsers.add_parser(
        "enumerate", help="List connected subsets or feasible partitions."
    )
    enumerate_.add_argument(
        "--what", required=True, choices=("connected-subsets", "feasible-partitions")
    )
    enumerate_.add_argument("game", help="Game file (JSON); only its graph is used.")
    enumerate_.set_defaults(func=_cmd_enumerate)

    generate = subparsers.add_parser("generate", help="Generate a fixture or reduction instance.")
    generate.add_argument("--family", required=True, choices=FAMILIES)
    generate.add_argument("--k", type=int, help="Cycle length (cycle-no-is).")
    generate.add_argument("--pendants", type=int, default=0, help="Pendant players (cycle-no-is).")
    generate.add_argument("--base", help="Base graph file for the clique reductions.")
    generate.add_argument("--weighted", help="Weighted graph file (maxcut-star).")
    generate.add_argument("--t", type=int, help="Clique threshold of the reductions.")
    generate.add_argument("--s", type=int, help="Clique size added by unique-clique.")
    generate.add_argument("--kind", default="tree", help="Random graph kind (random).")
    generate.add_argument("--n", type=int, help="Number of players (random).")
    generate.add_argument("--preferences", default="additive", help="Preference kind (random).")
    generate.add_argument("--seed", type=int, default=0, help="Random seed (random).")
    generate.add_argument("--output", help="Write the instance here instead of stdout.")
    generate.set_defaults(func=_cmd_generate)

    dynamics = subparsers.add_parser("dynamics", help="Replay better-response deviations.")
    dynamics.add_argument("game", help="Game file (JSON).")
    dynamics.add_argument("--rule", default="ns", choices=("ns", "is", "ins", "ir-ins"))
    dynamics.add_argument("--start", help="Starting partition file (default: singletons).")
    dynamics.add_argument("--max-steps", type=int, help="Step limit (default: 1000).")
    dynamics.add_argument("--seed", type=int, help="Seed of the random deviation policy.")
    dynamics.set_defaults(func=_cmd_dynamics)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for the console script; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or EXIT_OK)

    try:
        config = _load_config(args)
    except ValueError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=config.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    handler: Handler = args.func
    toolkit = HedonicToolkit(config)
    try:
        return handler(toolkit, args)
    except HedonicGraphError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return exc.exit_code
    finally:
        toolkit.close()


if __name__ == "__main__":
    sys.exit(main())
