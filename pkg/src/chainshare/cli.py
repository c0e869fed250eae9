"""Batch command line: scenario files in, allocation and weighting reports out.

Subcommands: shapley, allocate, ahp weights, ahp synthesize, sample,
validate. Exit codes: 0 success, 1 validation or domain failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .adjust import MODES, adjusted_shapley
from .ahp import synthesize_factors
from .errors import ChainshareError, ConsistencyGateError
from .game import shapley_exact, validate_game
from .report import FORMATS, ReportDocument, render
from .sampling import DEFAULT_CHUNK_SIZE, SamplingPlan, sample_shapley
from .scenario import load_scenario, resolve_factors, scenario_game, scenario_hierarchy


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", help="path to a scenario file")
    common.add_argument("--format", choices=FORMATS, default="table", help="output format (default: table)")
    common.add_argument("--output", metavar="PATH", help="write the report to PATH instead of stdout")

    parser = argparse.ArgumentParser(
        prog="chainshare",
        description="Profit allocation for value-chain coalitions: exact Shapley payoffs, "
        "influence-factor adjustment, pairwise-comparison weighting, and Monte Carlo estimation.",
    )
    parser.add_argument("--version", action="version", version=f"chainshare {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    commands.add_parser("shapley", parents=[common], help="exact classical allocation")

    allocate = commands.add_parser(
        "allocate", parents=[common], help="classical plus factor-adjusted allocation"
    )
    allocate.add_argument(
        "--mode", choices=MODES, default=None,
        help="adjustment variant (default: the scenario's mode, else eq3)",
    )
    allocate.add_argument(
        "--normalize", action="store_true",
        help="rescale the factors to sum to exactly 1 before adjusting",
    )

    ahp = commands.add_parser("ahp", help="pairwise-comparison weighting commands")
    ahp_commands = ahp.add_subparsers(dest="ahp_command", required=True, metavar="SUBCOMMAND")
    weights = ahp_commands.add_parser("weights", parents=[common], help="criteria weights and consistency")
    weights.add_argument("--method", choices=("power", "geometric"), default="power",
                         help="weight extraction method (default: power iteration)")
    ahp_commands.add_parser(
        "synthesize", parents=[common],
        help="per-player influence factors from the scenario's hierarchy",
    )

    sample = commands.add_parser("sample", parents=[common], help="seeded Monte Carlo estimate")
    sample.add_argument("--permutations", type=int, default=10_000, metavar="M",
                        help="number of sampled permutations (default: 10000)")
    sample.add_argument("--seed", type=int, default=0, help="64-bit RNG seed (default: 0)")
    sample.add_argument("--chunk-size", type=int, default=DEFAULT_CHUNK_SIZE, metavar="K",
                        help=f"permutations per deterministic chunk (default: {DEFAULT_CHUNK_SIZE})")
    sample.add_argument("--workers", type=int, default=1,
                        help="worker threads; the report is identical for any value (default: 1)")

    validate = commands.add_parser("validate", parents=[common], help="superadditivity diagnostics")
    validate.add_argument("--strict", action="store_true",
                          help="exit 1 when any superadditivity violation is found")

    return parser


def _run(args: argparse.Namespace) -> tuple[ReportDocument, int]:
    sf = load_scenario(args.scenario)
    players = sf.players

    if args.command == "shapley":
        game = scenario_game(sf)
        return ReportDocument("shapley", players, classical=shapley_exact(game)), 0

    if args.command == "allocate":
        game = scenario_game(sf)
        factors = resolve_factors(sf, normalize=args.normalize or None)
        if factors is None:
            raise ChainshareError(
                "scenario carries no adjustment factors; add a 'factors' map or an 'ahp' section"
            )
        mode = args.mode or sf.mode or "eq3"
        adjusted = adjusted_shapley(game, factors, mode)
        return ReportDocument(
            "allocate", players, classical=adjusted.base, adjusted=adjusted, factors=factors
        ), 0

    if args.command == "ahp":
        if args.ahp_command == "weights":
            hierarchy = scenario_hierarchy(sf, method=args.method)
            return ReportDocument("ahp-weights", players, hierarchy=hierarchy), 0
        hierarchy = scenario_hierarchy(sf)
        factors = synthesize_factors(hierarchy)
        return ReportDocument(
            "ahp-synthesize", players, factors=factors, hierarchy=hierarchy
        ), 0

    if args.command == "sample":
        game = scenario_game(sf)
        plan = SamplingPlan(permutations=args.permutations, seed=args.seed, chunk_size=args.chunk_size)
        report = sample_shapley(game, game.player_set, plan, workers=args.workers)
        return ReportDocument("sample", players, estimates=report), 0

    if args.command == "validate":
        game = scenario_game(sf)
        report = validate_game(game)
        status = 1 if (args.strict and not report.ok) else 0
        return ReportDocument("validate", players, validation=report), status

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, status = _run(args)
    except ConsistencyGateError as exc:
        print(f"error: {exc} [CR = {exc.ratio:.4f}]", file=sys.stderr)
        return 1
    except ChainshareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = render(doc, args.format)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)
    return status


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
