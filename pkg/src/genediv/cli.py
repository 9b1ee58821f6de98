"""Command-line interface for running experiments and grid searches.

Subcommands::

    genediv run            --config cfg --out dir    # variant comparison CSVs
    genediv grid           --config cfg --metric kind --out dir
    genediv dump-genealogy --config cfg --seed n --out file [--variant kind]

Exit codes: 0 on success, 1 for configuration errors (the message names the
offending key), 2 for I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import (
    ConfigError,
    build_engine_config,
    build_problem,
    lambda_grid,
    load_config,
    seeds_from,
    variant_weight,
)
from .diversity import MetricKind
from .experiment import (
    ExperimentSpec,
    GridSpec,
    dump_genealogy,
    format_real,
    grid_search,
    run_experiment,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2


def _parse_metric(key: str, name: str) -> MetricKind:
    try:
        return MetricKind(name)
    except ValueError:
        valid = ", ".join(k.value for k in MetricKind)
        raise ConfigError(key, f"unknown metric kind {name!r} (expected one of: {valid})") from None


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    problem = build_problem(cfg)
    engine = build_engine_config(cfg)
    variants = [
        (kind.value, kind, variant_weight(cfg, kind) if kind is not MetricKind.NONE else 0.0)
        for kind in cfg["run.variants"]
    ]
    spec = ExperimentSpec(
        variants=variants,
        seeds=seeds_from(cfg),
        engine=engine,
        problem=problem,
        output_path=Path(args.out),
    )
    result = run_experiment(spec)
    for name, path in result.raw_paths.items():
        print(f"wrote {path}")
    print(f"wrote {result.aggregate_path}")
    return EXIT_OK


def _cmd_grid(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    kind = _parse_metric("metric", args.metric)
    if kind is MetricKind.NONE:
        raise ConfigError("metric", "grid search needs a diversity metric, not 'none'")
    spec = GridSpec(
        kind=kind,
        lambda_values=list(lambda_grid(cfg, kind)),
        seeds=seeds_from(cfg),
        engine=build_engine_config(cfg, kind),
        problem=build_problem(cfg),
        output_path=Path(args.out),
    )
    result = grid_search(spec)
    for lam, mean, std in result.rows:
        print(f"lambda={format_real(lam)} mean_final={format_real(mean)} std={format_real(std)}")
    print(f"best lambda for {kind.value}: {format_real(result.best_lambda)}")
    print(f"wrote {result.path}")
    return EXIT_OK


def _cmd_dump_genealogy(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.variant is None:
        kind = cfg["run.variants"][0]
    else:
        kind = _parse_metric("variant", args.variant)
    engine = build_engine_config(cfg, kind)
    path = dump_genealogy(engine, build_problem(cfg), args.seed, args.out)
    print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genediv",
        description="Diversity-aware evolutionary runs on the robot-routing benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run all configured variants and write CSVs")
    p_run.add_argument("--config", default=None, help="path to a key = value config file")
    p_run.add_argument("--out", required=True, help="output directory for CSV files")
    p_run.set_defaults(func=_cmd_run)

    p_grid = sub.add_parser("grid", help="sweep diversity weights for one metric")
    p_grid.add_argument("--config", default=None, help="path to a key = value config file")
    p_grid.add_argument("--metric", required=True, help="metric kind to sweep")
    p_grid.add_argument("--out", required=True, help="output directory for CSV files")
    p_grid.set_defaults(func=_cmd_grid)

    p_dump = sub.add_parser("dump-genealogy", help="run once and write the ancestry log")
    p_dump.add_argument("--config", default=None, help="path to a key = value config file")
    p_dump.add_argument("--seed", required=True, type=int, help="run seed")
    p_dump.add_argument("--out", required=True, help="output file for the log")
    p_dump.add_argument("--variant", default=None, help="metric kind to run (default: first configured)")
    p_dump.set_defaults(func=_cmd_dump_genealogy)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
