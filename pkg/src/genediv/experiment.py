"""Batch experiment harness: variant comparison, grid search, CSV artifacts.

``run_experiment`` executes every configured variant over a common list of
seeds and writes:

* one raw CSV per variant -- header
  ``variant,seed,generation,mean_raw_fitness,best_raw_fitness,mean_probe_diversity``
  with one row per seed per generation, seeds in order, generations
  ascending within a seed;
* one aggregate CSV -- header
  ``variant,generation,mean_raw_fitness,std_raw_fitness`` with one row per
  variant per generation, where mean and standard deviation are taken
  across seeds of the per-generation population mean.

``grid_search`` sweeps candidate diversity weights for a single metric and
writes ``lambda,mean_final_fitness,std_final_fitness`` (statistics of the
final generation's mean raw fitness across seeds), reporting the argmax
weight with ties broken toward the smaller value.

All real numbers are written with fixed six-decimal formatting and ``\n``
line endings, so rerunning with the same configuration reproduces the files
byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

from .diversity import DiversityConfig, MetricKind
from .engine import EngineConfig, TraceRow, evolve, run_evolution
from .genealogy import write_genealogy_log
from .routing import RoutingProblem

RAW_HEADER = "variant,seed,generation,mean_raw_fitness,best_raw_fitness,mean_probe_diversity"
AGGREGATE_HEADER = "variant,generation,mean_raw_fitness,std_raw_fitness"
GRID_HEADER = "lambda,mean_final_fitness,std_final_fitness"


def format_real(value: float) -> str:
    """Fixed six-decimal rendering used for every real-valued CSV field."""
    return f"{value:.6f}"


def _write_lines(path: Path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def _mean_std(values: list[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return mean, math.sqrt(var)


@dataclass
class ExperimentSpec:
    """One comparison experiment: which variants, which seeds, where to write."""

    variants: list[tuple[str, MetricKind, float]]
    seeds: list[int]
    engine: EngineConfig
    problem: RoutingProblem
    output_path: Path

    @property
    def arena(self):
        return self.problem.arena

    def validate(self) -> None:
        if not self.variants:
            raise ValueError("experiment needs at least one variant")
        names = [name for name, _, _ in self.variants]
        if len(set(names)) != len(names):
            raise ValueError(f"variant names must be unique, got {names}")
        if not self.seeds:
            raise ValueError("experiment needs at least one seed")
        self.engine.validate()


@dataclass
class ExperimentResult:
    """Paths of the CSVs written plus the in-memory traces behind them."""

    raw_paths: dict[str, Path]
    aggregate_path: Path
    traces: dict[tuple[str, int], list[TraceRow]]


def _engine_for(spec_engine: EngineConfig, kind: MetricKind, weight: float) -> EngineConfig:
    diversity = DiversityConfig(
        kind=kind, weight=weight, sample_size=spec_engine.diversity.sample_size
    )
    return replace(spec_engine, diversity=diversity)


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Run every (variant, seed) pair sequentially and write the CSVs."""
    spec.validate()
    out_dir = Path(spec.output_path)
    out_dir.mkdir(parents=True, exist_ok=True)

    raw_paths: dict[str, Path] = {}
    traces: dict[tuple[str, int], list[TraceRow]] = {}
    aggregate_lines = [AGGREGATE_HEADER]

    for name, kind, weight in spec.variants:
        engine = _engine_for(spec.engine, kind, weight)
        per_seed: list[list[TraceRow]] = []
        raw_lines = [RAW_HEADER]
        for seed in spec.seeds:
            rows = evolve(engine, spec.problem, rng_seed=seed)
            traces[(name, seed)] = rows
            per_seed.append(rows)
            for row in rows:
                raw_lines.append(
                    f"{name},{seed},{row.generation},"
                    f"{format_real(row.mean_raw_fitness)},"
                    f"{format_real(row.best_raw_fitness)},"
                    f"{format_real(row.mean_probe_diversity)}"
                )
        raw_path = out_dir / f"raw_{name}.csv"
        _write_lines(raw_path, raw_lines)
        raw_paths[name] = raw_path

        for g in range(spec.engine.generations):
            mean, std = _mean_std([rows[g].mean_raw_fitness for rows in per_seed])
            aggregate_lines.append(
                f"{name},{per_seed[0][g].generation},{format_real(mean)},{format_real(std)}"
            )

    aggregate_path = out_dir / "aggregate.csv"
    _write_lines(aggregate_path, aggregate_lines)
    return ExperimentResult(raw_paths, aggregate_path, traces)


@dataclass
class GridSpec:
    """A diversity-weight sweep for one metric kind."""

    kind: MetricKind
    lambda_values: list[float]
    seeds: list[int]
    engine: EngineConfig
    problem: RoutingProblem
    output_path: Path

    def validate(self) -> None:
        if not self.lambda_values:
            raise ValueError("grid search needs at least one candidate weight")
        for a, b in zip(self.lambda_values, self.lambda_values[1:]):
            if a >= b:
                raise ValueError(f"candidate weights must be sorted ascending, got {self.lambda_values}")
        if any(v < 0 for v in self.lambda_values):
            raise ValueError("candidate weights must be non-negative")
        if not self.seeds:
            raise ValueError("grid search needs at least one seed")
        if self.engine.generations < 1:
            raise ValueError("grid search needs at least one generation")
        self.engine.validate()


@dataclass
class GridResult:
    """Per-weight statistics and the selected best weight."""

    kind: MetricKind
    rows: list[tuple[float, float, float]]  # (lambda, mean final, std final)
    best_lambda: float
    path: Path


def grid_search(spec: GridSpec) -> GridResult:
    """Evaluate each candidate weight over all seeds; write and return results."""
    spec.validate()
    out_dir = Path(spec.output_path)
    out_dir.mkdir(parents=True, exist_ok=True)

    rows: list[tuple[float, float, float]] = []
    best_lambda = spec.lambda_values[0]
    best_mean = -math.inf
    lines = [GRID_HEADER]
    for lam in spec.lambda_values:
        engine = _engine_for(spec.engine, spec.kind, lam)
        finals = [
            evolve(engine, spec.problem, rng_seed=seed)[-1].mean_raw_fitness
            for seed in spec.seeds
        ]
        mean, std = _mean_std(finals)
        rows.append((lam, mean, std))
        lines.append(f"{format_real(lam)},{format_real(mean)},{format_real(std)}")
        if mean > best_mean:  # ties keep the earlier (smaller) weight
            best_mean = mean
            best_lambda = lam

    path = out_dir / f"grid_{spec.kind.value}.csv"
    _write_lines(path, lines)
    return GridResult(kind=spec.kind, rows=rows, best_lambda=best_lambda, path=path)


def dump_genealogy(
    engine: EngineConfig,
    problem: RoutingProblem,
    seed: int,
    output_path: str | Path,
) -> Path:
    """Run one evolution and write its full ancestry log to ``output_path``."""
    result = run_evolution(engine, problem, seed=seed)
    path = Path(output_path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    write_genealogy_log(result.graph, path)
    return path
