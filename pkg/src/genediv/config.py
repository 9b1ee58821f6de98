"""Flat ``key = value`` run configuration with environment overrides.

The configuration file is line-oriented: blank lines and ``#`` comments are
ignored, every other line must be ``key = value`` with a dotted key from the
documented key table (see README).  Precedence, lowest to highest: built-in
defaults, config file, environment variables, command-line flags.

Environment overrides use the ``GENEDIV_`` prefix with dots mapped to
underscores and upper-casing, e.g. ``engine.population_size`` becomes
``GENEDIV_ENGINE_POPULATION_SIZE``.

Every error raised here is a :class:`ConfigError` naming the offending key.
"""

from __future__ import annotations

import os
from pathlib import Path

from .diversity import DiversityConfig, MetricKind
from .engine import EngineConfig
from .routing import STEP_NORMS, Arena, Rect, RoutingProblem

ENV_PREFIX = "GENEDIV_"

# Grids used by `grid` when the config does not pin `grid.lambdas`: one for
# metrics bounded in [0, 1], a finer one for the unbounded behavioural metric.
NORMALIZED_LAMBDA_GRID = (0.1, 0.25, 0.5, 1.0, 2.0, 4.0)
DOMAIN_LAMBDA_GRID = (0.01, 0.05, 0.1, 0.5, 1.0)


class ConfigError(ValueError):
    """A configuration value is missing, malformed, or out of range."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"config key '{key}': {message}")


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(key, f"expected an integer, got {text!r}") from None


def _parse_float(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(key, f"expected a number, got {text!r}") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ConfigError(key, f"expected a finite number, got {text!r}")
    return value


def _parse_positive_int(key: str, text: str) -> int:
    value = _parse_int(key, text)
    if value < 1:
        raise ConfigError(key, f"expected an integer >= 1, got {value}")
    return value


def _parse_nonneg_int(key: str, text: str) -> int:
    value = _parse_int(key, text)
    if value < 0:
        raise ConfigError(key, f"expected an integer >= 0, got {value}")
    return value


def _parse_probability(key: str, text: str) -> float:
    value = _parse_float(key, text)
    if not 0.0 <= value <= 1.0:
        raise ConfigError(key, f"expected a probability in [0, 1], got {value}")
    return value


def _parse_positive_float(key: str, text: str) -> float:
    value = _parse_float(key, text)
    if value <= 0.0:
        raise ConfigError(key, f"expected a number > 0, got {value}")
    return value


def _parse_nonneg_float(key: str, text: str) -> float:
    value = _parse_float(key, text)
    if value < 0.0:
        raise ConfigError(key, f"expected a number >= 0, got {value}")
    return value


def _parse_floats(key: str, text: str, count: int) -> tuple[float, ...]:
    parts = text.split()
    if len(parts) != count:
        raise ConfigError(key, f"expected {count} numbers, got {len(parts)}")
    return tuple(_parse_float(key, p) for p in parts)


def _parse_rect(key: str, text: str) -> tuple[float, ...]:
    return _parse_floats(key, text, 4)


def _parse_point(key: str, text: str) -> tuple[float, ...]:
    return _parse_floats(key, text, 2)


def _parse_step_norm(key: str, text: str) -> str:
    if text not in STEP_NORMS:
        raise ConfigError(key, f"expected one of {STEP_NORMS}, got {text!r}")
    return text


def _parse_metric_kind(key: str, text: str) -> MetricKind:
    try:
        return MetricKind(text)
    except ValueError:
        valid = ", ".join(k.value for k in MetricKind)
        raise ConfigError(key, f"unknown metric kind {text!r} (expected one of: {valid})") from None


def _parse_variants(key: str, text: str) -> tuple[MetricKind, ...]:
    names = text.split()
    if not names:
        raise ConfigError(key, "expected at least one variant name")
    kinds = tuple(_parse_metric_kind(key, name) for name in names)
    if len(set(kinds)) != len(kinds):
        raise ConfigError(key, f"variant names must be unique, got {text!r}")
    return kinds


def _parse_lambda_grid(key: str, text: str) -> tuple[float, ...]:
    parts = text.split()
    if not parts:
        return ()  # empty means "use the per-metric default grid"
    values = tuple(_parse_nonneg_float(key, p) for p in parts)
    for a, b in zip(values, values[1:]):
        if a >= b:
            raise ConfigError(key, f"values must be strictly ascending, got {text!r}")
    return values


# key -> (parser taking (key, raw-string), default raw-string)
_SCHEMA: dict[str, tuple] = {
    "run.variants": (_parse_variants, "none domain genealogical_tree trash_bits"),
    "run.base_seed": (_parse_int, "1000"),
    "run.num_seeds": (_parse_positive_int, "10"),
    "engine.population_size": (_parse_positive_int, "20"),
    "engine.generations": (_parse_nonneg_int, "1000"),
    "engine.mutation_prob": (_parse_probability, "0.2"),
    "engine.crossover_prob": (_parse_probability, "0.3"),
    "engine.tournament_size": (_parse_positive_int, "2"),
    "engine.immigrants_per_gen": (_parse_nonneg_int, "2"),
    "engine.tau": (_parse_positive_int, "32"),
    "diversity.sample_size": (_parse_positive_int, "5"),
    "lambda.none": (_parse_nonneg_float, "0.0"),
    "lambda.domain": (_parse_nonneg_float, "1.0"),
    "lambda.genealogical_tree": (_parse_nonneg_float, "4.0"),
    "lambda.trash_bits": (_parse_nonneg_float, "2.0"),
    "grid.lambdas": (_parse_lambda_grid, ""),
    "arena.bounds": (_parse_rect, "0.0 0.0 1.0 1.0"),
    "arena.start": (_parse_point, "0.1 0.5"),
    "arena.obstacle": (_parse_rect, "0.4 0.0 0.6 0.8"),
    "arena.goal": (_parse_rect, "0.75 0.3 0.95 0.7"),
    "mutation.sigma": (_parse_positive_float, "0.1"),
    "step_norm": (_parse_step_norm, "l1"),
}

CONFIG_KEYS = tuple(_SCHEMA)


def env_name(key: str) -> str:
    """Environment-variable name overriding a config key."""
    return ENV_PREFIX + key.replace(".", "_").upper()


def read_config_file(path: str | Path) -> dict[str, str]:
    """Parse a ``key = value`` file into raw strings, validating key names."""
    raw: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(str(path), "config file not found") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(
                f"{path}:{lineno}", f"expected 'key = value', got {stripped!r}"
            )
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _SCHEMA:
            raise ConfigError(key, "unknown configuration key")
        raw[key] = value.strip()
    return raw


def load_config(
    path: str | Path | None = None, environ: dict[str, str] | None = None
) -> dict[str, object]:
    """Resolve the full typed configuration: defaults < file < environment."""
    environ = os.environ if environ is None else environ
    raw = {key: default for key, (_, default) in _SCHEMA.items()}
    if path is not None:
        raw.update(read_config_file(path))
    for key in _SCHEMA:
        override = environ.get(env_name(key))
        if override is not None:
            raw[key] = override
    return {key: _SCHEMA[key][0](key, raw[key]) for key in _SCHEMA}


def build_problem(cfg: dict[str, object]) -> RoutingProblem:
    """Construct the routing problem described by the ``arena.*`` keys."""
    try:
        arena = Arena(
            bounds=Rect(*cfg["arena.bounds"]),
            start=tuple(cfg["arena.start"]),
            goal=Rect(*cfg["arena.goal"]),
            obstacle=Rect(*cfg["arena.obstacle"]),
        )
    except ValueError as exc:
        raise ConfigError("arena", str(exc)) from None
    return RoutingProblem(arena=arena, sigma=cfg["mutation.sigma"], step_norm=cfg["step_norm"])


def variant_weight(cfg: dict[str, object], kind: MetricKind) -> float:
    """The configured diversity weight for a metric kind (``lambda.<kind>``)."""
    return cfg[f"lambda.{kind.value}"]


def build_engine_config(
    cfg: dict[str, object], kind: MetricKind = MetricKind.NONE, weight: float | None = None
) -> EngineConfig:
    """Assemble an :class:`EngineConfig` for one variant."""
    if weight is None:
        weight = variant_weight(cfg, kind) if kind is not MetricKind.NONE else 0.0
    engine = EngineConfig(
        population_size=cfg["engine.population_size"],
        generations=cfg["engine.generations"],
        mutation_prob=cfg["engine.mutation_prob"],
        crossover_prob=cfg["engine.crossover_prob"],
        tournament_size=cfg["engine.tournament_size"],
        immigrants_per_gen=cfg["engine.immigrants_per_gen"],
        tau=cfg["engine.tau"],
        diversity=DiversityConfig(
            kind=kind, weight=weight, sample_size=cfg["diversity.sample_size"]
        ),
        rng_seed=cfg["run.base_seed"],
    )
    if engine.population_size <= engine.immigrants_per_gen:
        raise ConfigError(
            "engine.immigrants_per_gen",
            f"must be smaller than engine.population_size "
            f"({engine.immigrants_per_gen} >= {engine.population_size})",
        )
    try:
        engine.validate()
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("engine", str(exc)) from None
    return engine


def seeds_from(cfg: dict[str, object]) -> list[int]:
    """Consecutive run seeds: ``base_seed .. base_seed + num_seeds - 1``."""
    base = cfg["run.base_seed"]
    return [base + i for i in range(cfg["run.num_seeds"])]


def default_lambda_grid(kind: MetricKind) -> tuple[float, ...]:
    """Search grid used when ``grid.lambdas`` is not set: a coarse span for
    metrics normalised to [0, 1], a lower span for the unbounded one."""
    if kind is MetricKind.DOMAIN:
        return DOMAIN_LAMBDA_GRID
    return NORMALIZED_LAMBDA_GRID


def lambda_grid(cfg: dict[str, object], kind: MetricKind) -> tuple[float, ...]:
    values = cfg["grid.lambdas"]
    return values if values else default_lambda_grid(kind)
