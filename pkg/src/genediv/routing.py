"""Robot-routing benchmark: steer a point robot around a wall to a goal.

A candidate solution is a sequence of ten planar displacement actions.  The
robot starts at a fixed point inside a rectangular arena that contains one
axis-aligned rectangular obstacle and one rectangular goal region.  Each
action is clamped to a step-size budget, then applied atomically: if the
resulting straight-line move would leave the arena or cut through the
obstacle's interior, the robot simply stays where it is for that step
(reject-and-stay collision handling).  After every step the robot earns one
fitness point if it currently sits inside the goal region, so fitness ranges
from 0 to 10 and rewards reaching the goal early and staying there.

The module also provides the variation operators used by the evolution
engine (random genomes, single-action Gaussian mutation, uniform crossover)
and a behavioural distance between genomes (summed L1 distance between
corresponding actions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

GENOME_LENGTH = 10
STEP_BUDGET = 0.5
DEFAULT_SIGMA = 0.1

STEP_NORMS = ("l1", "linf")


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle with ``x0 <= x1`` and ``y0 <= y1``."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        for name in ("x0", "y0", "x1", "y1"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"rectangle coordinate {name} must be finite, got {v}")
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise ValueError(f"degenerate rectangle: ({self.x0}, {self.y0})..({self.x1}, {self.y1})")

    def contains(self, x: float, y: float) -> bool:
        """Point-in-rectangle test, boundary included."""
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def contains_rect(self, other: "Rect") -> bool:
        return (
            self.x0 <= other.x0
            and self.y0 <= other.y0
            and other.x1 <= self.x1
            and other.y1 <= self.y1
        )


@dataclass(frozen=True)
class Arena:
    """Playing field: outer bounds, start point, goal region, one obstacle."""

    bounds: Rect
    start: tuple[float, float]
    goal: Rect
    obstacle: Rect

    def __post_init__(self) -> None:
        if not self.bounds.contains(*self.start):
            raise ValueError(f"start {self.start} lies outside the arena bounds")
        if not self.bounds.contains_rect(self.goal):
            raise ValueError("goal region must lie inside the arena bounds")
        if not self.bounds.contains_rect(self.obstacle):
            raise ValueError("obstacle must lie inside the arena bounds")
        if segment_crosses_interior(self.start, self.start, self.obstacle):
            raise ValueError(f"start {self.start} lies inside the obstacle")


def clamp_action(dx: float, dy: float, step_norm: str = "l1") -> tuple[float, float]:
    """Scale a displacement down so its norm does not exceed :data:`STEP_BUDGET`.

    ``step_norm`` selects the norm: ``"l1"`` bounds ``|dx| + |dy|`` and
    ``"linf"`` bounds ``max(|dx|, |dy|)``.  Direction is preserved.
    """
    if not (math.isfinite(dx) and math.isfinite(dy)):
        raise ValueError(f"action components must be finite, got ({dx}, {dy})")
    if step_norm == "l1":
        size = abs(dx) + abs(dy)
    elif step_norm == "linf":
        size = max(abs(dx), abs(dy))
    else:
        raise ValueError(f"unknown step norm {step_norm!r} (expected one of {STEP_NORMS})")
    if size <= STEP_BUDGET:
        return dx, dy
    scale = STEP_BUDGET / size
    return dx * scale, dy * scale


def segment_crosses_interior(
    p: tuple[float, float], q: tuple[float, float], rect: Rect
) -> bool:
    """True when the segment from ``p`` to ``q`` intersects the open interior
    of ``rect``.  Touching the boundary (edges and corners) does not count,
    so paths may graze or slide along a wall.
    """
    px, py = p
    qx, qy = q
    lo, hi = 0.0, 1.0
    for p0, d, a0, a1 in ((px, qx - px, rect.x0, rect.x1), (py, qy - py, rect.y0, rect.y1)):
        if d == 0.0:
            if not a0 < p0 < a1:
                return False
        else:
            ta = (a0 - p0) / d
            tb = (a1 - p0) / d
            if ta > tb:
                ta, tb = tb, ta
            if ta > lo:
                lo = ta
            if tb < hi:
                hi = tb
            if lo >= hi:
                return False
    return True


DEFAULT_ARENA = Arena(
    bounds=Rect(0.0, 0.0, 1.0, 1.0),
    start=(0.1, 0.5),
    goal=Rect(0.75, 0.3, 0.95, 0.7),
    obstacle=Rect(0.4, 0.0, 0.6, 0.8),
)


@dataclass(frozen=True)
class SimulationResult:
    """Trajectory (start plus one position per step) and the fitness earned."""

    trajectory: np.ndarray
    raw_fitness: int


def simulate(genome: np.ndarray, arena: Arena = DEFAULT_ARENA, step_norm: str = "l1") -> SimulationResult:
    """Run a genome through the arena and score it.

    Every action is clamped, then either applied in full or rejected in full:
    the move is rejected when the destination leaves the (closed) arena
    bounds or when the straight line to it passes through the obstacle's
    open interior.  One fitness point accrues per step that ends inside the
    (closed) goal region.
    """
    genome = np.asarray(genome, dtype=float)
    if genome.ndim != 2 or genome.shape[1] != 2:
        raise ValueError(f"genome must have shape (n, 2), got {genome.shape}")
    x, y = arena.start
    bounds, obstacle, goal = arena.bounds, arena.obstacle, arena.goal
    trajectory = [(x, y)]
    fitness = 0
    for dx, dy in genome.tolist():
        dx, dy = clamp_action(dx, dy, step_norm)
        nx, ny = x + dx, y + dy
        if bounds.contains(nx, ny) and not segment_crosses_interior((x, y), (nx, ny), obstacle):
            x, y = nx, ny
        trajectory.append((x, y))
        if goal.contains(x, y):
            fitness += 1
    return SimulationResult(np.array(trajectory, dtype=float), fitness)


def domain_distance(g1: np.ndarray, g2: np.ndarray) -> float:
    """Behavioural distance: sum of L1 distances between matching actions."""
    if g1.shape != g2.shape:
        raise ValueError(f"genome shape mismatch: {g1.shape} != {g2.shape}")
    return float(np.abs(g1 - g2).sum())


def random_genome(rng: np.random.Generator, length: int = GENOME_LENGTH) -> np.ndarray:
    """Fresh genome with every component uniform in [-0.5, 0.5)."""
    return rng.uniform(-STEP_BUDGET, STEP_BUDGET, size=(length, 2))


def mutate_genome(genome: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Copy ``genome`` and add Gaussian noise to one uniformly chosen action."""
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    out = genome.copy()
    idx = int(rng.integers(len(out)))
    out[idx] += rng.normal(0.0, sigma, size=2)
    return out


def crossover_genome(g1: np.ndarray, g2: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Uniform crossover: each action comes from either parent with prob. 1/2."""
    if g1.shape != g2.shape:
        raise ValueError(f"genome shape mismatch: {g1.shape} != {g2.shape}")
    take_first = rng.random(len(g1)) < 0.5
    return np.where(take_first[:, None], g1, g2)


@dataclass
class RoutingProblem:
    """Bundles the arena with operator parameters for the evolution engine."""

    arena: Arena = DEFAULT_ARENA
    sigma: float = DEFAULT_SIGMA
    step_norm: str = "l1"
    genome_length: int = GENOME_LENGTH

    def __post_init__(self) -> None:
        if self.step_norm not in STEP_NORMS:
            raise ValueError(
                f"unknown step norm {self.step_norm!r} (expected one of {STEP_NORMS})"
            )
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.genome_length < 1:
            raise ValueError(f"genome length must be positive, got {self.genome_length}")

    def random_genome(self, rng: np.random.Generator) -> np.ndarray:
        return random_genome(rng, self.genome_length)

    def mutate(self, genome: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        return mutate_genome(genome, self.sigma, rng)

    def crossover(self, g1: np.ndarray, g2: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        return crossover_genome(g1, g2, rng)

    def distance(self, g1: np.ndarray, g2: np.ndarray) -> float:
        return domain_distance(g1, g2)

    def simulate(self, genome: np.ndarray) -> SimulationResult:
        return simulate(genome, self.arena, self.step_norm)

    def evaluate(self, genome: np.ndarray) -> int:
        return self.simulate(genome).raw_fitness
