"""Generational evolutionary loop with diversity-shaped truncation selection.

One generation, applied to a population of fixed size N:

1. *Mutation sweep* -- every current member spawns a mutated child with
   probability ``mutation_prob`` (one genome action perturbed, one trash
   bit flipped; recorded as a mutation node).
2. *Recombination sweep* -- every current member, with probability
   ``crossover_prob``, picks a partner from the rest of the population by
   a ``tournament_size``-player tournament on shaped fitness and spawns a
   crossover child (uniform crossover of genome and trash; recorded with
   both parents).
3. *Immigrants* -- ``immigrants_per_gen`` brand-new random individuals
   (genesis nodes) join the offspring.
4. The pool (parents + offspring + immigrants) is scored with shaped
   fitness ``raw + weight * mean distance to sampled peers``.
5. Truncation keeps the N best by shaped fitness (ties go to the smaller,
   i.e. older, node id).

Raw fitness is evaluated once at birth and cached; shaped fitness is
recomputed on every use because the peer sample changes.  All statistics
reported in the trace are computed on raw fitness only.

Reproducibility: a run consumes a single random stream in a fixed order --
per generation: mutation gates (one uniform per member), per-mutant draws,
crossover gates, then per-recombination draws (tournament candidates, any
peer samples for shaped fitness, genome mask, trash mask), immigrant draws,
peer samples for the pooled shaped evaluation in pool order, and finally
the probe-sample indices for the trace row.  The probe indices are drawn
for every metric kind -- including ``none`` -- so runs that differ only in
an inert diversity setting (zero weight) replay the exact same evolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .diversity import (
    DiversityConfig,
    MetricKind,
    augmented_fitness,
    draw_distinct_indices,
    make_distance_fn,
)
from .genealogy import AncestryIndex, GenealogyGraph, OpKind
from .routing import RoutingProblem
from .trash_genes import flip_one_bit, random_trash, uniform_cross

PROBE_SIZE = 5


@dataclass(eq=False)
class Individual:
    """A living solution: genome, neutral markers, and its genealogy node."""

    node: int
    genome: np.ndarray
    trash: np.ndarray
    raw_fitness: float


@dataclass
class EngineConfig:
    """Knobs of the generational loop (defaults match the benchmark setup)."""

    population_size: int = 20
    generations: int = 1000
    mutation_prob: float = 0.2
    crossover_prob: float = 0.3
    tournament_size: int = 2
    immigrants_per_gen: int = 2
    tau: int = 32
    diversity: DiversityConfig = field(default_factory=DiversityConfig)
    rng_seed: int = 0

    def validate(self) -> None:
        if self.population_size < 1:
            raise ValueError(f"population_size must be >= 1, got {self.population_size}")
        if self.generations < 0:
            raise ValueError(f"generations must be >= 0, got {self.generations}")
        for name in ("mutation_prob", "crossover_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")
        if self.tournament_size < 1:
            raise ValueError(f"tournament_size must be >= 1, got {self.tournament_size}")
        if self.immigrants_per_gen < 0:
            raise ValueError(f"immigrants_per_gen must be >= 0, got {self.immigrants_per_gen}")
        if self.population_size <= self.immigrants_per_gen:
            raise ValueError(
                "population_size must exceed immigrants_per_gen "
                f"({self.population_size} <= {self.immigrants_per_gen})"
            )
        if self.tau < 1:
            raise ValueError(f"tau must be >= 1, got {self.tau}")
        self.diversity.validate()

    def max_nodes(self) -> int:
        """Upper bound on genealogy size: initial pop + per-generation births."""
        per_gen = 2 * self.population_size + self.immigrants_per_gen
        return self.population_size + self.generations * per_gen


@dataclass(frozen=True, eq=False)
class TraceRow:
    """Per-generation statistics, all computed on raw fitness.

    Holds an ndarray, so rows compare by identity; compare fields directly
    when checking traces for equality.
    """

    generation: int
    mean_raw_fitness: float
    best_raw_fitness: float
    mean_probe_diversity: float
    best_genome: np.ndarray


@dataclass
class RunResult:
    """Everything a finished run leaves behind."""

    trace: list[TraceRow]
    graph: GenealogyGraph
    population: list[Individual]
    individuals: dict[int, Individual] | None = None


def initialize(
    config: EngineConfig,
    rng: np.random.Generator,
    problem: RoutingProblem | None = None,
) -> tuple[list[Individual], GenealogyGraph]:
    """Create the starting population (all genesis nodes) and a fresh graph."""
    config.validate()
    if problem is None:
        problem = RoutingProblem()
    graph = GenealogyGraph()
    population = []
    for _ in range(config.population_size):
        genome = problem.random_genome(rng)
        trash = random_trash(config.tau, rng)
        node = graph.record_birth((), OpKind.GENESIS, 0)
        population.append(Individual(node, genome, trash, float(problem.evaluate(genome))))
    return population, graph


def tournament_select(
    pool: list[Individual],
    k: int,
    fitness_fn,
    rng: np.random.Generator,
) -> Individual:
    """Draw ``min(k, len(pool))`` distinct candidates; return the fittest.

    Ties go to the smaller node id.  ``fitness_fn`` is called once per
    candidate, in draw order.
    """
    if not pool:
        raise ValueError("tournament pool must not be empty")
    k = min(k, len(pool))
    best: Individual | None = None
    best_score = 0.0
    for j in draw_distinct_indices(rng, len(pool), k):
        candidate = pool[j]
        score = fitness_fn(candidate)
        if (
            best is None
            or score > best_score
            or (score == best_score and candidate.node < best.node)
        ):
            best = candidate
            best_score = score
    return best


def step_generation(
    population: list[Individual],
    graph: GenealogyGraph,
    config: EngineConfig,
    problem: RoutingProblem,
    rng: np.random.Generator,
    *,
    generation: int = 0,
    ancestry_index: AncestryIndex | None = None,
    registry: dict[int, Individual] | None = None,
) -> list[Individual]:
    """Advance one generation and return the new population.

    ``generation`` stamps the birth generation of every child created here.
    ``ancestry_index``, when given, is kept in sync with new births (callers
    should ``retain`` the survivors afterwards).  ``registry`` collects every
    individual ever created, for offline analysis.
    """
    n = len(population)
    if n != config.population_size:
        raise ValueError(f"expected population of {config.population_size}, got {n}")
    div = config.diversity
    distance_fn = make_distance_fn(div.kind, graph, ancestry_index)

    def shaped(x: Individual, peers: list[Individual]) -> float:
        return augmented_fitness(x, peers, x.raw_fitness, div, rng, distance_fn=distance_fn)

    def spawn(parents: tuple[int, ...], kind: OpKind, genome, trash) -> Individual:
        node = graph.record_birth(parents, kind, generation)
        if ancestry_index is not None:
            ancestry_index.add(node, parents)
        child = Individual(node, genome, trash, float(problem.evaluate(genome)))
        if registry is not None:
            registry[node] = child
        return child

    offspring: list[Individual] = []

    gates = rng.random(n) < config.mutation_prob
    for i in range(n):
        if gates[i]:
            parent = population[i]
            offspring.append(
                spawn(
                    (parent.node,),
                    OpKind.MUTATION,
                    problem.mutate(parent.genome, rng),
                    flip_one_bit(parent.trash, rng),
                )
            )

    gates = rng.random(n) < config.crossover_prob
    for i in range(n):
        if gates[i]:
            first = population[i]
            others = population[:i] + population[i + 1 :]
            if not others:
                continue
            partner = tournament_select(
                others, config.tournament_size, lambda c: shaped(c, population), rng
            )
            offspring.append(
                spawn(
                    (first.node, partner.node),
                    OpKind.RECOMBINATION,
                    problem.crossover(first.genome, partner.genome, rng),
                    uniform_cross(first.trash, partner.trash, rng),
                )
            )

    for _ in range(config.immigrants_per_gen):
        offspring.append(
            spawn((), OpKind.GENESIS, problem.random_genome(rng), random_trash(config.tau, rng))
        )

    pool = population + offspring
    scores = [shaped(x, pool) for x in pool]
    order = sorted(range(len(pool)), key=lambda j: (-scores[j], pool[j].node))
    return [pool[j] for j in order[: config.population_size]]


def _probe_diversity(
    population: list[Individual], distance_fn, rng: np.random.Generator
) -> float:
    """Mean pairwise distance over a small random probe of the population.

    The probe indices are drawn unconditionally so that random-stream
    consumption never depends on the metric kind.
    """
    k = min(PROBE_SIZE, len(population))
    indices = draw_distinct_indices(rng, len(population), k)
    if distance_fn is None or k < 2:
        return 0.0
    members = [population[j] for j in indices]
    total = 0.0
    pairs = 0
    for i in range(k):
        for j in range(i + 1, k):
            total += distance_fn(members[i], members[j])
            pairs += 1
    return total / pairs


def _trace_row(
    generation: int,
    population: list[Individual],
    distance_fn,
    rng: np.random.Generator,
) -> TraceRow:
    best = population[0]
    total = 0.0
    for ind in population:
        total += ind.raw_fitness
        if ind.raw_fitness > best.raw_fitness or (
            ind.raw_fitness == best.raw_fitness and ind.node < best.node
        ):
            best = ind
    probe = _probe_diversity(population, distance_fn, rng)
    return TraceRow(
        generation=generation,
        mean_raw_fitness=total / len(population),
        best_raw_fitness=float(best.raw_fitness),
        mean_probe_diversity=probe,
        best_genome=best.genome.copy(),
    )


def run_evolution(
    config: EngineConfig,
    problem: RoutingProblem | None = None,
    seed: int | None = None,
    keep_all: bool = False,
) -> RunResult:
    """Run a full evolution and return trace, genealogy, and final population.

    ``seed`` overrides ``config.rng_seed``.  With ``keep_all`` every
    individual ever created is retained in ``RunResult.individuals``.
    """
    config.validate()
    if problem is None:
        problem = RoutingProblem()
    rng = np.random.default_rng(config.rng_seed if seed is None else seed)
    population, graph = initialize(config, rng, problem)
    index = None
    if config.diversity.kind is MetricKind.GENEALOGICAL_TREE:
        index = AncestryIndex.from_graph(graph, capacity=max(config.max_nodes(), 1))
    registry = {ind.node: ind for ind in population} if keep_all else None
    distance_fn = make_distance_fn(config.diversity.kind, graph, index)
    trace: list[TraceRow] = []
    for gen in range(1, config.generations + 1):
        population = step_generation(
            population,
            graph,
            config,
            problem,
            rng,
            generation=gen,
            ancestry_index=index,
            registry=registry,
        )
        if index is not None:
            index.retain(ind.node for ind in population)
        trace.append(_trace_row(gen, population, distance_fn, rng))
    return RunResult(trace=trace, graph=graph, population=population, individuals=registry)


def evolve(
    config: EngineConfig,
    problem: RoutingProblem | None = None,
    rng_seed: int | None = None,
) -> list[TraceRow]:
    """Run a full evolution and return just the per-generation trace."""
    return run_evolution(config, problem, seed=rng_seed).trace
