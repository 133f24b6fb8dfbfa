"""Constraint-preservation fitness and the grammar-evolution loop.

A candidate is scored by running its neighborhoods on a handful of
feasible sample assignments and checking which constraint kinds stay
satisfied across every inspected neighbor, not only the feasible ones:
an operator preserves a kind only if no generated neighbor violates it.
Fitness comparison is lexicographic: tier (VALID > BARREN >
STATIC_REJECT), then kinds preserved, then productivity (the smallest
per-sample count of feasible neighbors), then fewer atoms.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from noodle.grammar import (
    DEFAULT_GENOME_LENGTH,
    DEFAULT_MAX_DEPTH,
    DEFAULT_WRAP_LIMIT,
    MappingOutcome,
    derive_grammar,
    map_genome,
)
from noodle.lang.analyzer import DEFAULT_VAR_BUDGET, analyze, optimize
from noodle.lang.ast import Program, atom_count, render
from noodle.lang.interp import neighbors
from noodle.model import Assignment, Model, seed_assignment, violations
from noodle.util import split_seed

TIERS = ("STATIC_REJECT", "BARREN", "VALID")
DEFAULT_EVAL_FUEL = 20_000


@dataclass(frozen=True)
class Fitness:
    tier: str
    preserved: int = 0
    productivity: int = 0
    size_penalty: int = 0
    fuel_used: int = field(default=0, compare=False)
    notes: tuple[str, ...] = field(default=(), compare=False)

    def key(self) -> tuple:
        return (TIERS.index(self.tier), self.preserved, self.productivity, -self.size_penalty)

    def __lt__(self, other: "Fitness") -> bool:
        return self.key() < other.key()

    def __le__(self, other: "Fitness") -> bool:
        return self.key() <= other.key()

    def to_json(self) -> dict:
        return {
            "tier": self.tier,
            "preserved": self.preserved,
            "productivity": self.productivity,
            "size_penalty": self.size_penalty,
        }


@dataclass(frozen=True)
class EvolutionConfig:
    population_size: int = 200
    generations: int = 100
    tournament_size: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float = 0.05
    elitism: int = 1
    sample_count: int = 5
    inspection_cap: int = 500
    seed: int = 0
    genome_length: int = DEFAULT_GENOME_LENGTH
    wrap_limit: int = DEFAULT_WRAP_LIMIT
    max_depth: int = DEFAULT_MAX_DEPTH
    var_budget: int = DEFAULT_VAR_BUDGET
    fuel: int = DEFAULT_EVAL_FUEL

    def __post_init__(self):
        if not 0.0 <= self.crossover_rate <= 1.0 or not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("rates must lie in [0, 1]")
        for name in ("population_size", "tournament_size", "sample_count", "genome_length"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        for name in ("generations", "elitism", "inspection_cap", "wrap_limit", "max_depth", "fuel"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def to_json(self) -> dict:
        return {
            "population_size": self.population_size,
            "generations": self.generations,
            "tournament_size": self.tournament_size,
            "crossover_rate": self.crossover_rate,
            "mutation_rate": self.mutation_rate,
            "elitism": self.elitism,
            "sample_count": self.sample_count,
            "inspection_cap": self.inspection_cap,
            "seed": self.seed,
            "genome_length": self.genome_length,
            "wrap_limit": self.wrap_limit,
            "max_depth": self.max_depth,
            "var_budget": self.var_budget,
            "fuel": self.fuel,
        }


@dataclass(frozen=True)
class GenerationStat:
    best_fitness: Fitness
    best_program: str
    mean_preserved: float


@dataclass(frozen=True)
class EvolutionReport:
    config: EvolutionConfig
    generations: tuple[GenerationStat, ...]
    best_program: str
    best_genome: tuple[int, ...]
    best_fitness: Fitness
    sample_seeds: tuple[int, ...]
    wall_clock: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        # wall clock stays out of the serialized report so that reruns
        # with the same seed are byte-identical
        return {
            "config": self.config.to_json(),
            "generations": [
                {
                    "best": {"fitness": g.best_fitness.to_json(), "program": g.best_program},
                    "mean_preserved": g.mean_preserved,
                }
                for g in self.generations
            ],
            "best": {
                "program": self.best_program,
                "genome": list(self.best_genome),
                "fitness": self.best_fitness.to_json(),
            },
            "sample_seeds": list(self.sample_seeds),
        }


def evaluate_fitness(
    candidate: MappingOutcome | Program,
    model: Model,
    samples: list[Assignment],
    *,
    fuel: int = DEFAULT_EVAL_FUEL,
    cap: int = 500,
    budget: int = DEFAULT_VAR_BUDGET,
) -> Fitness:
    """Score one candidate program against feasible sample assignments.

    Invalid mappings and analyzer errors are rejected without running the
    interpreter (tier STATIC_REJECT, zero fuel).  Producing no neighbor at
    all on some sample is tier BARREN.  Otherwise the candidate is VALID:
    ``preserved`` counts the constraint kinds no inspected neighbor
    violates, ``productivity`` the smallest per-sample feasible-neighbor
    count, and ``size_penalty`` the optimized program's atom count.
    """
    if isinstance(candidate, MappingOutcome):
        if not candidate.ok:
            return Fitness(tier="STATIC_REJECT", notes=(candidate.invalid,))
        program = candidate.program
    else:
        program = candidate

    diagnostics = analyze(program, model, budget=budget)
    if not diagnostics.ok:
        codes = tuple(sorted({d.code for d in diagnostics.errors}))
        return Fitness(tier="STATIC_REJECT", size_penalty=atom_count(program), notes=codes)

    optimized = optimize(program)
    size = atom_count(optimized)
    kinds = model.kinds()
    broken: set[str] = set()
    productivity = None
    fuel_used = 0
    notes: list[str] = []
    for sample in samples:
        result = neighbors(optimized, model, sample, fuel=fuel, cap=cap)
        fuel_used += result.steps_used
        if result.truncated and "TRUNCATED" not in notes:
            notes.append("TRUNCATED")
        if len(result) == 0:
            return Fitness(tier="BARREN", size_penalty=size, fuel_used=fuel_used, notes=tuple(notes))
        feasible = 0
        for nb in result.assignments:
            counts = violations(model, nb)
            if all(c == 0 for c in counts.values()):
                feasible += 1
            for kind, count in counts.items():
                if count > 0:
                    broken.add(kind)
        productivity = feasible if productivity is None else min(productivity, feasible)
    return Fitness(
        tier="VALID",
        preserved=len([k for k in kinds if k not in broken]),
        productivity=min(productivity, cap),
        size_penalty=size,
        fuel_used=fuel_used,
        notes=tuple(notes),
    )


def vary(
    parent_a: tuple[int, ...],
    parent_b: tuple[int, ...],
    rng: random.Random,
    *,
    crossover_rate: float = 0.9,
    mutation_rate: float = 0.05,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Single-point crossover followed by per-codon uniform mutation."""
    if len(parent_a) != len(parent_b):
        raise ValueError("parents must have equal genome lengths")
    length = len(parent_a)
    if length > 1 and rng.random() < crossover_rate:
        point = rng.randrange(1, length)
        child_a = list(parent_a[:point] + parent_b[point:])
        child_b = list(parent_b[:point] + parent_a[point:])
    else:
        child_a, child_b = list(parent_a), list(parent_b)
    for child in (child_a, child_b):
        for i in range(length):
            if rng.random() < mutation_rate:
                child[i] = rng.randrange(256)
    return tuple(child_a), tuple(child_b)


def sample_seeds_for(config: EvolutionConfig) -> tuple[int, ...]:
    return tuple(split_seed(config.seed, "sample", i) for i in range(config.sample_count))


def evolve(model: Model, config: EvolutionConfig) -> EvolutionReport:
    """Run the full synthesis loop; bit-reproducible per (model, config)."""
    started = time.perf_counter()
    grammar = derive_grammar(model, budget=config.var_budget, max_depth=config.max_depth)
    seeds = sample_seeds_for(config)
    samples = [seed_assignment(model, s) for s in seeds]

    init_rng = random.Random(split_seed(config.seed, "init"))
    population = [
        tuple(init_rng.randrange(256) for _ in range(config.genome_length))
        for _ in range(config.population_size)
    ]

    program_memo: dict[str, Fitness] = {}

    def evaluate(genome: tuple[int, ...]) -> Fitness:
        outcome = map_genome(grammar, genome, wrap_limit=config.wrap_limit, max_depth=config.max_depth)
        if not outcome.ok:
            return Fitness(tier="STATIC_REJECT", notes=(outcome.invalid,))
        text = render(outcome.program)
        cached = program_memo.get(text)
        if cached is None:
            cached = evaluate_fitness(
                outcome,
                model,
                samples,
                fuel=config.fuel,
                cap=config.inspection_cap,
                budget=config.var_budget,
            )
            program_memo[text] = cached
        return cached

    def best_text(genome: tuple[int, ...]) -> str:
        outcome = map_genome(grammar, genome, wrap_limit=config.wrap_limit, max_depth=config.max_depth)
        return render(optimize(outcome.program)) if outcome.ok else ""

    best_genome = population[0]
    best_fitness = None
    stats: list[GenerationStat] = []

    generation_count = max(config.generations, 1)
    for gen in range(generation_count):
        genome_memo: dict[tuple[int, ...], Fitness] = {}
        fitnesses = []
        for genome in population:
            cached = genome_memo.get(genome)
            if cached is None:
                cached = evaluate(genome)
                genome_memo[genome] = cached
            fitnesses.append(cached)

        order = sorted(range(len(population)), key=lambda i: fitnesses[i].key(), reverse=True)
        gen_best = order[0]
        if best_fitness is None or fitnesses[gen_best] > best_fitness:
            best_fitness = fitnesses[gen_best]
            best_genome = population[gen_best]
        stats.append(
            GenerationStat(
                best_fitness=fitnesses[gen_best],
                best_program=best_text(population[gen_best]),
                mean_preserved=sum(f.preserved for f in fitnesses) / len(fitnesses),
            )
        )

        if gen == generation_count - 1:
            break

        rng = random.Random(split_seed(config.seed, "gen", gen))
        next_population = [population[i] for i in order[: config.elitism]]

        def tournament() -> tuple[int, ...]:
            picks = [rng.randrange(len(population)) for _ in range(config.tournament_size)]
            winner = max(picks, key=lambda i: (fitnesses[i].key(), -i))
            return population[winner]

        while len(next_population) < config.population_size:
            child_a, child_b = vary(
                tournament(),
                tournament(),
                rng,
                crossover_rate=config.crossover_rate,
                mutation_rate=config.mutation_rate,
            )
            next_population.append(child_a)
            if len(next_population) < config.population_size:
                next_population.append(child_b)
        population = next_population

    return EvolutionReport(
        config=config,
        generations=tuple(stats),
        best_program=best_text(best_genome),
        best_genome=best_genome,
        best_fitness=best_fitness,
        sample_seeds=seeds,
        wall_clock=time.perf_counter() - started,
    )
