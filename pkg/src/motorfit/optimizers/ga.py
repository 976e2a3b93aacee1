"""Real-coded genetic algorithm baseline.

Binary tournament selection, BLX-alpha blend crossover, per-gene Gaussian
mutation with sigma given as a fraction of each bound span, and elitism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._common import OptimizationResult, RunTrace, as_bounds, evaluate, uniform_positions


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 120
    max_iterations: int = 100
    tournament_size: int = 2
    crossover_rate: float = 0.9
    blend_alpha: float = 0.5
    mutation_rate: float | None = None  # per gene; None means 1/m
    mutation_sigma: float = 0.05
    elitism: int = 1
    rng_seed: int = 0

    def __post_init__(self):
        if self.population_size < 1:
            raise ValueError("population_size must be >= 1")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")
        if not 0 <= self.elitism <= self.population_size:
            raise ValueError("elitism must lie in [0, population_size]")


def _tournament(rng, f, n, size):
    entrants = rng.integers(0, len(f), (n, size))
    return entrants[np.arange(n), np.argmin(f[entrants], axis=1)]


def ga_minimize(objective, bounds, config: GaConfig = GaConfig(), workers: int = 1) -> OptimizationResult:
    lo, hi = as_bounds(bounds)
    rng = np.random.default_rng(config.rng_seed)
    n, m = config.population_size, lo.size
    span = hi - lo
    p_mut = 1.0 / m if config.mutation_rate is None else config.mutation_rate
    a = config.blend_alpha

    pop = uniform_positions(rng, lo, hi, n)
    f = evaluate(objective, pop, workers)
    b = int(np.argmin(f))
    best, best_f = pop[b].copy(), float(f[b])
    trace = RunTrace(evaluations=n)
    n_children = n - config.elitism

    for _ in range(config.max_iterations):
        order = np.argsort(f, kind="stable")
        elite, elite_f = pop[order[:config.elitism]], f[order[:config.elitism]]
        if n_children > 0:
            pa = pop[_tournament(rng, f, n_children, config.tournament_size)]
            pb = pop[_tournament(rng, f, n_children, config.tournament_size)]
            cmin, cmax = np.minimum(pa, pb), np.maximum(pa, pb)
            width = cmax - cmin
            blend = cmin - a * width + rng.random((n_children, m)) * (1.0 + 2.0 * a) * width
            cross = rng.random(n_children) < config.crossover_rate
            children = np.where(cross[:, None], blend, pa)
            mutate = rng.random((n_children, m)) < p_mut
            children = children + mutate * rng.normal(0.0, 1.0, (n_children, m)) * config.mutation_sigma * span
            children = np.clip(children, lo, hi)
            child_f = evaluate(objective, children, workers)
            trace.evaluations += n_children
            pop = np.vstack([elite, children])
            f = np.concatenate([elite_f, child_f])
        else:
            pop, f = elite, elite_f
        b = int(np.argmin(f))
        if f[b] < best_f:
            best, best_f = pop[b].copy(), float(f[b])
        trace.best_cost_per_iteration.append(best_f)

    trace.best_position = best.copy()
    return OptimizationResult(best, best_f, trace)
