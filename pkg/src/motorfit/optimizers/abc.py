"""Artificial bee colony minimiser.

Variant with several scouts per iteration: any food source that fails to
improve ``limit`` times in a row is re-seeded by a neighbour move around the
best source found so far (instead of a uniform random restart).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._common import (
    OptimizationResult,
    RunTrace,
    as_bounds,
    evaluate,
    uniform_positions,
)


@dataclass(frozen=True)
class AbcConfig:
    colony_size: int = 120
    max_iterations: int = 100
    limit: int = 10
    phi_max: float = 0.5
    rng_seed: int = 0

    def __post_init__(self):
        if self.colony_size < 2:
            raise ValueError("colony_size must be >= 2")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.limit < 1:
            raise ValueError("limit must be >= 1")
        if not 0 < self.phi_max <= 1:
            raise ValueError("phi_max must lie in (0, 1]")


@dataclass(frozen=True)
class Candidate:
    position: np.ndarray
    value: float
    fitness: float
    trials: int


@dataclass
class Colony:
    """Food sources stored column-wise; ``colony[n]`` gives one ``Candidate``."""

    positions: np.ndarray
    values: np.ndarray
    fitness: np.ndarray
    trials: np.ndarray

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n) -> Candidate:
        return Candidate(self.positions[n].copy(), float(self.values[n]),
                         float(self.fitness[n]), int(self.trials[n]))


def fitness_of(value):
    """``1/(1+f)`` for ``f >= 0`` and ``1+|f|`` otherwise (works on arrays)."""
    v = np.asarray(value, dtype=float)
    out = np.where(v >= 0, 1.0 / (1.0 + np.abs(v)), 1.0 + np.abs(v))
    return float(out) if out.ndim == 0 else out


def selection_probabilities(colony) -> np.ndarray:
    fit = colony.fitness if isinstance(colony, Colony) else np.asarray(colony, dtype=float)
    if fit.size == 0 or np.any(fit <= 0):
        raise ValueError("selection needs a non-empty colony with positive fitness")
    return fit / fit.sum()


def roulette(rng: np.random.Generator, probabilities: np.ndarray, n: int) -> np.ndarray:
    """``n`` independent spins of a wheel with sectors proportional to ``probabilities``."""
    edges = np.cumsum(probabilities)
    picks = np.searchsorted(edges, rng.random(n) * edges[-1], side="right")
    return np.minimum(picks, len(probabilities) - 1)


def neighbor(x_n, x_k, i: int, phi: float, bounds=None) -> np.ndarray:
    """Copy of ``x_n`` with component ``i`` moved by ``phi * (x_n[i] - x_k[i])``."""
    v = np.array(x_n, dtype=float)
    v[i] = v[i] + phi * (v[i] - x_k[i])
    if bounds is not None:
        lo, hi = as_bounds(bounds)
        v[i] = min(max(v[i], lo[i]), hi[i])
    return v


def init_colony(bounds, config: AbcConfig, objective, rng=None, workers: int = 1) -> Colony:
    lo, hi = as_bounds(bounds)
    if rng is None:
        rng = np.random.default_rng(config.rng_seed)
    positions = uniform_positions(rng, lo, hi, config.colony_size)
    values = evaluate(objective, positions, workers)
    return Colony(positions, values, fitness_of(values), np.zeros(config.colony_size, dtype=int))


def _propose(rng, positions, base, exclude, phi_max, lo, hi):
    """Batched neighbour moves of the rows of ``base``.

    One random component per row is moved against a random colony member;
    the member index ``exclude[t]`` is never used as partner for row ``t``.
    """
    n_src = len(base)
    sn, m = positions.shape
    comp = rng.integers(0, m, n_src)
    partner = rng.integers(0, sn - 1, n_src)
    partner = partner + (partner >= exclude)
    phi = rng.uniform(-phi_max, phi_max, n_src)
    trial = np.array(base, dtype=float)
    rows = np.arange(n_src)
    moved = trial[rows, comp] + phi * (trial[rows, comp] - positions[partner, comp])
    trial[rows, comp] = np.clip(moved, lo[comp], hi[comp])
    return trial


def _greedy(colony: Colony, targets, trial, values):
    # Applied in draw order so repeated onlooker picks see earlier updates.
    for t, n in enumerate(targets):
        if values[t] < colony.values[n]:
            colony.positions[n] = trial[t]
            colony.values[n] = values[t]
            colony.trials[n] = 0
        else:
            colony.trials[n] += 1
    colony.fitness = fitness_of(colony.values)


def abc_minimize(objective, bounds, config: AbcConfig = AbcConfig(), workers: int = 1) -> OptimizationResult:
    """Minimise a batch objective over box ``bounds``.

    ``objective`` maps an ``(N, m)`` array to ``N`` costs.  Random numbers are
    all drawn serially from one generator seeded by ``config.rng_seed``.
    """
    lo, hi = as_bounds(bounds)
    rng = np.random.default_rng(config.rng_seed)
    colony = init_colony((lo, hi), config, objective, rng, workers)
    sn = config.colony_size
    trace = RunTrace(evaluations=sn)

    k = int(np.argmin(colony.values))
    best_pos, best_val = colony.positions[k].copy(), float(colony.values[k])

    def remember():
        nonlocal best_pos, best_val
        k = int(np.argmin(colony.values))
        if colony.values[k] < best_val:
            best_pos, best_val = colony.positions[k].copy(), float(colony.values[k])

    everyone = np.arange(sn)
    for _ in range(config.max_iterations):
        # employed bees
        trial = _propose(rng, colony.positions, colony.positions, everyone, config.phi_max, lo, hi)
        values = evaluate(objective, trial, workers)
        trace.evaluations += sn
        _greedy(colony, everyone, trial, values)
        remember()

        # onlooker bees
        picks = roulette(rng, selection_probabilities(colony), sn)
        trial = _propose(rng, colony.positions, colony.positions[picks], picks, config.phi_max, lo, hi)
        values = evaluate(objective, trial, workers)
        trace.evaluations += sn
        _greedy(colony, picks, trial, values)
        remember()

        # scouts follow the best source
        scouts = np.flatnonzero(colony.trials >= config.limit)
        if scouts.size:
            base = np.repeat(best_pos[None, :], scouts.size, axis=0)
            trial = _propose(rng, colony.positions, base, scouts, config.phi_max, lo, hi)
            values = evaluate(objective, trial, workers)
            trace.evaluations += scouts.size
            colony.positions[scouts] = trial
            colony.values[scouts] = values
            colony.trials[scouts] = 0
            colony.fitness = fitness_of(colony.values)
            remember()

        trace.best_cost_per_iteration.append(best_val)

    trace.best_position = best_pos.copy()
    return OptimizationResult(best_pos, best_val, trace)
