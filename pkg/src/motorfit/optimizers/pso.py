"""Global-best particle swarm baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._common import OptimizationResult, RunTrace, as_bounds, evaluate, uniform_positions


@dataclass(frozen=True)
class PsoConfig:
    swarm_size: int = 120
    max_iterations: int = 100
    inertia: float = 0.72
    cognitive: float = 1.49
    social: float = 1.49
    velocity_fraction: float = 0.5
    rng_seed: int = 0

    def __post_init__(self):
        if self.swarm_size < 1:
            raise ValueError("swarm_size must be >= 1")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if not self.velocity_fraction > 0:
            raise ValueError("velocity_fraction must be > 0")


def pso_minimize(objective, bounds, config: PsoConfig = PsoConfig(), workers: int = 1) -> OptimizationResult:
    lo, hi = as_bounds(bounds)
    rng = np.random.default_rng(config.rng_seed)
    n, m = config.swarm_size, lo.size
    v_max = config.velocity_fraction * (hi - lo)

    x = uniform_positions(rng, lo, hi, n)
    v = (2.0 * rng.random((n, m)) - 1.0) * v_max * 0.1
    f = evaluate(objective, x, workers)
    pbest, pbest_f = x.copy(), f.copy()
    g = int(np.argmin(f))
    gbest, gbest_f = x[g].copy(), float(f[g])
    trace = RunTrace(evaluations=n)

    for _ in range(config.max_iterations):
        r1 = rng.random((n, m))
        r2 = rng.random((n, m))
        v = (config.inertia * v
             + config.cognitive * r1 * (pbest - x)
             + config.social * r2 * (gbest - x))
        v = np.clip(v, -v_max, v_max)
        x = np.clip(x + v, lo, hi)
        f = evaluate(objective, x, workers)
        trace.evaluations += n
        improved = f < pbest_f
        pbest[improved] = x[improved]
        pbest_f[improved] = f[improved]
        g = int(np.argmin(pbest_f))
        if pbest_f[g] < gbest_f:
            gbest, gbest_f = pbest[g].copy(), float(pbest_f[g])
        trace.best_cost_per_iteration.append(gbest_f)

    trace.best_position = gbest.copy()
    return OptimizationResult(gbest, gbest_f, trace)
