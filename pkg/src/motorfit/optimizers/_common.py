from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

BatchObjective = Callable[[np.ndarray], np.ndarray]


@dataclass
class RunTrace:
    """Best-so-far cost after every iteration."""

    best_cost_per_iteration: list = field(default_factory=list)
    best_position: np.ndarray | None = None
    evaluations: int = 0


class OptimizationResult(NamedTuple):
    position: np.ndarray
    cost: float
    trace: RunTrace


def as_bounds(bounds):
    """``(lo, hi)`` float arrays from a ``SearchBounds`` or a pair of sequences."""
    if hasattr(bounds, "lo") and hasattr(bounds, "hi"):
        lo, hi = bounds.lo, bounds.hi
    else:
        lo, hi = bounds
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.shape != hi.shape or lo.ndim != 1 or np.any(lo > hi):
        raise ValueError("bounds must be two equal-length vectors with lo <= hi")
    return lo, hi


def evaluate(objective: BatchObjective, positions: np.ndarray, workers: int = 1) -> np.ndarray:
    """Evaluate a batch, optionally split across a thread pool.

    Chunks are reassembled in order, so the result does not depend on
    ``workers`` as long as the objective is pure.
    """
    positions = np.atleast_2d(positions)
    if workers <= 1 or len(positions) < 2:
        values = objective(positions)
    else:
        chunks = np.array_split(positions, min(workers, len(positions)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = np.concatenate(list(pool.map(objective, chunks)))
    values = np.asarray(values, dtype=float).reshape(len(positions))
    if np.any(np.isnan(values)):
        raise FloatingPointError("objective returned NaN")
    return values


def uniform_positions(rng: np.random.Generator, lo, hi, n: int) -> np.ndarray:
    return lo + rng.random((n, lo.size)) * (hi - lo)
