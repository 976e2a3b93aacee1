"""Constrained nameplate-fitting cost.

The cost is the sum of squared relative errors of six model outputs against
the manufacturer values.  Constraints ``r_2 > r_1``, ``x_1d > x_2d`` and
``|f3| <= 0.2`` enter additively through a weighted penalty; positivity is
guaranteed by the search bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .motor_model import (
    PARAM_NAMES,
    CircuitParams,
    Nameplate,
    derived_quantities,
    manufacturer_quantities,
)

DEFAULT_PENALTY_WEIGHT = 1e3
MAX_TORQUE_TOLERANCE = 0.2
# Smallest violation magnitude of a violated strict inequality.  Candidates
# with both cages clamped to the same bound meet r_1 = r_2 or x_1d = x_2d
# exactly; the floor keeps their penalty (>= weight * floor) from vanishing.
STRICT_FLOOR = 1e-3


@dataclass(frozen=True)
class CostBreakdown:
    f1: float
    f2: float
    f3: float
    f4: float
    f5: float
    f6: float
    total: float = 0.0
    penalty: float = 0.0
    feasible: bool = True

    @property
    def residuals(self) -> tuple:
        return (self.f1, self.f2, self.f3, self.f4, self.f5, self.f6)


@dataclass(frozen=True)
class ConstraintReport:
    positive: bool
    r2_gt_r1: bool
    x1d_gt_x2d: bool
    max_torque_within: bool
    positive_violation: float
    r2_gt_r1_violation: float
    x1d_gt_x2d_violation: float
    max_torque_violation: float

    @property
    def feasible(self) -> bool:
        return self.positive and self.r2_gt_r1 and self.x1d_gt_x2d and self.max_torque_within

    @property
    def penalized_violation(self) -> float:
        """Sum of the violations that the penalty acts on (positivity excluded)."""
        return self.r2_gt_r1_violation + self.x1d_gt_x2d_violation + self.max_torque_violation


@dataclass(frozen=True)
class SearchBounds:
    """Closed per-parameter intervals, ordered as ``PARAM_NAMES``."""

    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lower)
        hi = tuple(float(v) for v in self.upper)
        if len(lo) != 7 or len(hi) != 7:
            raise ValueError("bounds need exactly 7 lower and 7 upper values")
        for name, a, b in zip(PARAM_NAMES, lo, hi):
            if not 0 < a <= b:
                raise ValueError(f"invalid bounds for {name}: [{a}, {b}]")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def default(cls) -> "SearchBounds":
        res, leak, mag = (0.01, 10.0), (0.01, 5.0), (5.0, 100.0)
        spans = [res, leak, mag, res, leak, res, leak]
        return cls(tuple(s[0] for s in spans), tuple(s[1] for s in spans))

    @property
    def lo(self) -> np.ndarray:
        return np.array(self.lower)

    @property
    def hi(self) -> np.ndarray:
        return np.array(self.upper)

    def contains(self, position) -> bool:
        x = np.asarray(position, dtype=float)
        return bool(np.all(x >= self.lo) and np.all(x <= self.hi))


def _violations(r_1, r_2, x_1d, x_2d, f3):
    """Violation magnitudes of the three penalized constraints (broadcasts)."""
    v9 = np.where(r_2 > r_1, 0.0, np.maximum(r_1 - r_2, STRICT_FLOOR))
    v10 = np.where(x_1d > x_2d, 0.0, np.maximum(x_2d - x_1d, STRICT_FLOOR))
    v11 = np.maximum(np.abs(f3) - MAX_TORQUE_TOLERANCE, 0.0)
    return v9, v10, v11


def residuals(params: CircuitParams, nameplate: Nameplate) -> CostBreakdown:
    """Signed relative errors ``(cal - mf)/mf`` of the six nameplate quantities."""
    cal = derived_quantities(params, nameplate)
    mf = manufacturer_quantities(nameplate)
    # f1..f6 order: T_fl, T_st, T_Max, PF_fl, I_st, I_fl
    order = ("T_fl", "T_st", "T_Max", "PF_fl", "I_st", "I_fl")
    f = tuple((cal[q] - mf[q]) / mf[q] for q in order)
    return CostBreakdown(*f)


def check_constraints(params, nameplate: Nameplate, f3: float | None = None) -> ConstraintReport:
    """Feasibility of positivity, cage ordering and the max-torque band.

    ``params`` may be a ``CircuitParams`` or any 7-sequence (so that
    non-positive candidates can be reported rather than rejected).
    """
    x = params.as_array() if isinstance(params, CircuitParams) else np.asarray(params, dtype=float)
    r_s, x_sd, x_m, r_1, x_1d, r_2, x_2d = (float(v) for v in x)
    positive = bool(np.all(x > 0))
    v8 = float(np.sum(np.where(x > 0, 0.0, np.maximum(-x, STRICT_FLOOR))))
    if f3 is None:
        f3 = residuals(CircuitParams.from_array(x), nameplate).f3 if positive else np.inf
    v9, v10, v11 = (float(v) for v in _violations(r_1, r_2, x_1d, x_2d, f3))
    return ConstraintReport(
        positive=positive,
        r2_gt_r1=v9 == 0.0,
        x1d_gt_x2d=v10 == 0.0,
        max_torque_within=v11 == 0.0,
        positive_violation=v8,
        r2_gt_r1_violation=v9,
        x1d_gt_x2d_violation=v10,
        max_torque_violation=v11,
    )


def cost(params: CircuitParams, nameplate: Nameplate,
         penalty_weight: float = DEFAULT_PENALTY_WEIGHT) -> CostBreakdown:
    r = residuals(params, nameplate)
    total = float(sum(v * v for v in r.residuals))
    report = check_constraints(params, nameplate, f3=r.f3)
    penalty = penalty_weight * report.penalized_violation
    return CostBreakdown(*r.residuals, total=total, penalty=penalty, feasible=report.feasible)


def penalized_cost(params: CircuitParams, nameplate: Nameplate,
                   penalty_weight: float = DEFAULT_PENALTY_WEIGHT) -> float:
    if not penalty_weight > 0:
        raise ValueError("penalty_weight must be > 0")
    c = cost(params, nameplate, penalty_weight)
    return c.total + c.penalty


class NameplateObjective:
    """Vectorised penalized cost over ``(N, 7)`` arrays of parameter vectors.

    This is the callable handed to the optimizers; it evaluates a batch with
    the compiled kernel and applies the same penalty as ``penalized_cost``.
    """

    def __init__(self, nameplate: Nameplate, penalty_weight: float = DEFAULT_PENALTY_WEIGHT,
                 backend: str | None = None):
        if not penalty_weight > 0:
            raise ValueError("penalty_weight must be > 0")
        self.nameplate = nameplate
        self.penalty_weight = float(penalty_weight)
        self.backend = backend
        self._plate = nameplate.as_array()

    def residual_matrix(self, positions) -> np.ndarray:
        return kernels.batch_residuals(positions, self._plate, self.backend)

    def __call__(self, positions) -> np.ndarray:
        x = np.atleast_2d(np.asarray(positions, dtype=float))
        f = self.residual_matrix(x)
        total = np.sum(f * f, axis=1)
        v9, v10, v11 = _violations(x[:, 3], x[:, 5], x[:, 4], x[:, 6], f[:, 2])
        return total + self.penalty_weight * (v9 + v10 + v11)
