"""Best-of-restarts estimation, method comparison and curve datasets."""

from __future__ import annotations

import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .motor_model import (
    PARAM_NAMES,
    QUANTITY_NAMES,
    CircuitParams,
    Nameplate,
    current_curve,
    derived_quantities,
    find_max_torque,
    manufacturer_quantities,
    torque_curve,
)
from .objective import (
    DEFAULT_PENALTY_WEIGHT,
    NameplateObjective,
    SearchBounds,
    check_constraints,
    cost,
)
from .optimizers import (
    AbcConfig,
    GaConfig,
    PsoConfig,
    RunTrace,
    abc_minimize,
    ga_minimize,
    pso_minimize,
)

log = logging.getLogger(__name__)

METHODS = {
    "abc": (abc_minimize, AbcConfig),
    "pso": (pso_minimize, PsoConfig),
    "ga": (ga_minimize, GaConfig),
}


class EstimationError(RuntimeError):
    """No restart produced a parameter set satisfying every constraint."""


@dataclass(frozen=True)
class QuantityRow:
    quantity: str
    manufacturer: float
    calculated: float

    @property
    def error_pct(self) -> float:
        return 100.0 * abs(self.calculated - self.manufacturer) / self.manufacturer


@dataclass
class EstimationReport:
    method: str
    params: CircuitParams
    quantities: list
    final_cost: float
    seeds: list
    per_seed_costs: list
    trace: RunTrace
    winning_seed: int

    @property
    def max_error_pct(self) -> float:
        return max(row.error_pct for row in self.quantities)

    def row(self, quantity: str) -> QuantityRow:
        for r in self.quantities:
            if r.quantity == quantity:
                return r
        raise KeyError(quantity)


def quantity_table(params: CircuitParams, nameplate: Nameplate) -> list:
    cal = derived_quantities(params, nameplate)
    mf = manufacturer_quantities(nameplate)
    return [QuantityRow(q, mf[q], cal[q]) for q in QUANTITY_NAMES]


def default_config(method: str, **overrides):
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {sorted(METHODS)}")
    cls = METHODS[method][1]
    names = {f.name for f in dataclasses.fields(cls)}
    return cls(**{k: v for k, v in overrides.items() if k in names})


def estimate(nameplate: Nameplate, method: str = "abc", bounds: SearchBounds | None = None,
             config=None, n_restarts: int = 10, penalty_weight: float = DEFAULT_PENALTY_WEIGHT,
             workers: int = 1) -> EstimationReport:
    """Run ``n_restarts`` seeded optimisations and keep the best feasible one.

    Restart ``r`` uses seed ``config.rng_seed + r``.  With ``workers > 1``
    restarts run in a thread pool; results do not depend on the worker count.
    """
    if n_restarts < 1:
        raise ValueError("n_restarts must be >= 1")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {sorted(METHODS)}")
    minimize = METHODS[method][0]
    if config is None:
        config = default_config(method)
    bounds = bounds or SearchBounds.default()
    objective = NameplateObjective(nameplate, penalty_weight)
    seeds = [config.rng_seed + r for r in range(n_restarts)]

    def run(seed):
        return minimize(objective, bounds, dataclasses.replace(config, rng_seed=seed))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, seeds))
    else:
        results = [run(s) for s in seeds]

    best = None
    for seed, result in zip(seeds, results):
        report = check_constraints(result.position, nameplate)
        log.debug("%s seed %d: cost %.6g feasible %s", method, seed, result.cost, report.feasible)
        if report.feasible and (best is None or result.cost < best[1].cost):
            best = (seed, result)
    if best is None:
        raise EstimationError(f"{method}: no feasible solution in {n_restarts} restart(s)")

    seed, result = best
    params = CircuitParams.from_array(result.position)
    breakdown = cost(params, nameplate, penalty_weight)
    return EstimationReport(
        method=method,
        params=params,
        quantities=quantity_table(params, nameplate),
        final_cost=breakdown.total + breakdown.penalty,
        seeds=seeds,
        per_seed_costs=[float(r.cost) for r in results],
        trace=result.trace,
        winning_seed=seed,
    )


@dataclass
class Comparison:
    nameplate: Nameplate
    reports: dict
    failures: dict = field(default_factory=dict)
    reference: CircuitParams | None = None
    reference_name: str = "reference"

    @property
    def models(self) -> dict:
        """Name to parameters for every successful method plus the reference."""
        out = {name: rep.params for name, rep in self.reports.items()}
        if self.reference is not None:
            out[self.reference_name] = self.reference
        return out

    def params_table(self) -> list:
        """Rows ``(parameter, value per model)``; ``None`` marks a failed method."""
        columns = self.columns()
        models = self.models
        rows = []
        for name in PARAM_NAMES:
            rows.append((name, [getattr(models[c], name) if c in models else None for c in columns]))
        return rows

    def columns(self) -> list:
        cols = list(self.reports) + list(self.failures)
        if self.reference is not None:
            cols.append(self.reference_name)
        return cols

    def quantities_table(self) -> list:
        """Rows ``(quantity, manufacturer, [(calculated, error_pct) or None per column])``."""
        mf = manufacturer_quantities(self.nameplate)
        tables = {c: {r.quantity: r for r in quantity_table(p, self.nameplate)}
                  for c, p in self.models.items()}
        rows = []
        for q in QUANTITY_NAMES:
            cells = []
            for c in self.columns():
                r = tables.get(c, {}).get(q)
                cells.append(None if r is None else (r.calculated, r.error_pct))
            rows.append((q, mf[q], cells))
        return rows

    def traces(self) -> dict:
        return {name: list(rep.trace.best_cost_per_iteration) for name, rep in self.reports.items()}

    def ordering_notes(self) -> list:
        notes = []
        if "abc" in self.reports:
            abc = self.reports["abc"].final_cost
            for other in ("pso", "ga"):
                if other in self.reports:
                    ok = abc <= self.reports[other].final_cost
                    notes.append(f"abc <= {other}: {'yes' if ok else 'no'}")
        return notes


def compare_methods(nameplate: Nameplate, methods, reference_params: CircuitParams | None = None,
                    bounds: SearchBounds | None = None, configs: dict | None = None,
                    n_restarts: int = 10, penalty_weight: float = DEFAULT_PENALTY_WEIGHT,
                    workers: int = 1, reference_name: str = "reference") -> Comparison:
    methods = list(methods)
    if not methods:
        raise ValueError("at least one method is required")
    configs = configs or {}
    reports, failures = {}, {}
    for m in methods:
        try:
            reports[m] = estimate(nameplate, m, bounds, configs.get(m), n_restarts,
                                  penalty_weight, workers)
        except (EstimationError, FloatingPointError) as exc:
            log.warning("%s failed: %s", m, exc)
            failures[m] = str(exc)
    return Comparison(nameplate, reports, failures, reference_params, reference_name)


@dataclass
class CurveSet:
    torque: dict
    current: dict
    convergence: dict
    torque_anchors: list
    current_anchors: list


def emit_curves(models, nameplate: Nameplate, n_points: int = 1000) -> CurveSet:
    """Slip-torque, slip-current and convergence datasets.

    ``models`` maps a label to an ``EstimationReport`` or ``CircuitParams``.
    Manufacturer anchors are (slip, value) points; the maximum-torque anchor
    is placed at the peak slip of the first model given.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    models = dict(models)
    if not models:
        raise ValueError("at least one model is required")
    params = {k: (v.params if isinstance(v, EstimationReport) else v) for k, v in models.items()}
    torque = {k: torque_curve(p, nameplate, n_points) for k, p in params.items()}
    current = {k: current_curve(p, nameplate, n_points) for k, p in params.items()}
    convergence = {k: list(v.trace.best_cost_per_iteration)
                   for k, v in models.items() if isinstance(v, EstimationReport)}
    s_m = find_max_torque(next(iter(params.values())), nameplate).s_m
    s_fl = nameplate.s_full_load
    torque_anchors = [("T_st", 1.0, nameplate.t_start), ("T_Max", s_m, nameplate.t_max),
                      ("T_fl", s_fl, nameplate.t_full_load)]
    current_anchors = [("I_st", 1.0, nameplate.i_start), ("I_fl", s_fl, nameplate.i_full_load)]
    return CurveSet(torque, current, convergence, torque_anchors, current_anchors)


def curve_value_at(curve, slip: float) -> float:
    """Value of the sample nearest to ``slip``."""
    s = np.array([p[0] for p in curve])
    return curve[int(np.argmin(np.abs(s - slip)))][1]
