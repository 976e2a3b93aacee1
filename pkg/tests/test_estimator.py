import pytest

from motorfit.estimator import (
    EstimationError,
    compare_methods,
    curve_value_at,
    default_config,
    emit_curves,
    estimate,
    quantity_table,
)
from motorfit.objective import SearchBounds, check_constraints
from motorfit.reference import PUBLISHED_PARAMS, PUBLISHED_QUANTITIES


def small(method, seed=0):
    return default_config(method, rng_seed=seed, max_iterations=25, colony_size=40, swarm_size=40,
                          population_size=40)


def test_report_structure(nameplate):
    rep = estimate(nameplate, "abc", config=small("abc"), n_restarts=3)
    assert rep.seeds == [0, 1, 2]
    assert rep.final_cost <= min(rep.per_seed_costs) + 1e-15
    assert [r.quantity for r in rep.quantities] == ["T_st", "T_fl", "T_Max", "I_st", "I_fl", "PF_fl"]
    assert check_constraints(rep.params, nameplate).feasible
    for row in rep.quantities:
        assert row.error_pct == pytest.approx(100 * abs(row.calculated - row.manufacturer) / row.manufacturer,
                                              rel=1e-9)
    recomputed = quantity_table(rep.params, nameplate)
    assert recomputed == rep.quantities
    assert len(rep.trace.best_cost_per_iteration) == 25


def test_ga_report_is_feasible(nameplate):
    rep = estimate(nameplate, "ga", config=small("ga"), n_restarts=3)
    assert check_constraints(rep.params, nameplate).feasible


def test_deterministic(nameplate):
    a = estimate(nameplate, "abc", config=small("abc", 9), n_restarts=1)
    b = estimate(nameplate, "abc", config=small("abc", 9), n_restarts=1)
    assert a.params == b.params and a.quantities == b.quantities


def test_parallel_restarts_identical(nameplate):
    a = estimate(nameplate, "pso", config=small("pso", 3), n_restarts=3, workers=1)
    b = estimate(nameplate, "pso", config=small("pso", 3), n_restarts=3, workers=3)
    assert a.per_seed_costs == b.per_seed_costs and a.params == b.params


def test_infeasible_raises(nameplate):
    # every point in these bounds violates r_2 > r_1
    lo = (0.5, 0.05, 10, 5.0, 0.2, 0.5, 0.1)
    hi = (2.0, 0.5, 40, 6.0, 0.5, 1.0, 0.15)
    with pytest.raises(EstimationError):
        estimate(nameplate, "abc", SearchBounds(lo, hi), small("abc"), n_restarts=2)


def test_unknown_method(nameplate):
    with pytest.raises(ValueError):
        estimate(nameplate, "sa")


def test_compare_with_reference(nameplate):
    comp = compare_methods(nameplate, ["abc"], PUBLISHED_PARAMS["pamp"], configs={"abc": small("abc")},
                           n_restarts=2, reference_name="pamp")
    assert comp.columns() == ["abc", "pamp"]
    for q, mf, cells in comp.quantities_table():
        calc, err = cells[1]
        if q != "T_fl":
            assert abs(calc - PUBLISHED_QUANTITIES["pamp"][q]) / PUBLISHED_QUANTITIES["pamp"][q] <= 0.02
    assert len(comp.params_table()) == 7


def test_compare_without_reference(nameplate):
    comp = compare_methods(nameplate, ["abc", "ga"], configs={m: small(m) for m in ("abc", "ga")}, n_restarts=1)
    assert comp.columns() == ["abc", "ga"]
    assert set(comp.traces()) == {"abc", "ga"}
    assert comp.ordering_notes()[0].startswith("abc <= ga")


def test_compare_isolates_failures(nameplate):
    lo = (0.5, 0.05, 10, 5.0, 0.2, 0.5, 0.1)
    hi = (2.0, 0.5, 40, 6.0, 0.5, 1.0, 0.15)
    comp = compare_methods(nameplate, ["abc", "pso"], bounds=SearchBounds(lo, hi),
                           configs={m: small(m) for m in ("abc", "pso")}, n_restarts=1)
    assert set(comp.failures) == {"abc", "pso"} and not comp.reports
    assert all(v is None for _, values in comp.params_table() for v in values)


def test_compare_needs_methods(nameplate):
    with pytest.raises(ValueError):
        compare_methods(nameplate, [])


def test_emit_curves(nameplate):
    rep = estimate(nameplate, "abc", config=small("abc"), n_restarts=1)
    curves = emit_curves({"abc": rep, "pamp": PUBLISHED_PARAMS["pamp"]}, nameplate, 50)
    assert len(curves.torque_anchors) == 3 and len(curves.current_anchors) == 2
    assert len(curves.convergence["abc"]) == 25 and "pamp" not in curves.convergence
    assert len(curves.torque["pamp"]) == 50
    assert curves.torque["abc"][-1][0] == 1.0
    assert curve_value_at(curves.current["pamp"], 1.0) == pytest.approx(66.01577299455123, rel=1e-12)


def test_emit_curves_validates(nameplate):
    with pytest.raises(ValueError):
        emit_curves({"x": PUBLISHED_PARAMS["abc"]}, nameplate, 1)
