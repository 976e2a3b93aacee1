import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motorfit.motor_model import (
    CircuitParams,
    ModelDomainError,
    Nameplate,
    current_curve,
    derived_quantities,
    find_max_torque,
    parallel_impedance,
    rotor_branch_impedance,
    steady_state,
    suggest_pole_pairs,
    torque_at,
    torque_curve,
)
from motorfit.reference import PUBLISHED_QUANTITIES

from oracles import grid_peak, mesh_solve

ohms = st.floats(min_value=0.01, max_value=10.0)
magnetizing = st.floats(min_value=5.0, max_value=100.0)
slips = st.floats(min_value=1e-4, max_value=1.0)


@st.composite
def circuit_params(draw):
    return CircuitParams(draw(ohms), draw(ohms), draw(magnetizing), draw(ohms), draw(ohms),
                         draw(ohms), draw(ohms))


def rel(a, b):
    return abs(a - b) / abs(b)


class TestRotorBranch:
    def test_unit_slip(self):
        assert rotor_branch_impedance(1.253, 0.1573, 1.0) == complex(1.253, 0.1573)

    def test_half_slip(self):
        assert rotor_branch_impedance(1.253, 0.1573, 0.5) == pytest.approx(complex(2.506, 0.1573))

    def test_full_load_slip(self):
        z = rotor_branch_impedance(1.0, 1.0, 0.039)
        assert z.real == pytest.approx(1 / 0.039)
        assert z.imag == 1.0

    @pytest.mark.parametrize("slip", [0.0, -0.1, 1.5])
    def test_domain(self, slip):
        with pytest.raises(ModelDomainError):
            rotor_branch_impedance(1.0, 1.0, slip)


class TestParallelImpedance:
    def test_identical_cages_open_magnetizing(self):
        p = CircuitParams(1.0, 0.1, 1e12, 1.3, 0.2, 1.3, 0.2)
        assert parallel_impedance(p, 0.25) == pytest.approx(complex(1.3 / 0.25, 0.2) / 2, rel=1e-9)

    def test_pamp_standstill_matches_mesh_oracle(self, pamp):
        # Frozen from tests/oracles.py mesh analysis.
        assert parallel_impedance(pamp, 1.0) == pytest.approx(0.6237418494409248 + 0.08592380433119345j,
                                                              rel=1e-12)

    def test_open_rotor(self):
        p = CircuitParams(1.183, 0.1257, 25.4211, 1e12, 0.1573, 1e12, 0.1257)
        assert parallel_impedance(p, 1.0) == pytest.approx(25.4211j, rel=1e-9)

    def test_domain(self, pamp):
        with pytest.raises(ModelDomainError):
            parallel_impedance(pamp, 0.0)


class TestSteadyState:
    @pytest.mark.parametrize("method, slip, field, published", [
        ("pamp", 1.0, "I_st", 65.8839),
        ("pamp", 1.0, "T_st", 43.57),
        ("pamp", 0.039, "I_fl", 8.2933),
        ("pamp", 0.039, "PF_fl", 0.8747),
        ("abc", 1.0, "I_st", 65.8059),
        ("abc", 1.0, "T_st", 43.5),
    ])
    def test_published_values_within_two_percent(self, nameplate, method, slip, field, published):
        from motorfit.reference import PUBLISHED_PARAMS

        st_ = steady_state(PUBLISHED_PARAMS[method], nameplate, slip)
        value = {"I_st": abs(st_.i_stator), "I_fl": abs(st_.i_stator), "T_st": st_.torque,
                 "PF_fl": st_.power_factor}[field]
        assert rel(value, published) <= 0.02
        assert PUBLISHED_QUANTITIES[method][field] == published

    def test_full_load_torque_offset_recorded(self, nameplate, pamp):
        # The model gives 12.2478 N·m; the published 12.57 N·m is 2.6 % higher.
        t = steady_state(pamp, nameplate, 0.039).torque
        assert t == pytest.approx(12.247782, rel=1e-6)

    def test_matches_mesh_oracle(self, nameplate, pamp):
        for s in (1e-3, 0.039, 0.3, 1.0):
            st_ = steady_state(pamp, nameplate, s)
            i_s, _, i1, i2 = mesh_solve(pamp.as_array(), nameplate.v_phase, s)
            assert st_.i_stator == pytest.approx(complex(i_s[0]), rel=1e-12)
            assert st_.i_cage1 == pytest.approx(complex(i1[0]), rel=1e-12)
            assert st_.i_cage2 == pytest.approx(complex(i2[0]), rel=1e-12)

    def test_domain(self, nameplate, pamp):
        with pytest.raises(ModelDomainError):
            steady_state(pamp, nameplate, 0.0)


class TestMaxTorque:
    def test_pamp_published(self, nameplate, pamp):
        assert rel(find_max_torque(pamp, nameplate).t_max, 48.33) <= 0.02

    def test_abc_published(self, nameplate, abc_params):
        assert rel(find_max_torque(abc_params, nameplate).t_max, 48.68) <= 0.02

    def test_pamp_peak_slip_against_dense_grid(self, nameplate, pamp):
        # 1e6-point scan: s = 0.52499, T = 47.96207590424549
        m = find_max_torque(pamp, nameplate)
        assert m.s_m == pytest.approx(0.52499, abs=2e-6)
        assert m.t_max == pytest.approx(47.96207590424549, rel=1e-10)

    def test_monotone_curve_peaks_at_standstill(self, nameplate):
        # rotor resistance far above the leakage reactances: torque rises all the way to standstill
        p = CircuitParams(0.5, 0.5, 50.0, 9.0, 0.05, 10.0, 0.01)
        m = find_max_torque(p, nameplate)
        assert m.s_m == 1.0
        assert m.t_max == pytest.approx(steady_state(p, nameplate, 1.0).torque, rel=1e-14)

    def test_dominates_grid(self, nameplate):
        rng = np.random.default_rng(3)
        from conftest import random_feasible

        for p in random_feasible(rng, 10):
            grid = np.linspace(1e-5, 1.0, 10 ** 5)
            top = float(np.max(torque_at(p, nameplate, grid)))
            assert find_max_torque(p, nameplate).t_max >= top - 1e-4 * top


class TestCurves:
    def test_two_points(self, nameplate, pamp):
        c = torque_curve(pamp, nameplate, 2)
        assert [s for s, _ in c] == [1e-4, 1.0]

    def test_endpoint(self, nameplate, pamp):
        c = torque_curve(pamp, nameplate, 3)
        assert c[-1][0] == 1.0
        assert rel(c[-1][1], 43.57) <= 0.02

    def test_abc_full_load_torque(self, nameplate, abc_params):
        c = torque_curve(abc_params, nameplate, 1000)
        s = np.array([p[0] for p in c])
        t = np.interp(0.039, s, [p[1] for p in c])
        assert rel(t, 12.55) <= 0.03  # published full-load torque sits 2.6 % above this model

    def test_current_curve(self, nameplate, pamp, abc_params):
        c = current_curve(pamp, nameplate, 11)
        assert rel(c[-1][1], 65.8839) <= 0.02
        c = dict(current_curve(abc_params, nameplate, 10001))
        nearest = min(c, key=lambda x: abs(x - 0.039))
        assert rel(c[nearest], 8.3196) <= 0.02

    def test_current_spot_value(self, nameplate, abc_params):
        # mesh oracle at s = 0.5: 49.102844094531015 A
        assert abs(steady_state(abc_params, nameplate, 0.5).i_stator) == pytest.approx(49.102844094531015,
                                                                                      rel=1e-12)

    def test_invalid_points(self, nameplate, pamp):
        with pytest.raises(ValueError):
            torque_curve(pamp, nameplate, 1)


class TestNameplate:
    def test_pole_pair_suggestion(self):
        assert suggest_pole_pairs(12.27, 0.039, 2200, 60) == 2

    def test_phase_voltage(self, nameplate):
        assert nameplate.v_phase == pytest.approx(208 / math.sqrt(3))

    @pytest.mark.parametrize("field, value", [
        ("s_full_load", 1.0), ("pf_full_load", 1.2), ("t_max", 10.0), ("freq", 0.0), ("pole_pairs", 0),
    ])
    def test_invalid(self, nameplate, field, value):
        kwargs = {**nameplate.__dict__, field: value}
        with pytest.raises(ValueError):
            Nameplate(**kwargs)

    def test_params_positive(self):
        with pytest.raises(ValueError):
            CircuitParams(1, 1, 1, 0, 1, 1, 1)


@settings(max_examples=200, deadline=None)
@given(circuit_params(), slips)
def test_kirchhoff_current_balance(p, s):
    from motorfit.reference import TEST_MOTOR

    st_ = steady_state(p, TEST_MOTOR, s)
    i_mag = st_.z_parallel * st_.i_stator / complex(0, p.x_m)
    total = st_.i_cage1 + st_.i_cage2 + i_mag
    assert abs(total - st_.i_stator) <= 1e-9 * abs(st_.i_stator)


@settings(max_examples=200, deadline=None)
@given(circuit_params(), slips)
def test_air_gap_power_identity(p, s):
    from motorfit.reference import TEST_MOTOR as m

    st_ = steady_state(p, m, s)
    gap = 3 * m.pole_pairs / m.omega_s * st_.z_parallel.real * abs(st_.i_stator) ** 2
    assert st_.torque == pytest.approx(gap, rel=1e-9)
    assert st_.torque >= 0
    assert 0 < st_.power_factor <= 1


@settings(max_examples=100, deadline=None)
@given(ohms, ohms, ohms, ohms, magnetizing, slips)
def test_symmetric_cages_share_current(rs, xs, r, x, xm, s):
    from motorfit.reference import TEST_MOTOR

    st_ = steady_state(CircuitParams(rs, xs, xm, r, x, r, x), TEST_MOTOR, s)
    assert abs(st_.i_cage1) == pytest.approx(abs(st_.i_cage2), rel=1e-12)


def test_deterministic(nameplate, pamp):
    assert derived_quantities(pamp, nameplate) == derived_quantities(pamp, nameplate)


def test_grid_peak_oracle_self_check(nameplate, pamp):
    s, t = grid_peak(pamp.as_array(), nameplate.v_phase, 2, 60, n=10 ** 4)
    assert 0.5 < s < 0.55 and t > 47.9
