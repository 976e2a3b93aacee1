r"""Steady-state evaluation of the double-cage induction motor equivalent circuit.

Topology (per phase, star connected)::

    Rs   jXsd        ┌──────────┬──────────┐
  ○─/\/\──mmm──┬─────┤          │          │
               │    jXm      R1/s       R2/s
               │     │       jX1d       jX2d
  ○────────────┴─────┴──────────┴──────────┘

``r_1``/``x_1d`` is the inner (low resistance, high leakage) cage and
``r_2``/``x_2d`` the outer cage.  In the published comparison table the
stator resistance row is labelled ``R_1`` and the cage rows ``R_1d``/``R_2d``;
they map to ``r_s``, ``r_1`` and ``r_2`` here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import astuple, dataclass, fields

import numpy as np

S_MIN = 1e-4
GRID_POINTS = 1000
SLIP_TOL = 1e-8

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class ModelDomainError(ValueError):
    """Raised when the circuit is evaluated outside the motoring slip range."""


@dataclass(frozen=True)
class Nameplate:
    """Manufacturer data of a motor.

    Torques in N·m, currents in A (phase RMS), ``v_line`` is the line-to-line
    RMS voltage, ``p_rated`` the mechanical output in W.
    """

    t_start: float
    t_full_load: float
    t_max: float
    i_start: float
    i_full_load: float
    pf_full_load: float
    s_full_load: float
    v_line: float
    freq: float
    p_rated: float
    pole_pairs: int

    def __post_init__(self):
        positive = ("t_start", "t_full_load", "t_max", "i_start", "i_full_load",
                    "v_line", "freq", "p_rated")
        for name in positive:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")
        if not 0 < self.s_full_load < 1:
            raise ValueError(f"s_full_load must lie in (0, 1), got {self.s_full_load!r}")
        if not 0 < self.pf_full_load <= 1:
            raise ValueError(f"pf_full_load must lie in (0, 1], got {self.pf_full_load!r}")
        if self.t_max < self.t_full_load:
            raise ValueError("t_max must not be smaller than t_full_load")
        if int(self.pole_pairs) != self.pole_pairs or self.pole_pairs < 1:
            raise ValueError(f"pole_pairs must be a positive integer, got {self.pole_pairs!r}")
        object.__setattr__(self, "pole_pairs", int(self.pole_pairs))

    @property
    def v_phase(self) -> float:
        return self.v_line / math.sqrt(3.0)

    @property
    def omega_s(self) -> float:
        """Electrical synchronous angular frequency in rad/s."""
        return 2.0 * math.pi * self.freq

    def as_array(self) -> np.ndarray:
        """Packed ``float64`` vector consumed by the batch kernels."""
        return np.array([
            self.t_full_load, self.t_start, self.t_max, self.pf_full_load,
            self.i_start, self.i_full_load, self.s_full_load,
            self.v_phase, 3.0 * self.pole_pairs / self.omega_s,
        ])


def suggest_pole_pairs(t_full_load: float, s_full_load: float, p_rated: float,
                       freq: float) -> int:
    """Pole-pair count implied by rated power, torque and slip."""
    omega_rotor = p_rated / t_full_load
    omega_sync_mech = omega_rotor / (1.0 - s_full_load)
    return max(1, round(2.0 * math.pi * freq / omega_sync_mech))


PARAM_NAMES = ("r_s", "x_sd", "x_m", "r_1", "x_1d", "r_2", "x_2d")


@dataclass(frozen=True)
class CircuitParams:
    """The seven unknown circuit elements, all in ohms."""

    r_s: float
    x_sd: float
    x_m: float
    r_1: float
    x_1d: float
    r_2: float
    x_2d: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{f.name} must be finite and > 0, got {value!r}")

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values) -> "CircuitParams":
        values = [float(v) for v in values]
        if len(values) != 7:
            raise ValueError(f"expected 7 parameter values, got {len(values)}")
        return cls(*values)


@dataclass(frozen=True)
class SteadyState:
    slip: float
    z_parallel: complex
    i_stator: complex
    i_cage1: complex
    i_cage2: complex
    torque: float
    power_factor: float


@dataclass(frozen=True)
class MaxTorque:
    s_m: float
    t_max: float


def _check_slip(slip: float) -> None:
    if not 0 < slip <= 1:
        raise ModelDomainError(f"slip must lie in (0, 1], got {slip!r}")


def rotor_branch_impedance(r: float, x: float, slip: float) -> complex:
    """Impedance ``r/slip + jx`` of one rotor cage."""
    _check_slip(slip)
    return complex(r / slip, x)


def parallel_impedance(params: CircuitParams, slip: float) -> complex:
    """Magnetizing reactance in parallel with both rotor cages."""
    z1 = rotor_branch_impedance(params.r_1, params.x_1d, slip)
    z2 = rotor_branch_impedance(params.r_2, params.x_2d, slip)
    return 1.0 / (1.0 / complex(0.0, params.x_m) + 1.0 / z1 + 1.0 / z2)


def steady_state(params: CircuitParams, nameplate: Nameplate, slip: float) -> SteadyState:
    z1 = rotor_branch_impedance(params.r_1, params.x_1d, slip)
    z2 = rotor_branch_impedance(params.r_2, params.x_2d, slip)
    zp = 1.0 / (1.0 / complex(0.0, params.x_m) + 1.0 / z1 + 1.0 / z2)
    z_in = complex(params.r_s, params.x_sd) + zp
    if abs(z_in) < 1e-12:
        raise ArithmeticError("input impedance magnitude below 1e-12 ohm")
    i_s = nameplate.v_phase / z_in
    v_gap = zp * i_s
    i_1 = v_gap / z1
    i_2 = v_gap / z2
    torque = (3.0 * nameplate.pole_pairs / nameplate.omega_s) * (
        abs(i_1) ** 2 * params.r_1 / slip + abs(i_2) ** 2 * params.r_2 / slip
    )
    return SteadyState(
        slip=slip,
        z_parallel=zp,
        i_stator=i_s,
        i_cage1=i_1,
        i_cage2=i_2,
        torque=torque,
        power_factor=math.cos(cmath.phase(z_in)),
    )


def torque_at(params: CircuitParams, nameplate: Nameplate, slip):
    """Vectorised electromagnetic torque for an array of slips."""
    s = np.asarray(slip, dtype=float)
    if np.any(s <= 0) or np.any(s > 1):
        raise ModelDomainError("slip must lie in (0, 1]")
    z1 = params.r_1 / s + 1j * params.x_1d
    z2 = params.r_2 / s + 1j * params.x_2d
    zp = 1.0 / (1.0 / (1j * params.x_m) + 1.0 / z1 + 1.0 / z2)
    i_s = nameplate.v_phase / (params.r_s + 1j * params.x_sd + zp)
    v_gap = zp * i_s
    p_gap = (np.abs(v_gap / z1) ** 2 * params.r_1 + np.abs(v_gap / z2) ** 2 * params.r_2) / s
    return (3.0 * nameplate.pole_pairs / nameplate.omega_s) * p_gap


def golden_section_max(f, a: float, b: float, tol: float = SLIP_TOL):
    """Maximise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def find_max_torque(params: CircuitParams, nameplate: Nameplate) -> MaxTorque:
    """Slip of maximum torque: 1000-point scan on (0, 1] then golden section."""
    grid = np.arange(1, GRID_POINTS + 1) / GRID_POINTS
    torque = torque_at(params, nameplate, grid)
    k = int(np.argmax(torque))
    best_s, best_t = float(grid[k]), float(torque[k])
    lo = grid[k - 1] if k > 0 else grid[0] * 1e-3
    hi = grid[min(k + 1, GRID_POINTS - 1)]

    def f(s):
        return float(torque_at(params, nameplate, s))

    s, t = golden_section_max(f, float(lo), float(hi))
    if t > best_t:
        best_s, best_t = s, t
    return MaxTorque(s_m=best_s, t_max=best_t)


QUANTITY_NAMES = ("T_st", "T_fl", "T_Max", "I_st", "I_fl", "PF_fl")


def derived_quantities(params: CircuitParams, nameplate: Nameplate) -> dict:
    """Model values of the six nameplate quantities, keyed by ``QUANTITY_NAMES``."""
    start = steady_state(params, nameplate, 1.0)
    full = steady_state(params, nameplate, nameplate.s_full_load)
    peak = find_max_torque(params, nameplate)
    return {
        "T_st": start.torque,
        "T_fl": full.torque,
        "T_Max": peak.t_max,
        "I_st": abs(start.i_stator),
        "I_fl": abs(full.i_stator),
        "PF_fl": full.power_factor,
    }


def manufacturer_quantities(nameplate: Nameplate) -> dict:
    return {
        "T_st": nameplate.t_start,
        "T_fl": nameplate.t_full_load,
        "T_Max": nameplate.t_max,
        "I_st": nameplate.i_start,
        "I_fl": nameplate.i_full_load,
        "PF_fl": nameplate.pf_full_load,
    }


def _curve_slips(n_points: int) -> np.ndarray:
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    return np.linspace(S_MIN, 1.0, n_points)


def torque_curve(params: CircuitParams, nameplate: Nameplate, n_points: int):
    """``(slip, torque)`` pairs on ``[1e-4, 1]``."""
    return [(float(s), steady_state(params, nameplate, float(s)).torque)
            for s in _curve_slips(n_points)]


def current_curve(params: CircuitParams, nameplate: Nameplate, n_points: int):
    """``(slip, |I_stator|)`` pairs on ``[1e-4, 1]``."""
    return [(float(s), abs(steady_state(params, nameplate, float(s)).i_stator))
            for s in _curve_slips(n_points)]
