"""Batch residual kernels for the optimizer hot loop.

Two interchangeable backends evaluate the six nameplate residuals for a whole
population at once: a numba ``@njit`` loop and a pure-numpy broadcast version.
The numba path is used when numba imports and ``MOTORFIT_DISABLE_NUMBA`` is
unset (or ``0``); otherwise the numpy path is used.

Packed nameplate layout (see ``Nameplate.as_array``)::

    [t_fl, t_st, t_max, pf_fl, i_st, i_fl, s_fl, v_phase, 3p/omega_s]
"""

import math
import os

import numpy as np

GRID_POINTS = 1000
SLIP_TOL = 1e-8
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

_disabled = os.environ.get("MOTORFIT_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")
try:
    if _disabled:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def _residuals_numpy(positions, plate):
    x = np.atleast_2d(np.asarray(positions, dtype=float))
    rs, xsd, xm, r1, x1, r2, x2 = (x[:, j:j + 1] for j in range(7))
    t_fl, t_st, t_mx, pf_fl, i_st, i_fl, s_fl, v, k_t = plate

    def evaluate(s):
        z1 = r1 / s + 1j * x1
        z2 = r2 / s + 1j * x2
        zp = 1.0 / (1.0 / (1j * xm) + 1.0 / z1 + 1.0 / z2)
        z_in = rs + 1j * xsd + zp
        i_s = v / z_in
        vg = zp * i_s
        t = k_t * (np.abs(vg / z1) ** 2 * r1 + np.abs(vg / z2) ** 2 * r2) / s
        return t, np.abs(i_s), np.cos(np.angle(z_in))

    one = np.ones((1, 1))
    t_full, i_full, pf_full = evaluate(s_fl * one)
    t_start, i_start, _ = evaluate(one)

    grid = (np.arange(1, GRID_POINTS + 1) / GRID_POINTS)[None, :]
    t_grid, _, _ = evaluate(grid)
    k = np.argmax(t_grid, axis=1)
    rows = np.arange(x.shape[0])
    best = t_grid[rows, k]
    g = grid[0]
    lo = np.where(k > 0, g[np.maximum(k - 1, 0)], g[0] * 1e-3)
    hi = g[np.minimum(k + 1, GRID_POINTS - 1)]

    def tcol(s):
        return evaluate(s[:, None])[0][:, 0]

    a, b = lo.copy(), hi.copy()
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = tcol(c), tcol(d)
    n_iter = int(math.ceil(math.log(SLIP_TOL / float(np.max(b - a))) / math.log(_INV_PHI))) + 1
    for _ in range(max(n_iter, 0)):
        left = fc >= fd
        new_a = np.where(left, a, c)
        new_b = np.where(left, d, b)
        new_c = np.where(left, new_b - _INV_PHI * (new_b - new_a), d)
        new_d = np.where(left, c, new_a + _INV_PHI * (new_b - new_a))
        probe = np.where(left, new_c, new_d)
        fp = tcol(probe)
        fc, fd = np.where(left, fp, fd), np.where(left, fc, fp)
        a, b, c, d = new_a, new_b, new_c, new_d
    t_peak = np.maximum(best, tcol(0.5 * (a + b)))

    out = np.empty((x.shape[0], 6))
    out[:, 0] = (t_full[:, 0] - t_fl) / t_fl
    out[:, 1] = (t_start[:, 0] - t_st) / t_st
    out[:, 2] = (t_peak - t_mx) / t_mx
    out[:, 3] = (pf_full[:, 0] - pf_fl) / pf_fl
    out[:, 4] = (i_start[:, 0] - i_st) / i_st
    out[:, 5] = (i_full[:, 0] - i_fl) / i_fl
    return out


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _point(p, v, k_t, s):
        # Air-gap power form: |I_s|^2 Re(Z_p) equals the summed cage losses R/s |I|^2.
        z1 = complex(p[3] / s, p[4])
        z2 = complex(p[5] / s, p[6])
        zp = 1.0 / (complex(0.0, -1.0 / p[2]) + 1.0 / z1 + 1.0 / z2)
        z_in = complex(p[0], p[1]) + zp
        mag2 = z_in.real * z_in.real + z_in.imag * z_in.imag
        t = k_t * v * v * zp.real / mag2
        mag = math.sqrt(mag2)
        return t, v / mag, z_in.real / mag

    @njit(cache=True, nogil=True)
    def _peak(p, v, k_t):
        best = -1.0
        kbest = 0
        for k in range(GRID_POINTS):
            t = _point(p, v, k_t, (k + 1) / GRID_POINTS)[0]
            if t > best:
                best = t
                kbest = k
        if kbest > 0:
            a = kbest / GRID_POINTS
        else:
            a = 1e-3 / GRID_POINTS
        b = (min(kbest + 1, GRID_POINTS - 1) + 1) / GRID_POINTS
        c = b - _INV_PHI * (b - a)
        d = a + _INV_PHI * (b - a)
        fc = _point(p, v, k_t, c)[0]
        fd = _point(p, v, k_t, d)[0]
        while b - a > SLIP_TOL:
            if fc >= fd:
                b = d
                d = c
                fd = fc
                c = b - _INV_PHI * (b - a)
                fc = _point(p, v, k_t, c)[0]
            else:
                a = c
                c = d
                fc = fd
                d = a + _INV_PHI * (b - a)
                fd = _point(p, v, k_t, d)[0]
        t = _point(p, v, k_t, 0.5 * (a + b))[0]
        return max(t, best)

    @njit(cache=True, nogil=True)
    def _residuals_numba(x, plate):
        n = x.shape[0]
        out = np.empty((n, 6))
        t_fl, t_st, t_mx, pf_fl = plate[0], plate[1], plate[2], plate[3]
        i_st, i_fl, s_fl, v, k_t = plate[4], plate[5], plate[6], plate[7], plate[8]
        for j in range(n):
            p = x[j]
            tf, i_f, pf = _point(p, v, k_t, s_fl)
            ts, i_s, _ = _point(p, v, k_t, 1.0)
            tm = _peak(p, v, k_t)
            out[j, 0] = (tf - t_fl) / t_fl
            out[j, 1] = (ts - t_st) / t_st
            out[j, 2] = (tm - t_mx) / t_mx
            out[j, 3] = (pf - pf_fl) / pf_fl
            out[j, 4] = (i_s - i_st) / i_st
            out[j, 5] = (i_f - i_fl) / i_fl
        return out


def batch_residuals(positions, plate, backend=None):
    """Residual matrix ``(N, 6)`` for an ``(N, 7)`` array of parameter vectors.

    ``backend`` forces ``"numba"`` or ``"numpy"``; ``None`` picks the default.
    """
    x = np.ascontiguousarray(np.atleast_2d(positions), dtype=np.float64)
    plate = np.ascontiguousarray(plate, dtype=np.float64)
    if backend is None:
        backend = "numba" if HAVE_NUMBA else "numpy"
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return _residuals_numba(x, plate)
    if backend == "numpy":
        return _residuals_numpy(x, plate)
    raise ValueError(f"unknown backend {backend!r}")


def default_backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
