"""Compare the numba and numpy residual kernels, and time one full ABC run.

    python benchmarks/bench_kernels.py [--batch 240] [--repeat 20]
"""

import argparse
import time

import numpy as np

from motorfit import kernels
from motorfit.objective import NameplateObjective, SearchBounds
from motorfit.optimizers import AbcConfig, abc_minimize
from motorfit.reference import TEST_MOTOR


def time_kernel(backend, x, plate, repeat):
    kernels.batch_residuals(x[:2], plate, backend)  # warm up / compile
    start = time.perf_counter()
    for _ in range(repeat):
        out = kernels.batch_residuals(x, plate, backend)
    per_candidate = (time.perf_counter() - start) / (repeat * len(x)) * 1e6
    return per_candidate, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--batch", type=int, default=240)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    b = SearchBounds.default()
    x = np.random.default_rng(0).uniform(b.lo, b.hi, (args.batch, 7))
    plate = TEST_MOTOR.as_array()

    outputs = {}
    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    for backend in backends:
        us, outputs[backend] = time_kernel(backend, x, plate, args.repeat)
        print(f"{backend:>6}: {us:8.2f} us per candidate")
    if len(outputs) == 2:
        print(f"max |numba - numpy| = {np.max(np.abs(outputs['numba'] - outputs['numpy'])):.2e}")

    for backend in backends:
        obj = NameplateObjective(TEST_MOTOR, backend=backend)
        start = time.perf_counter()
        res = abc_minimize(obj, b, AbcConfig(rng_seed=42))
        print(f"{backend:>6}: ABC 120x100 in {time.perf_counter() - start:6.2f} s, cost {res.cost:.4e}")


if __name__ == "__main__":
    main()
