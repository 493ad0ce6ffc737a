"""Timing comparison of the root-finder kernels.

Runs the batched Aberth-Ehrlich iteration on seeded workloads with the
compiled kernel and the numpy fallback, and reports wall times, the
speedup, and the largest disagreement between the two root sets. The
default shapes mirror the certification hot paths: many small rows from
grid refinements, medium coefficient scans, one large flat batch.

Usage: python benchmarks/bench_roots.py [batch degree [repeats]]
"""

import sys
import time

import numpy as np

from singular_forge.numerics import _kernels_py
from singular_forge.numerics._backend import BACKEND

try:
    from singular_forge.numerics import _kernels
except ImportError:
    _kernels = None

DEFAULT_SHAPES = [
    (81, 4, 20),     # refinement pass around a minimizer
    (256, 8, 10),    # medium scan rows
    (2048, 3, 5),    # arg-crit derivative batch
    (4096, 8, 3),    # large flat batch
]


def workload(batch, degree, seed=2024):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=(batch, degree + 1)) + 1j * rng.normal(size=(batch, degree + 1))
    # keep leading coefficients away from zero
    lead = c[:, -1]
    c[:, -1] = np.where(np.abs(lead) < 0.1, lead + 0.5, lead)
    return c


def run(kernel, coeffs, repeats):
    best = float("inf")
    roots = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        roots, _ = kernel.aberth_batch(coeffs)
        best = min(best, time.perf_counter() - t0)
    return best, np.sort(roots, axis=1)


def bench_shape(batch, degree, repeats):
    coeffs = workload(batch, degree)
    t_py, roots_py = run(_kernels_py, coeffs, repeats)
    if _kernels is None:
        print(f"  {batch:6d} x deg {degree:2d}: python {t_py * 1e3:8.2f} ms, "
              f"compiled kernel not built")
        return
    t_cy, roots_cy = run(_kernels, coeffs, repeats)
    dev = np.abs(roots_py - roots_cy).max()
    print(f"  {batch:6d} x deg {degree:2d}: python {t_py * 1e3:8.2f} ms, "
          f"compiled {t_cy * 1e3:8.2f} ms, speedup {t_py / t_cy:5.2f}x, "
          f"max deviation {dev:.2e}")


def main(argv):
    print(f"active backend: {BACKEND}")
    if _kernels is None:
        print("compiled kernel missing; pip install -e . rebuilds it")
    if len(argv) > 2:
        batch, degree = int(argv[1]), int(argv[2])
        repeats = int(argv[3]) if len(argv) > 3 else 5
        bench_shape(batch, degree, repeats)
    else:
        for batch, degree, repeats in DEFAULT_SHAPES:
            bench_shape(batch, degree, repeats)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
