#!/usr/bin/env python3
"""Compare the numba batch-geometry kernel against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 1000,10000,...]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from interceptgraph._kernels import HAS_NUMBA, _assemble_numba, _assemble_numpy


def make_inputs(n: int, rng: np.random.Generator):
    phi_i = rng.uniform(0.0, math.pi, n)
    phi_f = rng.uniform(0.0, math.pi, n)
    theta = np.abs(phi_f - phi_i)
    return (
        np.cos(theta),
        np.sin(phi_i), np.cos(phi_i),
        np.sin(phi_f), np.cos(phi_f),
    )


def bench(fn, args, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args, 120.0, 360.0, 1.0)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="1000,10000,100000,1000000",
                        help="comma-separated item counts")
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    rng = np.random.default_rng(0)
    print(f"{'n':>9}  {'numpy':>12}  {'numba':>12}  {'speedup':>8}")
    for n in sizes:
        inputs = make_inputs(n, rng)
        t_np = bench(_assemble_numpy, inputs, args.repeats)
        if HAS_NUMBA:
            _assemble_numba(*inputs, 120.0, 360.0, 1.0)  # compile outside timing
            t_nb = bench(_assemble_numba, inputs, args.repeats)
            print(f"{n:>9}  {t_np * 1e3:>10.3f}ms  {t_nb * 1e3:>10.3f}ms  "
                  f"{t_np / t_nb:>7.2f}x")
        else:
            print(f"{n:>9}  {t_np * 1e3:>10.3f}ms  {'n/a':>12}  {'n/a':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
