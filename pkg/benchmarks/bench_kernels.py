"""Benchmark the compiled locus kernel against the pure-Python fallback.

Two regimes matter: vectorized grid sweeps (bracketing) and scalar calls
(the Brent root polish, which hammers f_scalar one point at a time).

Usage: python benchmarks/bench_kernels.py [grid-size]
"""

import sys
import time

import numpy as np

from specsing import kernels, _kernels_py


def bench_grid(fn, n, rho, ys, repeats=20):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(n, -1, rho, ys)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_scalar(fn, n, rho, calls=20000):
    t0 = time.perf_counter()
    for _ in range(calls):
        fn(n, -1, rho, 1.234)
    return (time.perf_counter() - t0) / calls


def main():
    size = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    ys = np.geomspace(1e-6, 1e6, size)
    print(f"active backend: {kernels.BACKEND}; grid size {size}")
    print("grid sweeps:")
    for n, rho in ((1, 0.8), (3, 0.3), (100, 0.5)):
        tc, oc = bench_grid(kernels.f_grid, n, rho, ys)
        tp, op = bench_grid(_kernels_py.f_grid, n, rho, ys)
        same = np.allclose(oc, op, rtol=1e-12, atol=1e-12)
        print(f"  n={n:3d} rho={rho}: active {tc * 1e3:7.2f} ms  "
              f"python {tp * 1e3:7.2f} ms  speedup {tp / tc:5.1f}x  "
              f"agree={same}")
    print("scalar calls (root-polish hot path):")
    for n, rho in ((1, 0.8), (3, 0.3)):
        tc = bench_scalar(kernels.f_scalar, n, rho)
        tp = bench_scalar(_kernels_py.f_scalar, n, rho)
        print(f"  n={n:3d} rho={rho}: active {tc * 1e6:6.3f} us  "
              f"python {tp * 1e6:6.3f} us  speedup {tp / tc:5.1f}x")


if __name__ == "__main__":
    main()
