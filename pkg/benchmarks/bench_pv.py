#!/usr/bin/env python3
"""Benchmark the principal-value quadrature backends.

Times the compiled kernel (when built) against the NumPy direct-convolution
fallback on the workloads the toolkit actually runs: compactly supported
wavelets on wide grids, plus a dense (nowhere-zero) signal as the worst
case.  Also cross-checks that both backends produce the same numbers.

Usage: python benchmarks/bench_pv.py [--repeats N]
"""

import argparse
import time

import numpy as np

from hwl import _pv_numpy
from hwl.hilbert import PV_BACKEND
from hwl.numerics import Grid
from hwl.wavelets import make_haar_wavelet, make_spline_wavelet, sample

try:
    from hwl import _pv_ext
except ImportError:
    _pv_ext = None


def run_numpy(values: np.ndarray) -> np.ndarray:
    return _pv_numpy.pv_sum(values)


def run_compiled(values: np.ndarray, threads: int = 1) -> np.ndarray:
    from hwl.hilbert import _reciprocal_kernel

    out = np.zeros(len(values))
    nz = np.flatnonzero(values)
    if nz.size:
        kernel = _reciprocal_kernel(len(values))
        _pv_ext.pv_sum(values, kernel, out, int(nz[0]), int(nz[-1]), threads)
    return out


def time_call(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    step = 2.0 ** -8
    grid = lambda a, b: Grid(a, step, int(round((b - a) / step)) + 1)
    g64 = grid(-64.0, 64.0)
    g32 = grid(-32.0, 32.0)
    yield "haar on [-64,64] (support 512 of 32769)", sample(make_haar_wavelet(), g64).values
    yield "cubic wavelet on [-32,32] (support 1793 of 16385)", sample(
        make_spline_wavelet(3), g32).values
    rng = np.random.default_rng(0)
    yield "dense noise on [-16,16] (8193 of 8193)", rng.normal(size=8193)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    print(f"active backend: {PV_BACKEND}")
    header = f"{'workload':<50} {'numpy':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, values in workloads():
        t_np = time_call(run_numpy, values, repeats=args.repeats)
        if _pv_ext is not None:
            t_c = time_call(run_compiled, values, args.threads, repeats=args.repeats)
            a, b = run_numpy(values), run_compiled(values, args.threads)
            drift = np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300)
            print(f"{name:<50} {t_np * 1e3:>8.1f}ms {t_c * 1e3:>8.1f}ms "
                  f"{t_np / t_c:>7.1f}x   (agree to {drift:.1e})")
        else:
            print(f"{name:<50} {t_np * 1e3:>8.1f}ms {'n/a':>10} {'n/a':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
