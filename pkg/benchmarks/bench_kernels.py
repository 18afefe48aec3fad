#!/usr/bin/env python3
"""Compare the numba and pure-numpy backends of twistderiv.kernels.

Usage:
    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are called directly, so the TWISTDERIV_PURE_NUMPY flag does
not matter here.  The first numba call pays JIT compilation (or a cache
load); it is timed separately.
"""
import argparse
import time

import numpy as np

from twistderiv import kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads():
    rng = np.random.default_rng(0)
    n = 2_000_000
    xs = [rng.integers(-10**4, 10**4, n) for _ in range(4)]
    yield "leibniz d=-7, 2e6 samples", lambda be: be["leibniz"](-7, 1, 0, 3, -4, *xs)
    # every (α, β) of the d=11 acceptance box against a ±50 witness grid
    box = np.arange(-66, 67, dtype=np.int64)
    al, bt = np.repeat(box, box.size), np.tile(box, box.size)
    yield "inner search d=11, 17689 targets, 101² grid", lambda be: be["inner"](11, 0, -2, al, bt, 50)
    al5, bt5 = np.repeat(np.arange(-30, 31), 61), np.tile(np.arange(-30, 31), 61)
    yield "inner search d=5, 3721 targets, 101² grid", lambda be: be["inner"](5, 1, -2, al5, bt5, 50)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()

    numpy_be = {"leibniz": kernels.leibniz_batch_numpy, "inner": kernels.inner_search_numpy}
    if kernels.njit is None:
        print("numba is not installed; timing numpy only")
        numba_be = None
    else:
        numba_be = {"leibniz": kernels.leibniz_batch_numba, "inner": kernels.inner_search_numba}

    print(f"{'workload':48s} {'numpy':>10s} {'numba':>10s} {'first':>10s} {'speedup':>8s}")
    for name, run in workloads():
        t_np = best_of(lambda: run(numpy_be), args.repeat)
        if numba_be is None:
            print(f"{name:48s} {t_np:10.4f}")
            continue
        t0 = time.perf_counter()
        first = run(numba_be)
        t_first = time.perf_counter() - t0
        t_nb = best_of(lambda: run(numba_be), args.repeat)
        # the backends must agree before their timings mean anything
        ref = run(numpy_be)
        same = all(np.array_equal(a, b) for a, b in zip(np.atleast_2d(ref), np.atleast_2d(first)))
        flag = "" if same else "  MISMATCH"
        print(f"{name:48s} {t_np:10.4f} {t_nb:10.4f} {t_first:10.4f} {t_np / t_nb:7.1f}x{flag}")


if __name__ == "__main__":
    main()
