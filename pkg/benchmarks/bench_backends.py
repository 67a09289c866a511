"""Timing comparison of the compiled kernel core against the numpy fallback.

Run:  python benchmarks/bench_backends.py
"""
import time

import numpy as np

from airyquench import _kernels_py
from airyquench._contour import Family, plan_legs

try:
    from airyquench import _kernels_cy
except ImportError:
    _kernels_cy = None

A6 = -9.022650853340980


def clock(fn, *args, repeat=3):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_airy(mod):
    x = np.linspace(-60.0, 20.0, 200000)
    return clock(mod.airy_ai_arr, x)[0]


def bench_faddeeva(mod):
    rng = np.random.default_rng(0)
    z = rng.uniform(0, 20, 200000) + 1j * rng.uniform(0, 10, 200000)
    return clock(mod.faddeeva_upper, z)[0]


def bench_direct(mod):
    rng = np.random.default_rng(1)
    src = rng.normal(size=4805) + 1j * rng.normal(size=4805)
    xo = np.linspace(-80.0, 90.0, 3000)
    return clock(mod.direct_sum, 0.0, 0.005, src, xo, 0.05, 0.0, False, 0.0, 0.25)[0]


def bench_contour(mod):
    total = 0.0
    for y in np.linspace(-60.0, 80.0, 40):
        fam = Family(float(y), 10.0, 1.0, A6, 1.0, 0.5)
        legs = np.asarray(plan_legs(fam)[0], dtype=float)
        t0 = time.perf_counter()
        mod.contour_sum(legs, 1.0, A6, 1.0, 0.5, 10.0, float(y))
        total += time.perf_counter() - t0
    return total


def main():
    rows = [("airy_ai_arr (200k pts)", bench_airy),
            ("faddeeva_upper (200k pts)", bench_faddeeva),
            ("direct_sum (3000x4805)", bench_direct),
            ("contour_sum (40 pts, t=10)", bench_contour)]
    print(f"{'kernel':<30} {'numpy':>10} {'cython':>10} {'speedup':>9}")
    for label, fn in rows:
        tp = fn(_kernels_py)
        if _kernels_cy is None:
            print(f"{label:<30} {tp:>9.3f}s {'n/a':>10}")
            continue
        tc = fn(_kernels_cy)
        print(f"{label:<30} {tp:>9.3f}s {tc:>9.3f}s {tp / tc:>8.1f}x")
    if _kernels_cy is None:
        print("compiled backend unavailable; build with `pip install -e .`")


if __name__ == "__main__":
    main()
