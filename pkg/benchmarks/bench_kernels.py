"""Benchmark: compiled kernels vs numpy fallback.

Times the two hot kernels (Pareto masking and non-dominated ranking) on
inputs shaped like the real workloads: oracle-scale 2-objective masking and
population-scale ranking. Results are verified equal before timing.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from paretoplace._kernels import fallback

try:
    from paretoplace._kernels import _native as native
except ImportError:
    native = None


def timeit(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(name, fn_name, objs):
    fb = getattr(fallback, fn_name)
    row = f"{name:<38}"
    t_fb = timeit(fb, objs)
    row += f" fallback {t_fb * 1e3:9.2f} ms"
    if native is not None:
        nt = getattr(native, fn_name)
        assert np.array_equal(nt(objs), fb(objs)), "kernel outputs diverge"
        t_nt = timeit(nt, objs)
        row += f"   native {t_nt * 1e3:9.2f} ms   speedup {t_fb / t_nt:6.1f}x"
    else:
        row += "   native not built"
    print(row)


def concave_front_cloud(rng, n):
    # Random points above a concave trade-off curve, like the oracle grid.
    x = rng.uniform(0, 1, n)
    y = np.sqrt(np.clip(1 - x**2, 0, 1)) + rng.uniform(0, 1, n)
    return np.stack([x, y], axis=1)


def main():
    rng = np.random.default_rng(0)
    print(f"native kernel available: {native is not None}\n")

    for n in (10_000, 100_000, 500_000):
        bench(f"pareto_mask  2 objectives  n={n:>7}", "pareto_mask", concave_front_cloud(rng, n))
    bench("pareto_mask  3 objectives  n=  20000", "pareto_mask", rng.uniform(0, 1, (20_000, 3)))
    print()
    for n in (200, 1_000, 3_000):
        bench(f"nd_ranks     2 objectives  n={n:>7}", "nd_ranks", rng.uniform(0, 1, (n, 2)))
    bench("nd_ranks     3 objectives  n=   1000", "nd_ranks", rng.uniform(0, 1, (1_000, 3)))


if __name__ == "__main__":
    main()
