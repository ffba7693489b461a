"""Numba kernels against their numpy/scipy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--grid 1024]

Both paths are called directly, so the comparison runs in one process; the
first numba call (compilation, or a cache load) is reported separately.
"""
import argparse
import time

import numpy as np

from disklab import kernels
from disklab._accel import HAVE_NUMBA
from disklab.slits import DomainGrid, SpiralDomain


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(grid_n):
    rng = np.random.default_rng(0)
    n = 40
    depths = 2.0 ** -np.arange(1, n + 1)
    angles = rng.uniform(0, 2 * np.pi, n)
    z = 0.999 * np.sqrt(rng.random(200_000)) * np.exp(2j * np.pi * rng.random(200_000))
    s = 2.0 ** -rng.uniform(0, 40, 200_000)
    theta = rng.uniform(0, 2 * np.pi, 200_000)
    thetas = np.linspace(0, 2 * np.pi, 65_536, endpoint=False)

    grid = DomainGrid(SpiralDomain("reciprocal"), grid_n)
    src, dist = grid.snap(0.75)
    dargs = (grid.allowed, grid.sheet, grid.h, src, dist)
    return [
        ("blaschke_values (200k pts, 40 zeros)",
         lambda: kernels._blaschke_nb(z, depths, angles), lambda: kernels._blaschke_np(z, depths, angles)),
        ("blaschke_values_polar (200k pts)",
         lambda: kernels._blaschke_polar_nb(s, theta, depths, angles),
         lambda: kernels._blaschke_polar_np(s, theta, depths, angles)),
        ("frostman_sums (65k angles)",
         lambda: kernels._frostman_nb(thetas, depths, angles), lambda: kernels._frostman_np(thetas, depths, angles)),
        (f"grid_dijkstra ({grid_n}^2 spiral grid)",
         lambda: kernels._grid_dijkstra_nb(*dargs), lambda: kernels._grid_dijkstra_scipy(*dargs)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--grid", type=int, default=1024)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba unavailable (or DISKLAB_NO_NUMBA set): only the fallback runs")
    print(f"{'kernel':44s} {'first nb':>9s} {'numba':>9s} {'numpy':>9s} {'speedup':>8s}")
    for name, f_nb, f_np in cases(args.grid):
        t_np = best_of(f_np, args.repeat)
        if HAVE_NUMBA:
            t0 = time.perf_counter()
            f_nb()
            first = time.perf_counter() - t0
            t_nb = best_of(f_nb, args.repeat)
            print(f"{name:44s} {first:9.3f} {t_nb:9.3f} {t_np:9.3f} {t_np / t_nb:7.1f}x")
        else:
            print(f"{name:44s} {'-':>9s} {'-':>9s} {t_np:9.3f} {'-':>8s}")


if __name__ == "__main__":
    main()
