"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from mebgeom import _kernels


def _cases(rng):
    pts2k = rng.standard_normal((2000, 3))
    dirs = rng.standard_normal((4000, 3))
    small = rng.uniform(-1, 1, (22, 4))
    order = rng.permutation(2000).astype(np.int64)
    return {
        "pairwise_extremes n=2000 d=3": lambda k: k.pairwise_extremes(pts2k),
        "first_outside n=2000": lambda k: k.first_outside(pts2k, order, 0, 2000, np.zeros(3), 3.5),
        "directional_extents 4000 dirs": lambda k: k.directional_extents(pts2k, dirs),
        "best_support_ball n=22 d=4 k=5": lambda k: k.best_support_ball(small, 5, 1e-9, 1e-10, 1e-12, 1e-12),
        "max_barycentric_radius n=22 k=5": lambda k: k.max_barycentric_radius(small, 5, 1e-9),
    }


def _time(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = _kernels.backends()
    cases = _cases(np.random.default_rng(0))
    print(f"{'kernel':36s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>8s}")
    for name, call in cases.items():
        times = {}
        for label, mod in backends.items():
            call(mod)  # compile / warm caches
            times[label] = _time(lambda: call(mod), args.repeat) * 1e3
        nb = times.get("numba", float("nan"))
        print(f"{name:36s} {times['numpy']:12.3f} {nb:12.3f} {times['numpy'] / nb:8.1f}x")


if __name__ == "__main__":
    main()
