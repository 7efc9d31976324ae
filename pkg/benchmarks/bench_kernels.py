"""Compare the compiled and numpy kernel backends.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. Each kernel is
timed on the same random inputs for both backends and results are checked
for equality before timing.
"""
import argparse
import timeit

import numpy as np

from ahdepth import _kernels_py as py
from ahdepth import kernels
from ahdepth.depth import DepthTable
from ahdepth.sphere import SphericalDataset, fibonacci_sphere


def cases(rng):
    Q = fibonacci_sphere(20000)
    R = rng.standard_normal((3000, 3))
    vals = rng.integers(0, 100, len(R))
    P = rng.standard_normal((2000, 3))
    c = rng.integers(1, 4, len(P))
    W = rng.integers(0, 1000, 5000)
    lo = rng.integers(0, len(W), 200000)
    ln = rng.integers(1, len(W) + 1, 200000)
    return {
        "ray_min 20000x3000": lambda k: k.ray_min(Q, R, vals, 1e-9)[0],
        "halfspace_counts 2000x3000": lambda k: k.halfspace_counts(P, c, R, 1e-9)[0],
        "range_min 200000 windows": lambda k: k.range_min(W, lo, ln),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if kernels.compiled is None:
        print("compiled extension not built; only the numpy backend is timed")
    backends = [("numpy", py)] + ([("cython", kernels.compiled)] if kernels.compiled else [])
    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name, _ in backends) + "     speedup")
    for label, fn in cases(rng).items():
        ref = fn(py)
        times = []
        for _, k in backends:
            assert np.array_equal(fn(k), ref), f"backends disagree on {label}"
            times.append(min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)))
        speed = f"{times[0] / times[1]:10.1f}x" if len(times) == 2 else ""
        print(f"{label:<28}" + "".join(f"{t:11.4f}s" for t in times) + speed)
    data = SphericalDataset.from_points(rng.standard_normal((150, 3)))
    t = min(timeit.repeat(lambda: DepthTable(data), number=1, repeat=args.repeat))
    print(f"\nDepthTable build, n=150, active backend {kernels.BACKEND}: {t:.3f}s")


if __name__ == "__main__":
    main()
