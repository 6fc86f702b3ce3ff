"""Benchmark the Bartlett sampling kernel: compiled extension vs numpy
fallback.

Usage: python benchmarks/bench_sampling.py [n_samples]
"""

import sys
import time

import numpy as np

from klwishart import _kernels, pdcore
from klwishart.wishart import WishartParams, sample_wishart_batch


def bench(d: int, nu: float, n: int, repeats: int = 5):
    rng = np.random.default_rng(0)
    a = rng.standard_normal((d, d))
    w = WishartParams(scale_inv=pdcore.make_pd(a @ a.T + d * np.eye(d)), shape=nu)
    L = np.linalg.cholesky(w.scale().entries)
    tdiag = np.sqrt(rng.gamma(shape=(nu - np.arange(d)) / 2.0, scale=2.0, size=(n, d)))
    offd = rng.standard_normal((n, d * (d - 1) // 2))

    timings = {}
    for label, fn in [
        ("numpy", _kernels._batch_bartlett_numpy),
        ("cython", _kernels._ext.batch_bartlett if _kernels._ext else None),
    ]:
        if fn is None:
            timings[label] = None
            continue
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            if label == "cython":
                out = np.empty((n, d, d))
                fn(np.ascontiguousarray(L), tdiag, offd, out)
            else:
                out = fn(L, tdiag, offd)
            best = min(best, time.perf_counter() - start)
        timings[label] = best
    return timings


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'d':>3} {'nu':>6} {'n':>8} {'numpy [ms]':>12} {'cython [ms]':>12} {'speedup':>8}")
    for d in (2, 3, 5, 10):
        nu = d + 2.5
        t = bench(d, nu, n)
        np_ms = t["numpy"] * 1e3
        if t["cython"] is not None:
            cy_ms = t["cython"] * 1e3
            print(f"{d:>3} {nu:>6.1f} {n:>8} {np_ms:>12.2f} {cy_ms:>12.2f} {np_ms / cy_ms:>7.1f}x")
        else:
            print(f"{d:>3} {nu:>6.1f} {n:>8} {np_ms:>12.2f} {'n/a':>12} {'n/a':>8}")

    # end-to-end draw including random generation
    rng = np.random.default_rng(1)
    w = WishartParams(scale_inv=pdcore.make_pd(np.eye(3)), shape=6.5)
    start = time.perf_counter()
    sample_wishart_batch(w, n, rng)
    print(f"\nend-to-end {n} draws (d=3, {_kernels.BACKEND}): "
          f"{(time.perf_counter() - start) * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
