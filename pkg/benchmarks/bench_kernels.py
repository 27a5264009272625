#!/usr/bin/env python
"""Benchmark the candidate-scan kernel: numba @njit vs pure numpy.

Times the whole-dataset residual/norm pass at several n, prints a table
with the speedup, and cross-checks that both backends produce matching
numbers.  Run directly:

    python benchmarks/bench_kernels.py [--repeats 7]
"""

import argparse
import time

import numpy as np

from delpoint._kernels import scan_norms_numba, scan_norms_numpy


def best_of(fn, repeats, *args):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--dim", type=int, default=2)
    args = parser.parse_args()

    if scan_norms_numba is None:
        raise SystemExit("numba backend unavailable (DELPOINT_NUMBA=0 or "
                         "numba not importable); nothing to compare")

    rng = np.random.default_rng(0)
    sizes = (10_000, 100_000, 1_000_000)

    # warm up the JIT before timing
    Xw = rng.normal(size=(1000, args.dim))
    scan_norms_numba(Xw, rng.normal(size=1000), rng.normal(size=args.dim),
                     rng.normal(size=args.dim))

    print(f"{'n':>10} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for n in sizes:
        X = np.ascontiguousarray(rng.normal(size=(n, args.dim)))
        y = rng.normal(size=n)
        w = rng.normal(size=args.dim)
        g = rng.normal(size=args.dim)

        a_numer, a_fnorm = scan_norms_numpy(X, y, w, g)
        b_numer, b_fnorm = scan_norms_numba(X, y, w, g)
        np.testing.assert_allclose(b_numer, a_numer, rtol=1e-12)
        np.testing.assert_allclose(b_fnorm, a_fnorm, rtol=1e-12)

        t_np = best_of(scan_norms_numpy, args.repeats, X, y, w, g)
        t_nb = best_of(scan_norms_numba, args.repeats, X, y, w, g)
        print(f"{n:>10} {t_np * 1e3:>10.3f}ms {t_nb * 1e3:>10.3f}ms"
              f" {t_np / t_nb:>8.2f}x")


if __name__ == "__main__":
    main()
