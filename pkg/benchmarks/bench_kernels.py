#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Three workloads: cyclic Jacobi on random symmetric matrices, power
iteration on star-graph adjacencies (shifted by I), and the end-to-end
star sweep that dominates the verification suites.

Usage:
    python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from coxspec import branch_vectors, index_and_principal, make_star
from coxspec._kernels import _pykernels

try:
    from coxspec._kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_jacobi(impl, n, repeats):
    rng = np.random.default_rng(n)
    m = rng.normal(size=(n, n))
    a = (m + m.T) / 2
    return best_of(lambda: impl.jacobi_eigenvalues(a, 1e-12, 100), repeats)


def bench_power(impl, branches, repeats):
    g = make_star(branches)
    m = np.asarray(g.adjacency()) + np.eye(g.n)
    return best_of(lambda: impl.power_iteration(m, 1e-13, 10**6, 1e-11), repeats)


def bench_sweep(repeats):
    vectors = branch_vectors(4, 5)
    return best_of(
        lambda: [index_and_principal(make_star(v)) for v in vectors], repeats
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    impls = [("python", _pykernels)]
    if _ckernels is not None:
        impls.append(("compiled", _ckernels))
    else:
        print("compiled kernels unavailable; showing the fallback only")

    print(f"{'workload':<34} " + "".join(f"{name:>12} " for name, _ in impls) + "speedup")
    rows = []
    for n in (20, 60, 120):
        rows.append((f"jacobi n={n}", [bench_jacobi(impl, n, args.repeats) for _, impl in impls]))
    for branches in ((1, 1, 1), (1, 2, 6), (5, 5, 5, 5, 5, 5)):
        label = "power star " + ",".join(map(str, branches))
        rows.append((label, [bench_power(impl, branches, args.repeats) for _, impl in impls]))
    for label, times in rows:
        cells = "".join(f"{t * 1e3:>10.2f}ms " for t in times)
        speedup = f"{times[0] / times[-1]:>6.1f}x" if len(times) == 2 else "     -"
        print(f"{label:<34} {cells}{speedup}")

    # end-to-end: the selected backend (set COXSPEC_PURE_PYTHON=1 to compare)
    t = bench_sweep(max(1, args.repeats // 2))
    from coxspec._kernels import BACKEND

    print(f"\nstar sweep (125 graphs, {BACKEND} backend): {t * 1e3:.1f}ms")


if __name__ == "__main__":
    main()
