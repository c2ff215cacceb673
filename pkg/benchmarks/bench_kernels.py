#!/usr/bin/env python3
"""Benchmark the two counting kernels: numba @njit vs pure numpy.

Times the itemset support counter and the split contingency counter on
inputs shaped like a scaled-up mining run.  The numba path is warmed up
first so JIT compilation never lands in a timed sample.

    python3 benchmarks/bench_kernels.py [--repeats 7]

Force one path for the whole process with EVALMINE_BACKEND=numpy|numba.
"""

from __future__ import annotations

import argparse
from time import perf_counter

import numpy as np

from evalmine import _backend


def median_time(fn, *args, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        t0 = perf_counter()
        fn(*args)
        samples.append(perf_counter() - t0)
    return float(np.median(samples))


def bench_support_counting(repeats: int) -> None:
    rng = np.random.Generator(np.random.PCG64(1))
    print("itemset support counting (transactions x items, candidates x k)")
    for n, d, c, k in [(5_820, 18, 100, 3), (50_000, 60, 400, 3), (200_000, 120, 800, 4)]:
        presence = rng.random((n, d)) < 0.25
        candidates = rng.integers(0, d, (c, k)).astype(np.int64)
        rows = [f"  {n:>7} x {d:<3}  {c:>4} x {k}"]
        t_np = median_time(_backend.count_candidates_numpy, presence, candidates,
                           repeats=repeats)
        rows.append(f"numpy {t_np * 1e3:8.2f} ms")
        if _backend.BACKEND == "numba":
            _backend.count_candidates(presence, candidates)  # warmup
            t_nb = median_time(_backend.count_candidates, presence, candidates,
                               repeats=repeats)
            rows.append(f"numba {t_nb * 1e3:8.2f} ms")
            rows.append(f"speedup {t_np / t_nb:5.2f}x")
        print("  ".join(rows))


def bench_split_counting(repeats: int) -> None:
    rng = np.random.Generator(np.random.PCG64(2))
    print("split contingency counting (rows x attrs)")
    for n, a, maxv in [(5_820, 14, 4), (100_000, 16, 4), (500_000, 30, 13)]:
        codes = rng.integers(0, maxv, (n, a)).astype(np.uint8)
        y = rng.integers(0, 2, n).astype(np.uint8)
        rows = [f"  {n:>7} x {a:<3}"]
        t_np = median_time(_backend.value_class_counts_numpy, codes, y, maxv, 2,
                           repeats=repeats)
        rows.append(f"numpy {t_np * 1e3:8.2f} ms")
        if _backend.BACKEND == "numba":
            _backend.value_class_counts(codes, y, maxv, 2)  # warmup
            t_nb = median_time(_backend.value_class_counts, codes, y, maxv, 2,
                               repeats=repeats)
            rows.append(f"numba {t_nb * 1e3:8.2f} ms")
            rows.append(f"speedup {t_np / t_nb:5.2f}x")
        print("  ".join(rows))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()
    print(f"active backend: {_backend.BACKEND}")
    bench_support_counting(args.repeats)
    bench_split_counting(args.repeats)


if __name__ == "__main__":
    main()
