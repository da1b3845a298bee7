"""Benchmark the exact-rank kernel backends on real stage matrices.

Times the numba kernel against the pure-numpy fallback (and, on the
smaller inputs, the arbitrary-precision path) over the matrices the
package actually ranks: coboundaries and pullback/coboundary blocks of
the stage tower.

Usage:  python benchmarks/bench_kernels.py [--max-n N] [--repeat R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from rauzylab import fibonacci_rule
from rauzylab.cohomology import coboundary_matrix, pullback_matrices
from rauzylab.kernels import HAVE_NUMBA, _bareiss_rank_bigint, rank_int64
from rauzylab.rauzy import build_rauzy, projection


def time_backend(label, fn, arr, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        work = arr.copy()
        start = time.perf_counter()
        result = fn(work)
        best = min(best, time.perf_counter() - start)
    return label, result, best


def collect_cases(max_n):
    rule = fibonacci_rule()
    cases = []
    for n in range(2, max_n + 1):
        g = build_rauzy(rule, n)
        d = np.array(coboundary_matrix(g).entries, dtype=np.int64)
        cases.append((f"coboundary stage {n} ({d.shape[0]}x{d.shape[1]})", d))
    for n in range(2, max_n):
        proj = projection(rule, n)
        _, m1 = pullback_matrices(proj)
        d = coboundary_matrix(proj.source)
        block = np.array(m1.hstack(d).entries, dtype=np.int64)
        cases.append((f"edge-pullback block stage {n} ({block.shape[0]}x{block.shape[1]})", block))
    return cases


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--bigint-limit", type=int, default=120,
                        help="skip the bigint timing above this many rows")
    args = parser.parse_args()

    if HAVE_NUMBA:
        # trigger compilation outside the timed region
        rank_int64(np.eye(4, dtype=np.int64), backend="numba")

    print(f"{'case':<44} {'rank':>5} {'numba':>10} {'numpy':>10} {'bigint':>10} {'ratio':>7}")
    for label, arr in collect_cases(args.max_n):
        rows = []
        if HAVE_NUMBA:
            rows.append(time_backend("numba", lambda a: rank_int64(a, "numba"), arr, args.repeat))
        rows.append(time_backend("numpy", lambda a: rank_int64(a, "numpy"), arr, args.repeat))
        if arr.shape[0] <= args.bigint_limit:
            rows.append(
                time_backend("bigint", lambda a: _bareiss_rank_bigint(a.tolist()), arr, args.repeat)
            )
        ranks = {r for _, r, _ in rows}
        assert len(ranks) == 1, f"backend disagreement on {label}: {ranks}"
        timings = {lbl: t for lbl, _, t in rows}
        numba_t = timings.get("numba")
        numpy_t = timings["numpy"]
        bigint_t = timings.get("bigint")
        ratio = f"{numpy_t / numba_t:6.1f}x" if numba_t else "    n/a"
        numba_col = f"{numba_t * 1e3:8.2f}ms" if numba_t is not None else "       -"
        bigint_col = f"{bigint_t * 1e3:8.2f}ms" if bigint_t is not None else "       -"
        print(f"{label:<44} {ranks.pop():>5} {numba_col} {numpy_t * 1e3:8.2f}ms {bigint_col} {ratio}")


if __name__ == "__main__":
    main()
