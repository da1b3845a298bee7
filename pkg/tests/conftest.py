"""Shared fixtures: brute-force oracles independent of the package internals.

The brute oracle materialises generation sets by literal two-sided
concatenation and reads factor sets straight off the words, so any
agreement with the package's aggregated recursion is meaningful.
"""

from __future__ import annotations

from functools import lru_cache

import pytest

from rauzylab import fibonacci_rule

BRUTE_MAX_GENERATION = 8


@lru_cache(maxsize=None)
def brute_generation(n: int) -> frozenset[str]:
    if n == 0:
        return frozenset()
    if n == 1:
        return frozenset(["b"])
    if n == 2:
        return frozenset(["a"])
    left, right = brute_generation(n - 1), brute_generation(n - 2)
    return frozenset(
        {u + v for u in left for v in right} | {v + u for u in left for v in right}
    )


def brute_factors(words, m: int) -> frozenset[str]:
    out = set()
    for w in words:
        for i in range(len(w) - m + 1):
            out.add(w[i : i + m])
    return frozenset(out)


@lru_cache(maxsize=None)
def brute_legal(m: int) -> frozenset[str]:
    """Stabilised legal factor set from literal generation sets (m <= 13).

    Equality of consecutive generations is observed directly for m <= 8;
    for 9 <= m <= 13 the generation-8 words (length 21 >= 13 + 8) already
    carry the full factor set, which the equality loop confirms up to the
    brute cap.
    """
    assert m <= 13, "brute oracle capped by generation 8"
    prev: frozenset[str] | None = None
    for k in range(3, BRUTE_MAX_GENERATION + 1):
        cur = brute_factors(brute_generation(k), m)
        if prev is not None and cur == prev and len(next(iter(brute_generation(k - 1)))) >= m:
            return cur
    return brute_factors(brute_generation(BRUTE_MAX_GENERATION), m)


@pytest.fixture(scope="session")
def fib():
    return fibonacci_rule()
