"""The factor language of a random substitution.

``legal_subwords`` computes F_m, the set of legal length-m factors, by a
stabilising finite procedure.  For the Fibonacci rule it follows the
generation-set recursion

    A_1 = {b},  A_2 = {a},  A_n = A_{n-1}A_{n-2} u A_{n-2}A_{n-1}

but aggregated: because the products are full Cartesian products, each
generation can be carried as (prefix set, suffix set, factor set)
without losing any length-m factor, since every suffix/prefix pair
across a product boundary genuinely occurs.  For all other rules a window-closure
iteration over inflations is used instead.  Both paths stop once two
consecutive generations agree (with word length at least m), which is
exact for the Fibonacci rule and cap-guarded otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import InvalidRuleError, InvalidWordError, NonConvergenceError
from .rules import RandomSubstitution, has_fibonacci_support
from .words import WordSet, factors, subwords

__all__ = [
    "fibonacci_number",
    "generation_set",
    "subwords",
    "legal_subwords",
    "is_legal",
    "verify_fibonacci_identity",
    "IdentityCheck",
    "DEFAULT_GENERATION_CAP",
]

#: upper bound on stabilisation generations before giving up
DEFAULT_GENERATION_CAP = 64

_generation_cap = DEFAULT_GENERATION_CAP


def set_default_generation_cap(cap: int) -> None:
    """Raise or lower the stabilisation cap used when none is passed."""
    global _generation_cap
    if cap < 3:
        raise ValueError("generation cap must be >= 3")
    _generation_cap = cap


#: largest generation index memoised by generation_set
GENERATION_MEMO_CAP = 22


@lru_cache(maxsize=None)
def fibonacci_number(n: int) -> int:
    """f_1 = f_2 = 1, f_n = f_{n-1} + f_{n-2}."""
    if n < 1:
        raise ValueError("index must be >= 1")
    if n <= 2:
        return 1
    return fibonacci_number(n - 1) + fibonacci_number(n - 2)


@dataclass(frozen=True)
class FibonacciIndex:
    """A Fibonacci index paired with its value under the convention above."""

    n: int
    value: int

    @classmethod
    def of(cls, n: int) -> "FibonacciIndex":
        return cls(n, fibonacci_number(n))


_generation_memo: dict[tuple[RandomSubstitution, int], WordSet] = {}


def generation_set(rule: RandomSubstitution, n: int) -> WordSet:
    """The exact set of generation-n inflated words (Fibonacci rule only).

    A_1 = {b}, A_2 = {a}; higher generations follow the two-sided
    concatenation recursion.  Sizes grow super-exponentially, so results
    are memoised only up to generation ``GENERATION_MEMO_CAP``.
    """
    if not has_fibonacci_support(rule):
        raise InvalidRuleError(
            "the generation recursion is specific to the Fibonacci rule; "
            "use all_inflations iteration for other rules"
        )
    if n < 0:
        raise ValueError("generation index must be >= 0")
    if n == 0:
        return WordSet(())
    key = (rule, n)
    cached = _generation_memo.get(key)
    if cached is not None:
        return cached
    if n == 1:
        result = WordSet.from_iterable(["b"])
    elif n == 2:
        result = WordSet.from_iterable(["a"])
    else:
        left, right = generation_set(rule, n - 1), generation_set(rule, n - 2)
        result = WordSet.from_iterable(
            [u + v for u in left for v in right] + [v + u for u in left for v in right]
        )
    if n <= GENERATION_MEMO_CAP:
        _generation_memo[key] = result
    return result


def _legal_subwords_fibonacci(m: int, cap: int) -> frozenset[str]:
    """Stabilised F(A_k, m) via the aggregated generation recursion."""
    k = m - 1
    # per generation: prefix set (length min(f_n, m-1)), suffix set, factor set
    pre = {1: {"b"}, 2: {"a"}}
    suf = {1: {"b"}, 2: {"a"}}
    fac: dict[int, set[str]] = {1: set(factors("b", m)), 2: set(factors("a", m))}
    flen = {1: 1, 2: 1}

    def prefixes(left: set[str], left_len: int, right: set[str]) -> set[str]:
        if k == 0:
            return set()
        if left_len >= k:
            return set(left)
        return {(u + v)[:k] for u in left for v in right}

    def suffixes(right: set[str], right_len: int, left: set[str]) -> set[str]:
        if k == 0:
            return set()
        if right_len >= k:
            return set(right)
        return {(u + v)[-k:] for u in left for v in right}

    for n in range(3, cap + 1):
        flen[n] = flen[n - 1] + flen[n - 2]
        crossing = fac[n - 1] | fac[n - 2]
        for tail_side, head_side in ((n - 1, n - 2), (n - 2, n - 1)):
            for s in suf[tail_side]:
                for p in pre[head_side]:
                    crossing.update(factors(s + p, m))
        pre[n] = prefixes(pre[n - 1], flen[n - 1], pre[n - 2]) | prefixes(
            pre[n - 2], flen[n - 2], pre[n - 1]
        )
        suf[n] = suffixes(suf[n - 2], flen[n - 2], suf[n - 1]) | suffixes(
            suf[n - 1], flen[n - 1], suf[n - 2]
        )
        fac[n] = crossing
        if n - 1 >= 4 and flen[n - 1] >= m and fac[n] == fac[n - 1]:
            return frozenset(fac[n])
    raise NonConvergenceError(f"factor sets did not stabilise within {cap} generations")


def _inflation_windows(rule: RandomSubstitution, v: str, m: int) -> set[str]:
    """Length-m factors of every realization of one inflation of ``v``.

    Realizations shorter than m contribute themselves whole.  States are
    deduplicated by (suffix, length), which is lossless for factor
    collection because emitted windows depend only on the suffix.
    """
    collected: set[str] = set()
    keep = max(m - 1, 1)
    states: set[tuple[str, int]] = {("", 0)}
    for ch in v:
        nxt: set[tuple[str, int]] = set()
        for s, total in states:
            for r in rule.realizations(ch):
                t = s + r
                for i in range(max(0, len(s) - m + 1), len(t) - m + 1):
                    collected.add(t[i : i + m])
                nxt.add((t[-keep:] if len(t) > keep else t, total + len(r)))
        states = nxt
    for s, total in states:
        if total < m:
            collected.add(s)
    return collected


def _legal_subwords_generic(rule: RandomSubstitution, m: int, cap: int) -> frozenset[str]:
    """Window-closure iteration for arbitrary rules."""
    windows: set[str] = {"b"} if "b" in rule.alphabet else {rule.alphabet[0]}
    for _ in range(cap):
        nxt: set[str] = set()
        for v in windows:
            nxt |= _inflation_windows(rule, v, m)
        if nxt == windows:
            return frozenset(w for w in windows if len(w) == m)
        windows = nxt
    raise NonConvergenceError(f"window sets did not stabilise within {cap} generations")


@lru_cache(maxsize=None)
def _legal_subword_set(rule: RandomSubstitution, m: int, cap: int) -> frozenset[str]:
    if has_fibonacci_support(rule):
        return _legal_subwords_fibonacci(m, cap)
    return _legal_subwords_generic(rule, m, cap)


def legal_subwords(
    rule: RandomSubstitution, m: int, generation_cap: int | None = None
) -> WordSet:
    """F_m: the set of legal length-m factors of the rule's language."""
    if m < 1:
        raise ValueError("factor length must be >= 1")
    cap = _generation_cap if generation_cap is None else generation_cap
    return WordSet.from_iterable(_legal_subword_set(rule, m, cap))


def is_legal(rule: RandomSubstitution, w: str) -> bool:
    """Whether ``w`` occurs as a factor of the language."""
    if not w:
        raise InvalidWordError("word must be nonempty")
    return w in _legal_subword_set(rule, len(w), _generation_cap)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of one generation-window identity check."""

    n: int
    window: int
    generation_size: int
    oracle_size: int
    equal: bool

    def __bool__(self) -> bool:
        return self.equal


def verify_fibonacci_identity(
    rule: RandomSubstitution,
    n: int,
    index_convention: Callable[[int], int] = fibonacci_number,
) -> IdentityCheck:
    """Check F(A_{n+1}, f_n) == F_{f_n} with exact generation sets.

    The index convention is a parameter so the one genuinely ambiguous
    choice stays auditable; the default is f_1 = f_2 = 1.
    """
    if n < 4:
        raise ValueError("the identity is asserted for n >= 4")
    window = index_convention(n)
    lhs = subwords(generation_set(rule, n + 1), window)
    rhs = legal_subwords(rule, window)
    return IdentityCheck(
        n=n,
        window=window,
        generation_size=len(lhs),
        oracle_size=len(rhs),
        equal=lhs.as_set() == rhs.as_set(),
    )
