"""Exact rational matrices.

Entries are Python ints or Fractions (ints wherever the denominator is
1, which keeps the common 0/±1 cochain matrices cheap).  Rank goes
through the integer kernels after clearing denominators row by row;
kernel bases and products stay in exact arithmetic throughout.  There is
no tolerance parameter anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import kernels

Rational = int | Fraction


def _normalize(value) -> Rational:
    if type(value) is int:
        return value
    f = Fraction(value)
    return int(f) if f.denominator == 1 else f


class RationalMatrix:
    """An immutable exact-arithmetic matrix."""

    __slots__ = ("rows", "cols", "entries", "_all_int", "_np64")

    def __init__(self, entries: Iterable[Iterable[Rational]]):
        grid = tuple(tuple(_normalize(x) for x in row) for row in entries)
        if grid and any(len(row) != len(grid[0]) for row in grid):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", len(grid[0]) if grid else 0)

    @classmethod
    def _build(cls, grid: tuple[tuple[Rational, ...], ...], all_int: bool | None = None) -> "RationalMatrix":
        """Internal constructor for rows already in normalized form."""
        self = object.__new__(cls)
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", len(grid[0]) if grid else 0)
        if all_int is not None:
            object.__setattr__(self, "_all_int", all_int)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls._build(tuple((0,) * cols for _ in range(rows)), all_int=True)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls._build(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), all_int=True
        )

    @classmethod
    def from_int_rows(cls, rows: Iterable[Iterable[int]]) -> "RationalMatrix":
        return cls._build(tuple(tuple(int(x) for x in row) for row in rows), all_int=True)

    from_int_array = from_int_rows

    def __getitem__(self, key: tuple[int, int]) -> Rational:
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_integer(self) -> bool:
        try:
            return self._all_int
        except AttributeError:
            flag = all(type(x) is int for row in self.entries for x in row)
            object.__setattr__(self, "_all_int", flag)
            return flag

    def max_abs(self) -> int:
        vals = (abs(x) for row in self.entries for x in row)
        return max(vals, default=0)

    def _int64(self) -> np.ndarray | None:
        """Cached int64 image, or None when entries do not fit the guard."""
        try:
            return self._np64
        except AttributeError:
            arr = None
            if self.is_integer() and self.rows and self.max_abs() <= kernels._GUARD:
                arr = np.array(self.entries, dtype=np.int64)
            object.__setattr__(self, "_np64", arr)
            return arr

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return RationalMatrix._build(
            tuple(a + b for a, b in zip(self.entries, other.entries)),
            all_int=self.is_integer() and other.is_integer(),
        )

    def transpose(self) -> "RationalMatrix":
        if not self.rows:
            return self
        return RationalMatrix._build(tuple(zip(*self.entries)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        # int64 fast path: exact provided no intermediate can overflow
        a, b = self._int64(), other._int64()
        if a is not None and b is not None:
            bound = self.cols * max(int(np.abs(a).max(initial=0)), 1) * max(
                int(np.abs(b).max(initial=0)), 1
            )
            if bound < (1 << 62):
                return RationalMatrix.from_int_rows((a @ b).tolist())
        cols = list(zip(*other.entries)) if other.entries else []
        return RationalMatrix(
            [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in self.entries]
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shapes differ")
        return RationalMatrix(
            [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def _integer_rows(self) -> list[list[int]]:
        """Row-scaled copy with all denominators cleared (rank-preserving)."""
        if self.is_integer():
            return [list(row) for row in self.entries]
        out = []
        for row in self.entries:
            denom = lcm(*(x.denominator for x in row if type(x) is not int), 1)
            out.append([int(x * denom) for x in row])
        return out

    def rank(self, backend: str | None = None) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return _cached_rank(self, backend)

    def column_rank_full(self) -> bool:
        return self.rank() == self.cols

    def kernel_basis(self) -> tuple[tuple[Rational, ...], ...]:
        """A basis of the right null space, via exact Gauss-Jordan."""
        rows = [[Fraction(x) for x in row] for row in self.entries]
        n, m = self.rows, self.cols
        pivots: list[int] = []
        r = 0
        for c in range(m):
            if r >= n:
                break
            pivot = next((i for i in range(r, n) if rows[i][c] != 0), -1)
            if pivot < 0:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(n):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        free = [c for c in range(m) if c not in pivots]
        basis = []
        for c in free:
            vec: list[Rational] = [0] * m
            vec[c] = 1
            for r_idx, pc in enumerate(pivots):
                vec[pc] = _normalize(-rows[r_idx][c])
            basis.append(tuple(vec))
        return tuple(basis)


@lru_cache(maxsize=32)
def _cached_rank(matrix: RationalMatrix, backend: str | None) -> int:
    arr = matrix._int64()
    if arr is not None:
        result = kernels.rank_int64(arr.copy(), backend)
        if result != kernels.OVERFLOW:
            return result
    return kernels.exact_integer_rank(matrix._integer_rows(), backend=backend)


def rank_of_rows(rows: Sequence[Sequence[Rational]], backend: str | None = None) -> int:
    return RationalMatrix(rows).rank(backend=backend)
