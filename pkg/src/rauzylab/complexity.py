"""Complexity, special factors and bispecial classification.

The complexity p(n) counts legal length-n factors; its first difference
s(n) = p(n+1) - p(n) equals the number of right (or left) special
factors on a binary alphabet.  Bispecial factors are classified by the
size of their legal corner set {(x, y) : xvy legal}: strong when all
four corners occur, weak when only two, neutral when three.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InvariantViolationError
from .oracle import legal_subwords
from .rules import RandomSubstitution
from .words import WordSet


def complexity(rule: RandomSubstitution, n: int) -> int:
    """p(n): the number of legal factors of length n."""
    return len(legal_subwords(rule, n))


def first_difference(rule: RandomSubstitution, n: int) -> int:
    """s(n) = p(n+1) - p(n)."""
    return complexity(rule, n + 1) - complexity(rule, n)


@dataclass(frozen=True)
class ExtensionTable:
    """Legal one-letter extensions of a factor on both sides."""

    word: str
    left: tuple[str, ...]
    right: tuple[str, ...]
    corners: tuple[tuple[str, str], ...]

    @property
    def is_right_special(self) -> bool:
        return len(self.right) >= 2

    @property
    def is_left_special(self) -> bool:
        return len(self.left) >= 2

    @property
    def is_bispecial(self) -> bool:
        return self.is_left_special and self.is_right_special

    @property
    def corner_count(self) -> int:
        return len(self.corners)


def extension_table(rule: RandomSubstitution, v: str) -> ExtensionTable:
    """Exact left/right/corner extension sets of a legal factor."""
    n = len(v)
    if v not in legal_subwords(rule, n):
        raise DomainError(f"{v!r} is not a legal factor")
    ext = legal_subwords(rule, n + 1)
    corner_set = legal_subwords(rule, n + 2)
    letters = rule.alphabet
    left = tuple(x for x in letters if x + v in ext)
    right = tuple(y for y in letters if v + y in ext)
    corners = tuple((x, y) for x in letters for y in letters if x + v + y in corner_set)
    table = ExtensionTable(word=v, left=left, right=right, corners=corners)
    if not table.corners:
        raise InvariantViolationError(f"legal factor {v!r} has no legal corner extension")
    for x, y in table.corners:
        if x not in left or y not in right:
            raise InvariantViolationError(f"corner ({x}, {y}) of {v!r} outside extension sets")
    return table


@dataclass(frozen=True)
class SpecialsReport:
    """Specials census for one factor length."""

    n: int
    p: int
    s: int
    right_specials: WordSet
    left_specials: WordSet
    bispecials: WordSet
    strong_count: int
    weak_count: int
    neutral_count: int


def specials_report(rule: RandomSubstitution, n: int) -> SpecialsReport:
    """Classify every legal length-n factor by its extension table.

    Raises if the census contradicts the binary counting identities
    (s(n) equals the number of right specials and of left specials);
    such a failure would signal a bug in the language oracle.
    """
    if n < 1:
        raise ValueError("length must be >= 1")
    words = legal_subwords(rule, n)
    p = len(words)
    s = first_difference(rule, n)
    rights, lefts, bis = [], [], []
    strong = weak = neutral = 0
    for v in words:
        table = extension_table(rule, v)
        if table.is_right_special:
            rights.append(v)
        if table.is_left_special:
            lefts.append(v)
        if table.is_bispecial:
            bis.append(v)
            if table.corner_count == 4:
                strong += 1
            elif table.corner_count == 2:
                weak += 1
            else:
                neutral += 1
    report = SpecialsReport(
        n=n,
        p=p,
        s=s,
        right_specials=WordSet.from_iterable(rights),
        left_specials=WordSet.from_iterable(lefts),
        bispecials=WordSet.from_iterable(bis),
        strong_count=strong,
        weak_count=weak,
        neutral_count=neutral,
    )
    if strong + weak + neutral != len(report.bispecials):
        raise InvariantViolationError("bispecial classification does not partition")
    if len(rule.alphabet) == 2:
        if len(report.right_specials) != s or len(report.left_specials) != s:
            raise InvariantViolationError(
                f"specials count mismatch at n={n}: "
                f"rs={len(report.right_specials)} ls={len(report.left_specials)} s={s}"
            )
    return report


def branching_excess(rule: RandomSubstitution, n: int) -> int:
    """Sum of (right extension count - 1) over legal length-n factors.

    Equals s(n) on any alphabet; reported rather than asserted for
    alphabets larger than two.
    """
    return sum(
        len(extension_table(rule, v).right) - 1 for v in legal_subwords(rule, n)
    )


def verify_bispecial_identity(rule: RandomSubstitution, n: int) -> bool:
    """Check s(n+1) - s(n) == strong(n) - weak(n) with enumerated counts."""
    report = specials_report(rule, n)
    lhs = first_difference(rule, n + 1) - first_difference(rule, n)
    return lhs == report.strong_count - report.weak_count


def verify_no_weak_bispecials(rule: RandomSubstitution, n: int) -> bool:
    """Check the two-sided extension property at length n.

    True iff every bispecial has at least three legal corners and every
    right (left) special admits a common left (right) extension letter.
    """
    words = legal_subwords(rule, n)
    letters = rule.alphabet
    for v in words:
        table = extension_table(rule, v)
        if table.is_bispecial and table.corner_count < 3:
            return False
        corners = set(table.corners)
        if table.is_right_special:
            if not any(all((x, y) in corners for y in table.right) for x in table.left):
                return False
        if table.is_left_special:
            if not any(all((x, y) in corners for x in table.left) for y in table.right):
                return False
    return True
