"""Hirzebruch-Jung continued fractions, continuants and rank sequences.

All expansions use the minus-sign convention

    n/q = d_1 - 1/(d_2 - 1/(... - 1/d_m)),   d_i >= 2,

so that the terms are the negated self-intersections of the exceptional
curves in the minimal resolution of 1/n(1, q).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateExpansion, InvalidInput


@dataclass(frozen=True)
class HJExpansion:
    numerator: int
    denominator: int
    terms: tuple[int, ...]

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def length(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class RankSequence:
    """r_0, ..., r_m with r_0 = 1 and r_{i+1} = d_{i+1} r_i - r_{i-1}."""

    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    @property
    def last(self) -> int:
        return self.values[-1]


def require_terms(terms: Sequence[int], minimum: int = 2) -> tuple[int, ...]:
    out = tuple(int(d) for d in terms)
    bad = [d for d in out if d < minimum]
    if bad:
        raise InvalidInput(
            f"continued fraction terms must be >= {minimum}",
            details={"terms": list(out), "offending": bad},
        )
    return out


def hj_expand(numerator: int, denominator: int) -> HJExpansion:
    """Expand numerator/denominator with the ceiling-division recurrence."""
    if numerator < 2:
        raise InvalidInput(
            f"numerator must be >= 2, got {numerator}",
            details={"numerator": numerator, "denominator": denominator},
        )
    if denominator <= 0 or denominator >= numerator:
        raise InvalidInput(
            f"denominator must satisfy 1 <= q < n, got {numerator}/{denominator}",
            details={"numerator": numerator, "denominator": denominator},
        )
    if gcd(numerator, denominator) != 1:
        raise InvalidInput(
            f"{numerator} and {denominator} are not coprime",
            details={"numerator": numerator, "denominator": denominator},
        )

    terms: list[int] = []
    num, den = numerator, denominator
    while den:
        d = -(-num // den)
        terms.append(d)
        num, den = den, d * den - num
    return HJExpansion(numerator=numerator, denominator=denominator, terms=tuple(terms))


def hj_evaluate(terms: Sequence[int]) -> Fraction:
    """Evaluate d_1 - 1/(d_2 - ...) exactly.

    Terms >= 1 are accepted so the function can serve as an oracle; a zero
    intermediate denominator raises DegenerateExpansion.
    """
    values = require_terms(terms, minimum=1)
    if not values:
        raise InvalidInput("cannot evaluate an empty expansion")
    acc = Fraction(values[-1])
    for position in range(len(values) - 2, -1, -1):
        if acc == 0:
            raise DegenerateExpansion(
                "zero denominator while evaluating expansion",
                details={"terms": list(values), "position": position + 1},
            )
        acc = values[position] - 1 / acc
    return acc


def continuant(terms: Sequence[int]) -> int:
    """Determinant of the tridiagonal matrix with ``terms`` on the diagonal.

    The empty list has continuant 1.
    """
    prev, cur = 0, 1
    for d in terms:
        prev, cur = cur, int(d) * cur - prev
    return cur


def rank_sequence(terms: Sequence[int]) -> RankSequence:
    """Leading continuants 1, K(d_1), K(d_1, d_2), ..."""
    values = require_terms(terms)
    ranks = [1]
    prev = 0
    for d in values:
        prev, cur = ranks[-1], d * ranks[-1] - prev
        ranks.append(cur)
    return RankSequence(values=tuple(ranks))


def dual_terms(numerator: int, denominator: int) -> tuple[int, ...]:
    """Terms of numerator/(numerator - denominator)."""
    return hj_expand(numerator, numerator - denominator).terms
