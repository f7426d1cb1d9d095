"""Numerical Grothendieck group of P^2.

A class is (rank, degree, ch2). The Euler pairing is Riemann-Roch on P^2:

    chi(x, y) = r_x r_y + 3/2 (r_x d_y - r_y d_x) + (r_x s_y + r_y s_x - d_x d_y).

chi = 0 is only the numerical shadow of RHom = 0; every orthogonality claim in
the reports below is numerical.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .errors import InvalidInput, InvariantViolation
from .markov import is_markov

Direction = Literal["left", "right"]


@dataclass(frozen=True)
class ChernP2:
    rank: int
    degree: int
    ch2: Fraction

    def __post_init__(self) -> None:
        # ch2 = d^2/2 - c2 with c2 integral, which keeps every Euler pairing integral.
        ch2 = Fraction(self.ch2)
        if (ch2 - Fraction(self.degree * self.degree, 2)).denominator != 1:
            raise InvalidInput(
                f"ch2 - degree^2/2 must be an integer, got ch2 = {ch2} for degree {self.degree}",
                details={"rank": self.rank, "degree": self.degree, "ch2": str(ch2)},
            )
        object.__setattr__(self, "ch2", ch2)

    @classmethod
    def line_bundle(cls, n: int) -> ChernP2:
        return cls(1, n, Fraction(n * n, 2))

    def __add__(self, other: ChernP2) -> ChernP2:
        return ChernP2(self.rank + other.rank, self.degree + other.degree, self.ch2 + other.ch2)

    def __neg__(self) -> ChernP2:
        return ChernP2(-self.rank, -self.degree, -self.ch2)

    def __sub__(self, other: ChernP2) -> ChernP2:
        return self + (-other)

    def scale(self, k: int) -> ChernP2:
        return ChernP2(k * self.rank, k * self.degree, k * self.ch2)

    def __mul__(self, other: ChernP2) -> ChernP2:
        """Tensor product of classes."""
        return ChernP2(
            self.rank * other.rank,
            self.rank * other.degree + other.rank * self.degree,
            self.rank * other.ch2 + other.rank * self.ch2 + self.degree * other.degree,
        )

    def dual(self) -> ChernP2:
        return ChernP2(self.rank, -self.degree, self.ch2)

    def twist(self, n: int) -> ChernP2:
        return self * ChernP2.line_bundle(n)

    @property
    def label(self) -> str:
        return f"({self.rank},{self.degree},{self.ch2})"


UNIT = ChernP2(1, 0, Fraction(0))


def euler_pairing(x: ChernP2, y: ChernP2) -> Fraction:
    return (
        x.rank * y.rank
        + Fraction(3, 2) * (x.rank * y.degree - y.rank * x.degree)
        + (x.rank * y.ch2 + y.rank * x.ch2 - x.degree * y.degree)
    )


@dataclass(frozen=True)
class NumericalCollection:
    members: tuple[ChernP2, ...]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(m.rank for m in self.members)

    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(euler_pairing(x, y) for y in self.members) for x in self.members)


def initial_collection() -> NumericalCollection:
    return NumericalCollection(tuple(ChernP2.line_bundle(n) for n in (-2, -1, 0)))


def mutate_pair(x: ChernP2, y: ChernP2, direction: Direction) -> ChernP2:
    """Left: chi(x, y) x - y replaces y before x. Right: chi(x, y) y - x replaces x after y."""
    chi = euler_pairing(x, y)
    if chi.denominator != 1:
        raise InvariantViolation(
            f"non-integral Euler pairing {chi} between {x.label} and {y.label}",
            details={"x": x.label, "y": y.label, "chi": str(chi)},
        )
    k = int(chi)
    if direction == "left":
        return x.scale(k) - y
    if direction == "right":
        return y.scale(k) - x
    raise InvalidInput(f"direction must be 'left' or 'right', got {direction!r}", details={"direction": direction})


def mutate_collection(c: NumericalCollection, index: int, direction: Direction) -> NumericalCollection:
    """Mutate the adjacent pair (e_index, e_index+1), 0-based."""
    if not 0 <= index < len(c) - 1:
        raise InvalidInput(
            f"pair index must be in [0, {len(c) - 2}], got {index}",
            details={"index": index, "length": len(c)},
        )
    members = list(c.members)
    x, y = members[index], members[index + 1]
    mutated = mutate_pair(x, y, direction)
    if direction == "left":
        members[index], members[index + 1] = mutated, x
    else:
        members[index], members[index + 1] = y, mutated
    return NumericalCollection(tuple(members))


def cyclic_twist(c: NumericalCollection) -> NumericalCollection:
    """(A, B, C) -> (C(-3), A, B)."""
    if len(c) != 3:
        raise InvalidInput(f"cyclic twist needs three members, got {len(c)}", details={"length": len(c)})
    a, b, last = c.members
    return NumericalCollection((last.twist(-3), a, b))


def dualize(c: NumericalCollection) -> NumericalCollection:
    return NumericalCollection(tuple(m.dual() for m in reversed(c.members)))


def twist(c: NumericalCollection, m: int) -> NumericalCollection:
    return NumericalCollection(tuple(x.twist(m) for x in c.members))


@dataclass(frozen=True)
class CollectionReport:
    """Numerical exceptionality and semi-orthogonality of a collection."""

    self_pairings: tuple[Fraction, ...]
    upper_gram: tuple[Fraction, ...]
    lower_violations: tuple[tuple[int, int, Fraction], ...]
    ranks: tuple[int, ...]
    markov: bool | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def collection_checks(c: NumericalCollection) -> CollectionReport:
    gram = c.gram()
    n = len(c)
    self_pairings = tuple(gram[i][i] for i in range(n))
    upper = tuple(gram[i][j] for i in range(n) for j in range(i + 1, n))
    lower = tuple((i, j, gram[i][j]) for i in range(n) for j in range(i) if gram[i][j] != 0)
    ranks = tuple(abs(r) for r in c.ranks)

    checks = {
        "numerically_exceptional": all(v == 1 for v in self_pairings),
        "numerically_semi_orthogonal": not lower,
    }
    markov: bool | None = None
    if n == 3:
        markov = is_markov(*ranks)
        checks["markov_ranks"] = markov
    return CollectionReport(
        self_pairings=self_pairings,
        upper_gram=upper,
        lower_violations=lower,
        ranks=ranks,
        markov=markov,
        checks=checks,
    )


def apply_word(c: NumericalCollection, word: Sequence[str]) -> list[NumericalCollection]:
    """Apply a mutation word; returns every intermediate collection including the start.

    Letters: ``L1``/``L2`` and ``R1``/``R2`` mutate the pair starting at
    position 1 or 2, ``C`` is the cyclic twist, ``D`` dualizes, ``T<m>``
    twists by O(m) (``T-1``, ``T2``).
    """
    out = [c]
    current = c
    for letter in word:
        token = letter.strip().upper()
        if token in ("L1", "L2", "R1", "R2"):
            direction: Direction = "left" if token[0] == "L" else "right"
            current = mutate_collection(current, int(token[1]) - 1, direction)
        elif token == "C":
            current = cyclic_twist(current)
        elif token == "D":
            current = dualize(current)
        elif token.startswith("T"):
            try:
                m = int(token[1:])
            except ValueError:
                raise InvalidInput(f"bad twist letter {letter!r}", details={"letter": letter}) from None
            current = twist(current, m)
        else:
            raise InvalidInput(f"unknown mutation letter {letter!r}", details={"letter": letter})
        out.append(current)
    return out
