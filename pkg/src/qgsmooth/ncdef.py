"""Numerical replay of the universal-extension construction on the resolution chain.

For r/a = [d_1, ..., d_m] the line bundles L_0, ..., L_m on the minimal
resolution have degrees a_{ij} = deg_{E_j}(L_i) on the exceptional curves.
G_0 = L_0 and G_{i+1} is the universal extension of G_i by L_{i+1}; only
ranks, Ext^1 dimensions, multiplicities and restriction degrees are tracked.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .cfrac import RankSequence, require_terms, hj_expand, rank_sequence
from .errors import InvalidInput, InvariantViolation
from .singularity import ClassTData, CyclicQuotient


@dataclass(frozen=True)
class DegMatrix:
    """Rows i = 0..m, columns j = 1..m (stored 0-based as j - 1)."""

    terms: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.rows)


@dataclass(frozen=True)
class ExtensionLadder:
    terms: tuple[int, ...]
    ranks: RankSequence
    ext_dims: tuple[int, ...]
    multiplicities: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.ranks.last


@dataclass(frozen=True)
class DescentReport:
    terms: tuple[int, ...]
    column_sums: tuple[int, ...]
    total_rank: int
    expected_rank: int

    @property
    def ok(self) -> bool:
        return all(v == 0 for v in self.column_sums) and self.total_rank == self.expected_rank


def _degree(d: Sequence[int], i: int, j: int) -> int:
    if j < i:
        return 0
    if j == i:
        return -1
    if j == i + 1:
        return d[j - 1] - 1
    return d[j - 1] - 2


def deg_matrix(d: Sequence[int]) -> DegMatrix:
    terms = require_terms(d)
    m = len(terms)
    rows = tuple(
        tuple(_degree(terms, i, j) for j in range(1, m + 1))
        for i in range(m + 1)
    )
    return DegMatrix(terms=terms, rows=rows)


def extension_ladder(d: Sequence[int]) -> ExtensionLadder:
    terms = require_terms(d)
    ranks = rank_sequence(terms)
    r = ranks.values
    m = len(terms)

    ext_dims: list[int] = []
    for i in range(m):
        by_rank = r[i + 1] - r[i]
        prev = r[i - 1] if i > 0 else 0
        by_restriction = prev * (terms[i] - 2) + (r[i] - prev) * (terms[i] - 1)
        if by_rank != by_restriction:
            raise InvariantViolation(
                f"Ext^1 dimension mismatch at step {i}",
                details={"terms": list(terms), "step": i, "by_rank": by_rank, "by_restriction": by_restriction},
            )
        ext_dims.append(by_rank)

    multiplicities = (1,) + tuple(r[i] - r[i - 1] for i in range(1, m + 1))
    return ExtensionLadder(
        terms=terms,
        ranks=ranks,
        ext_dims=tuple(ext_dims),
        multiplicities=multiplicities,
    )


def ladder_for_singularity(r: int, a: int) -> ExtensionLadder:
    """Ladder for 1/r(1, a) using r/a = [d_1, ..., d_m]."""
    return extension_ladder(hj_expand(r, a).terms)


def splitting_type(d: Sequence[int], i: int, j: int) -> tuple[tuple[int, int], ...]:
    """Splitting type of G_i restricted to E_j as sorted (degree, multiplicity) pairs."""
    terms = require_terms(d)
    m = len(terms)
    if not 0 <= i <= m or not 1 <= j <= m:
        raise InvalidInput(
            f"need 0 <= i <= {m} and 1 <= j <= {m}; got i={i}, j={j}",
            details={"terms": list(terms), "i": i, "j": j},
        )
    ladder = extension_ladder(terms)
    if j <= i:
        return ((0, ladder.ranks[i]),)

    merged: dict[int, int] = {}
    for k in range(i + 1):
        degree = _degree(terms, k, j)
        merged[degree] = merged.get(degree, 0) + ladder.multiplicities[k]
    return tuple(sorted(merged.items()))


def column_sums(d: Sequence[int], multiplicities: Sequence[int], upto: int) -> tuple[int, ...]:
    """sum_{i <= upto} n_i a_{ij} for every column j.

    Rows i < j - 1 all have degree d_j - 2 on E_j.
    """
    terms = require_terms(d)
    prefix = [0]
    for n_i in multiplicities:
        prefix.append(prefix[-1] + n_i)
    out = []
    for j in range(1, len(terms) + 1):
        head = max(0, min(upto, j - 2) + 1)
        total = prefix[head] * (terms[j - 1] - 2)
        if j - 1 <= upto:
            total += multiplicities[j - 1] * (terms[j - 1] - 1)
        if j <= upto:
            total -= multiplicities[j]
        out.append(total)
    return tuple(out)


def verify_descent(d: Sequence[int]) -> DescentReport:
    """Check that G_m restricts trivially to the fundamental cycle.

    Every column sum sum_i n_i a_{ij} must vanish and sum_i n_i must equal r.
    """
    terms = require_terms(d)
    ladder = extension_ladder(terms)
    n = ladder.multiplicities
    sums = column_sums(terms, n, len(terms))
    report = DescentReport(
        terms=terms,
        column_sums=sums,
        total_rank=sum(n),
        expected_rank=ladder.rank,
    )
    for j, value in enumerate(sums, start=1):
        if value != 0:
            raise InvariantViolation(
                f"fundamental cycle restriction is not trivial on E_{j}",
                details={"terms": list(terms), "column": j, "sum": value},
            )
    if report.total_rank != report.expected_rank:
        raise InvariantViolation(
            "multiplicities do not add up to the rank",
            details={"terms": list(terms), "total": report.total_rank, "rank": report.expected_rank},
        )
    return report


def versal_rank(t: ClassTData | CyclicQuotient) -> int:
    """Rank of the versal deformation: the order of the local group."""
    return t.order
