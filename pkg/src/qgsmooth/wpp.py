"""Weighted projective planes P(w_1, w_2, w_3) with pairwise coprime weights.

h^0(O(n)) is the number of monomials of weighted degree n. chi_divisorial
assumes H^1(O(n)) = 0, which holds on weighted projective spaces, and uses
Serre duality with omega = O(-(w_1 + w_2 + w_3)).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cfrac import hj_expand
from .errors import InvalidInput, InvariantViolation, NotClassT
from .kkalg import kk_dimension_for_singularity
from .ktheory import ChernP2, CollectionReport, NumericalCollection, collection_checks, euler_pairing
from .markov import BlockStructure, MarkovTriple, enumerate_tree
from .ncdef import ExtensionLadder, ladder_for_singularity
from .singularity import ClassTData, CyclicQuotient, class_t_decompose, normalize
from .smoothing import ConservationReport, dimension_conservation

logger = logging.getLogger(__name__)

Weights = tuple[int, int, int]


@dataclass(frozen=True)
class WeightedPlane:
    weights: Weights

    def __post_init__(self) -> None:
        w = tuple(int(x) for x in self.weights)
        if len(w) != 3 or min(w) < 1:
            raise InvalidInput(
                f"weights must be three positive integers, got {tuple(self.weights)}",
                details={"weights": list(self.weights)},
            )
        for i in range(3):
            for j in range(i + 1, 3):
                if gcd(w[i], w[j]) != 1:
                    raise InvalidInput(
                        f"weights {w[i]} and {w[j]} are not coprime",
                        details={"weights": list(w)},
                    )
        object.__setattr__(self, "weights", w)

    @classmethod
    def of(cls, w1: int, w2: int, w3: int) -> WeightedPlane:
        return cls((w1, w2, w3))

    @property
    def label(self) -> str:
        return "P({},{},{})".format(*self.weights)

    @property
    def canonical_degree(self) -> int:
        return -sum(self.weights)


@lru_cache(maxsize=65536)
def _monomial_count(weights: Weights, n: int) -> int:
    # Loop over the exponent of the heaviest variable; for each remainder the
    # solutions j of j w2 = rest (mod w1) form one residue class.
    w1, w2, w3 = sorted(weights)
    inverse = pow(w2, -1, w1)
    total = 0
    for k in range(n // w3 + 1):
        rest = n - k * w3
        top = rest // w2
        first = rest * inverse % w1
        if first <= top:
            total += (top - first) // w1 + 1
    return total


def hilbert(p: WeightedPlane, n: int) -> int:
    """Monomials x^i y^j z^k with i w_1 + j w_2 + k w_3 = n; zero for n < 0."""
    if n < 0:
        return 0
    return _monomial_count(p.weights, n)


def hilbert_coefficients(p: WeightedPlane, upto: int) -> list[int]:
    """Coefficients of 1/((1 - t^w_1)(1 - t^w_2)(1 - t^w_3)) up to t^upto."""
    coeffs = [1] + [0] * max(upto, 0)
    for w in p.weights:
        for n in range(w, len(coeffs)):
            coeffs[n] += coeffs[n - w]
    return coeffs


def chi_divisorial(p: WeightedPlane, n: int) -> int:
    """chi(O(n)) = h^0(O(n)) + h^0(O(-sum(w) - n))."""
    return hilbert(p, n) + hilbert(p, p.canonical_degree - n)


def canonical_degree_squared(p: WeightedPlane) -> Fraction:
    w1, w2, w3 = p.weights
    return Fraction((w1 + w2 + w3) ** 2, w1 * w2 * w3)


def singular_locus(p: WeightedPlane) -> list[tuple[int, CyclicQuotient]]:
    """Vertex P_i is of type 1/w_i(w_j, w_k); smooth vertices are omitted. Indices are 1-based."""
    out = []
    for i, w in enumerate(p.weights):
        if w == 1:
            continue
        others = tuple(x for k, x in enumerate(p.weights) if k != i)
        out.append((i + 1, normalize(CyclicQuotient(w, (others[0], others[1])))))
    return out


@dataclass(frozen=True)
class ResolutionPoint:
    vertex: int
    singularity: CyclicQuotient
    terms: tuple[int, ...]


@dataclass(frozen=True)
class ResolutionData:
    plane: WeightedPlane
    points: tuple[ResolutionPoint, ...]
    twisting_integer: int

    @property
    def collection_length(self) -> int:
        return 3 + sum(len(pt.terms) for pt in self.points)


def resolution_data(p: WeightedPlane) -> ResolutionData:
    """Exceptional chains over each singular point and the twisting integer m.

    m is the least positive integer with w_1 | m and m = 1 mod w_3.
    """
    points = tuple(
        ResolutionPoint(vertex=v, singularity=q, terms=hj_expand(q.order, q.weights[1]).terms)
        for v, q in singular_locus(p)
    )
    w1, _, w3 = p.weights
    k = pow(w1, -1, w3) if w3 > 1 else 1
    return ResolutionData(plane=p, points=points, twisting_integer=w1 * k)


@dataclass(frozen=True)
class RankRow:
    vertex: int
    weight: int
    singularity: CyclicQuotient | None
    class_t: ClassTData | None
    rank: int
    bundle_rank: int
    bundle_count: int

    @property
    def multiplicity(self) -> int:
        return self.bundle_rank

    @property
    def du_val(self) -> bool:
        return self.singularity is not None and self.class_t is None


@dataclass(frozen=True)
class RankReport:
    plane: WeightedPlane
    rows: tuple[RankRow, ...]
    k_squared: Fraction
    block: BlockStructure | None = None

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(row.rank for row in self.rows)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(row.bundle_count for row in self.rows)

    @property
    def block_ranks(self) -> tuple[int, ...]:
        return tuple(row.bundle_rank for row in self.rows)


def is_du_val(q: CyclicQuotient) -> bool:
    """1/n(1, n-1), the A_{n-1} point; the r = 1 member of the T family."""
    p = normalize(q)
    return p.weights[1] == p.order - 1


def _block_structure(p: WeightedPlane, sizes: tuple[int, ...], ranks: tuple[int, ...]) -> BlockStructure | None:
    """The three-block equation sum s_i a_i^2 = lambda a_1 a_2 a_3 with lambda^2 = K^2 s_1 s_2 s_3.

    None when K^2 is not an integer or lambda is irrational.
    """
    k_squared = canonical_degree_squared(p)
    if k_squared.denominator != 1:
        return None
    try:
        block = BlockStructure.from_degree(sizes, k_squared.numerator)
    except InvalidInput:
        return None
    if not block.satisfied_by(ranks):
        raise InvariantViolation(
            f"block equation fails on {p.label}",
            details={"block_sizes": list(sizes), "ranks": list(ranks), "lambda": block.lam},
        )
    return block


def kks_rank_report(p: WeightedPlane) -> RankReport:
    """Rank bookkeeping for the three blocks of the deformed collection.

    The sheaf at vertex i has rank w_i = s_i r_i^2 and deforms to s_i bundles
    of rank r_i, each appearing r_i times. An A_{n-1} point counts as r = 1,
    s = n. When K^2 is an integer the ranks r_i and block sizes s_i are checked
    against the three-block equation.
    """
    rows = []
    for i, w in enumerate(p.weights, start=1):
        if w == 1:
            rows.append(RankRow(vertex=i, weight=1, singularity=None, class_t=None, rank=1, bundle_rank=1, bundle_count=1))
            continue
        q = dict(singular_locus(p))[i]
        matches = class_t_decompose(q)
        if not matches and is_du_val(q):
            rows.append(RankRow(vertex=i, weight=w, singularity=q, class_t=None, rank=w, bundle_rank=1, bundle_count=w))
            continue
        if not matches:
            raise NotClassT(
                f"{q.label} at vertex {i} of {p.label} is not of class T",
                details={"plane": list(p.weights), "vertex": i, "singularity": q.label},
            )
        t = matches[0]
        row = RankRow(vertex=i, weight=w, singularity=q, class_t=t, rank=w, bundle_rank=t.r, bundle_count=t.s)
        if row.bundle_count * row.bundle_rank * row.multiplicity != row.rank:
            raise InvariantViolation(
                f"rank conservation fails at vertex {i} of {p.label}",
                details={"rank": row.rank, "r": t.r, "s": t.s},
            )
        rows.append(row)
    report = RankReport(plane=p, rows=tuple(rows), k_squared=canonical_degree_squared(p))
    return replace(report, block=_block_structure(p, report.block_sizes, report.block_ranks))


@dataclass(frozen=True)
class MarkovPlane:
    triple: MarkovTriple
    plane: WeightedPlane
    points: tuple[tuple[int, CyclicQuotient, ClassTData | None], ...]

    @property
    def all_wahl(self) -> bool:
        return all(t is not None and t.is_wahl for _, _, t in self.points)


def markov_planes(max_entry: int) -> list[MarkovPlane]:
    """P(a^2, b^2, c^2) for every Markov triple with entries <= max_entry."""
    out = []
    for triple in sorted(enumerate_tree(max_entry)):
        plane = WeightedPlane(tuple(x * x for x in triple.entries))
        points = []
        for vertex, q in singular_locus(plane):
            matches = class_t_decompose(q)
            points.append((vertex, q, matches[0] if matches else None))
        out.append(MarkovPlane(triple=triple, plane=plane, points=tuple(points)))
    logger.debug("built %d Markov planes up to %d", len(out), max_entry)
    return out


OMEGA_TWISTED = ChernP2(2, -1, Fraction(-1, 2))


@dataclass(frozen=True)
class ConeCaseStudy:
    d: int
    plane: WeightedPlane
    vertex: CyclicQuotient
    ladder: ExtensionLadder
    kk_dimension: int
    class_t: ClassTData | None
    rank_report: RankReport | None
    conservation: ConservationReport | None
    collection: NumericalCollection | None
    collection_report: CollectionReport | None
    extension_pairing: Fraction | None

    @property
    def universal_extension(self) -> int:
        """Number of copies of O(-1) in the first universal extension."""
        return self.ladder.ext_dims[0]


def cone_case_study(d: int) -> ConeCaseStudy:
    """The cone P(1,1,d): its vertex 1/d(1,1) is of class T only for d = 4.

    For d = 4 the smoothing is P^2 and the degenerating collection becomes
    (O(-1), Omega^1(1), O) numerically.
    """
    if d < 2:
        raise InvalidInput(f"cone degree must be >= 2, got {d}", details={"d": d})
    plane = WeightedPlane((1, 1, d))
    vertex = normalize(CyclicQuotient(d, (1, 1)))
    matches = class_t_decompose(vertex)
    class_t = matches[0] if matches else None

    rank_report = conservation = collection = report = pairing = None
    if class_t is not None:
        rank_report = kks_rank_report(plane)
        conservation = dimension_conservation(class_t)
        collection = NumericalCollection((ChernP2.line_bundle(-1), OMEGA_TWISTED, ChernP2.line_bundle(0)))
        report = collection_checks(collection)
        pairing = euler_pairing(collection.members[0], collection.members[1])

    return ConeCaseStudy(
        d=d,
        plane=plane,
        vertex=vertex,
        ladder=ladder_for_singularity(d, 1),
        kk_dimension=kk_dimension_for_singularity(d, 1),
        class_t=class_t,
        rank_report=rank_report,
        conservation=conservation,
        collection=collection,
        collection_report=report,
        extension_pairing=pairing,
    )
