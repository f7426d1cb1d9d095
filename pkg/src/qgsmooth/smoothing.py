"""Crepant simultaneous partial resolution of a class T smoothing, as exact data.

The central fibre X' carries s points of type 1/r^2(1, ar - 1) joined by the
curves C_1, ..., C_{s-1}; C_0 and C_s are the strict transforms of the two
coordinate axes. Intersection numbers:

    C_{i-1} C_i = 1/r^2,   C_i^2 = -2/r^2 (1 <= i <= s-1),   C_0^2 = u,   C_s^2 = v,

where u and v are symbols, since they depend on the global surface.
Flopping C_i acts on divisor classes by
C_{i-1} -> C_{i-1} + C_i, C_i -> -C_i, C_{i+1} -> C_i + C_{i+1}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import sympy as sp
from sympy.polys.matrices import DomainMatrix

from .errors import InvalidInput, InvariantViolation
from .kkalg import kk_dimension_for_singularity, kk_exponents
from .ncdef import versal_rank
from .singularity import ClassTData, CyclicQuotient, class_t_decompose, normalize

logger = logging.getLogger(__name__)

U, V = sp.symbols("u v")


@lru_cache(maxsize=None)
def intersection_form(r: int, s: int) -> sp.ImmutableMatrix:
    """Matrix of C_0, ..., C_s over Q[u, v]; only r and s enter."""
    unit = sp.Rational(1, r * r)

    def entry(i: int, j: int) -> sp.Expr:
        if i == j:
            if i == 0:
                return U
            if i == s:
                return V
            return -2 * unit
        if abs(i - j) == 1:
            return unit
        return sp.Integer(0)

    return sp.ImmutableMatrix(s + 1, s + 1, entry)


@dataclass(frozen=True)
class DivisorClass:
    """Integer coefficients over C_0, ..., C_s."""

    coefficients: tuple[int, ...]

    @classmethod
    def basis(cls, s: int, k: int) -> DivisorClass:
        return cls(tuple(1 if i == k else 0 for i in range(s + 1)))

    @classmethod
    def partial_sum(cls, s: int, i: int) -> DivisorClass:
        """C_0 + ... + C_{i-1}."""
        return cls(tuple(1 if k < i else 0 for k in range(s + 1)))

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-x for x in self.coefficients))


@dataclass(frozen=True)
class CrepantChain:
    class_t: ClassTData
    points: tuple[CyclicQuotient, ...]
    curves: tuple[str, ...]

    @property
    def s(self) -> int:
        return self.class_t.s

    @property
    def r(self) -> int:
        return self.class_t.r

    @property
    def interior(self) -> range:
        return range(1, self.s)

    @property
    def form(self) -> sp.ImmutableMatrix:
        return intersection_form(self.r, self.s)

    def entry(self, i: int, j: int) -> sp.Expr:
        return self.form[i, j]

    def pairing(self, d: DivisorClass, e: DivisorClass) -> sp.Expr:
        row = sp.Matrix([d.coefficients])
        column = sp.Matrix(e.coefficients)
        return sp.expand((row * self.form * column)[0, 0])

    def canonical_class(self) -> DivisorClass:
        """K as the stored relation K + C_0 + ... + C_s ~ 0."""
        return DivisorClass(tuple(-1 for _ in range(self.s + 1)))


def build_chain(t: ClassTData) -> CrepantChain:
    point = normalize(CyclicQuotient(t.r * t.r, (1, t.a * t.r - 1)))
    return CrepantChain(
        class_t=t,
        points=tuple(point for _ in range(t.s)),
        curves=tuple(f"C_{i}" for i in range(t.s + 1)),
    )


def _check_flop_index(chain: CrepantChain, i: int) -> None:
    if not 1 <= i <= chain.s - 1:
        raise InvalidInput(
            f"flop index must satisfy 1 <= i <= {chain.s - 1}, got {i}",
            details={"s": chain.s, "i": i},
        )


def flop(chain: CrepantChain, i: int, d: DivisorClass) -> DivisorClass:
    """Action of flopping C_i on a divisor class."""
    _check_flop_index(chain, i)
    if len(d.coefficients) != chain.s + 1:
        raise InvalidInput(
            f"divisor class needs {chain.s + 1} coefficients, got {len(d.coefficients)}",
            details={"s": chain.s, "coefficients": list(d.coefficients)},
        )
    c = list(d.coefficients)
    c[i] = c[i - 1] - c[i] + c[i + 1]
    return DivisorClass(tuple(c))


@lru_cache(maxsize=None)
def _flop_matrix(s: int, i: int) -> sp.ImmutableMatrix:
    # Identity except row i, which reads (.., 1, -1, 1, ..) around the diagonal.
    def entry(row: int, col: int) -> int:
        if row != i:
            return int(row == col)
        return {i - 1: 1, i: -1, i + 1: 1}.get(col, 0)

    return sp.ImmutableMatrix(s + 1, s + 1, entry)


def flop_matrix(chain: CrepantChain, i: int) -> sp.ImmutableMatrix:
    """Columns are the images of the basis curves."""
    _check_flop_index(chain, i)
    return _flop_matrix(chain.s, i)


@lru_cache(maxsize=None)
def _isometry_defect(r: int, s: int, i: int) -> sp.ImmutableMatrix:
    f, q = DomainMatrix.from_Matrix(_flop_matrix(s, i)).unify(DomainMatrix.from_Matrix(intersection_form(r, s)))
    return (f.transpose() * q * f - q).to_Matrix().as_immutable()


def isometry_defect(chain: CrepantChain, i: int) -> sp.ImmutableMatrix:
    """F^T Q F - Q over Q[u, v]; the zero matrix when the flop is an isometry."""
    _check_flop_index(chain, i)
    return _isometry_defect(chain.r, chain.s, i)


def is_isometry(chain: CrepantChain, i: int) -> bool:
    # Entries are polynomials in u and v, so zero is structural.
    return all(entry == 0 for entry in isometry_defect(chain, i))


def canonical_functional(chain: CrepantChain) -> tuple[sp.Expr, ...]:
    """K . C_i for every curve, computed from K ~ -(C_0 + ... + C_s)."""
    k = chain.canonical_class()
    return tuple(chain.pairing(k, DivisorClass.basis(chain.s, i)) for i in range(chain.s + 1))


@dataclass(frozen=True)
class ClosureReport:
    s: int
    initial: tuple[tuple[int, int], ...]
    closure: tuple[tuple[int, int], ...]
    rounds: int

    @property
    def complete(self) -> bool:
        return len(self.closure) == self.s * (self.s - 1)


def orthogonality_closure(s: int) -> ClosureReport:
    """Close {(i, j): i < j} under the adjacent transpositions induced by flops."""
    if s < 1:
        raise InvalidInput(f"s must be >= 1, got {s}", details={"s": s})
    initial = {(i, j) for i in range(1, s + 1) for j in range(i + 1, s + 1)}
    closure = set(initial)
    rounds = 0
    while True:
        added = set()
        for k in range(1, s):
            swap = {k: k + 1, k + 1: k}
            for i, j in closure:
                image = (swap.get(i, i), swap.get(j, j))
                if image not in closure:
                    added.add(image)
        if not added:
            break
        closure |= added
        rounds += 1
    report = ClosureReport(
        s=s,
        initial=tuple(sorted(initial)),
        closure=tuple(sorted(closure)),
        rounds=rounds,
    )
    if not report.complete:
        missing = sorted({(i, j) for i in range(1, s + 1) for j in range(1, s + 1) if i != j} - closure)
        raise InvariantViolation(
            "flop closure of the semi-orthogonal pairs is incomplete",
            details={"s": s, "missing": [list(p) for p in missing]},
        )
    return report


def chain_chi(j_from: int, j_to: int) -> int:
    """chi(O) of the reduced chain C_{j_from} + ... + C_{j_to - 1}: vertices - edges."""
    if j_from < 0 or j_to <= j_from:
        raise InvalidInput(
            f"empty or invalid curve range [{j_from}, {j_to})",
            details={"j_from": j_from, "j_to": j_to},
        )
    vertices = j_to - j_from
    edges = vertices - 1
    return vertices - edges


@dataclass(frozen=True)
class ConservationReport:
    class_t: ClassTData
    singularity: CyclicQuotient
    expansion: tuple[int, ...]
    kk_dimension: int
    versal_rank: int
    blocks: tuple[int, ...]

    @property
    def matrix_dimension(self) -> int:
        return sum(b * b for b in self.blocks)

    @property
    def ok(self) -> bool:
        n = self.class_t.order
        return self.kk_dimension == n == self.versal_rank == self.matrix_dimension


def dimension_conservation(t: ClassTData) -> ConservationReport:
    """dim R for 1/(r^2 s)(1, ars - 1) against dim Mat(k, r)^{x s} = r^2 s."""
    q = t.singularity()
    n, w = q.order, q.weights[1]
    report = ConservationReport(
        class_t=t,
        singularity=q,
        expansion=kk_exponents(n, w),
        kk_dimension=kk_dimension_for_singularity(n, w),
        versal_rank=versal_rank(t),
        blocks=tuple(t.r for _ in range(t.s)),
    )
    if not report.ok:
        raise InvariantViolation(
            f"dimension conservation fails for (r, a, s) = ({t.r}, {t.a}, {t.s})",
            details={
                "kk_dimension": report.kk_dimension,
                "order": n,
                "versal_rank": report.versal_rank,
                "matrix_dimension": report.matrix_dimension,
            },
        )
    return report


@dataclass(frozen=True)
class BlowupStep:
    before: ClassTData
    wahl: ClassTData
    remaining: ClassTData


def blowup_sequence(t: ClassTData) -> tuple[BlowupStep, ...]:
    """Small blow-ups splitting one Wahl point off at a time; empty when s = 1."""
    steps = []
    for k in range(1, t.s):
        step = BlowupStep(
            before=ClassTData(t.r, t.a, t.s - k + 1),
            wahl=ClassTData(t.r, t.a, 1),
            remaining=ClassTData(t.r, t.a, t.s - k),
        )
        for piece in (step.before, step.wahl, step.remaining):
            found = class_t_decompose(piece.singularity())
            if piece not in found:
                raise InvariantViolation(
                    f"blow-up piece {piece.singularity().label} is not of class T",
                    details={"r": piece.r, "a": piece.a, "s": piece.s},
                )
        steps.append(step)
    return tuple(steps)


def factored_family(t: ClassTData) -> str:
    """xy = prod_i (z^r - h_i(t)) after base change."""
    factors = "".join(f"(z^{t.r} - h_{i}(t))" for i in range(1, t.s + 1))
    return f"xy = {factors}"


@dataclass(frozen=True)
class ChainChecks:
    involution: bool
    isometry: bool
    interchange: bool
    sign_switch: bool
    canonical: bool
    closure: bool

    @property
    def passed(self) -> bool:
        return all((self.involution, self.isometry, self.interchange, self.sign_switch, self.canonical, self.closure))


def chain_checks(chain: CrepantChain) -> ChainChecks:
    """Every exact property of the chain that does not depend on u and v being known."""
    s = chain.s
    unit = sp.Rational(1, chain.r * chain.r)
    basis = [DivisorClass.basis(s, k) for k in range(s + 1)]
    mixed = DivisorClass(tuple(k * k - 3 * k + 1 for k in range(s + 1)))

    involution = all(
        flop(chain, i, flop(chain, i, d)) == d
        for i in chain.interior
        for d in basis + [mixed]
    )
    isometry = all(is_isometry(chain, i) for i in chain.interior)
    interchange = all(
        flop(chain, i, DivisorClass.partial_sum(s, i)) == DivisorClass.partial_sum(s, i + 1)
        and flop(chain, i, DivisorClass.partial_sum(s, i + 1)) == DivisorClass.partial_sum(s, i)
        for i in chain.interior
    )
    sign_switch = True
    for i in chain.interior:
        d = DivisorClass.partial_sum(s, i)
        c_i = basis[i]
        before = chain.pairing(d, c_i)
        after = chain.pairing(flop(chain, i, d), c_i)
        if before != unit or after != -unit:
            sign_switch = False
    k_values = canonical_functional(chain)
    canonical = all(k_values[i] == 0 for i in chain.interior)
    closure = orthogonality_closure(s).complete
    return ChainChecks(
        involution=involution,
        isometry=isometry,
        interchange=interchange,
        sign_switch=sign_switch,
        canonical=canonical,
        closure=closure,
    )
