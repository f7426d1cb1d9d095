"""Cyclic quotient surface singularities and class T data."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import InvalidInput, NotIsolated


@dataclass(frozen=True)
class CyclicQuotient:
    """The singularity 1/n(w_1, w_2); weights are stored reduced mod n."""

    order: int
    weights: tuple[int, int]

    def __post_init__(self) -> None:
        if self.order < 2:
            raise InvalidInput(
                f"group order must be >= 2, got {self.order}",
                details={"order": self.order},
            )
        w1, w2 = self.weights
        object.__setattr__(self, "weights", (w1 % self.order, w2 % self.order))

    @property
    def label(self) -> str:
        w1, w2 = self.weights
        return f"1/{self.order}({w1},{w2})"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ClassTData:
    """(r, a, s) presenting 1/(r^2 s)(1, a r s - 1)."""

    r: int
    a: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 2 or not 0 < self.a < self.r or gcd(self.r, self.a) != 1 or self.s < 1:
            raise InvalidInput(
                f"invalid class T data (r={self.r}, a={self.a}, s={self.s})",
                details={"r": self.r, "a": self.a, "s": self.s},
            )

    @property
    def order(self) -> int:
        return self.r * self.r * self.s

    @property
    def weight(self) -> int:
        return self.a * self.r * self.s - 1

    @property
    def is_wahl(self) -> bool:
        return self.s == 1

    def singularity(self) -> CyclicQuotient:
        return CyclicQuotient(self.order, (1, self.weight))

    def swapped(self) -> ClassTData:
        """The same point with its coordinates exchanged: 1/n(1, q^-1) is presented by (r, r - a, s)."""
        return ClassTData(self.r, self.r - self.a, self.s)


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]
    parameter: str | None = None


@dataclass(frozen=True)
class EquationRecord:
    """lhs = rhs inside the quotient 1/order(ambient_weights)."""

    variables: tuple[str, ...]
    lhs: tuple[Monomial, ...]
    rhs: tuple[Monomial, ...]
    ambient_order: int
    ambient_weights: tuple[int, ...]
    parameters: tuple[str, ...] = ()


@dataclass(frozen=True)
class DeformationEquations:
    class_t: ClassTData
    cover_equation: EquationRecord
    versal_equation: EquationRecord
    milnor_number: int
    embedding: tuple[tuple[str, str], ...] = field(default=())

    @property
    def is_wahl(self) -> bool:
        return self.class_t.is_wahl


def normalize(q: CyclicQuotient) -> CyclicQuotient:
    """Rescale the weights so that the first one is 1."""
    n = q.order
    w1, w2 = q.weights
    if gcd(w1, n) != 1:
        raise NotIsolated(
            f"{q.label} is not isolated: gcd({w1}, {n}) != 1",
            details={"order": n, "weights": [w1, w2]},
        )
    if gcd(w2, n) != 1:
        raise NotIsolated(
            f"{q.label} is not isolated: gcd({w2}, {n}) != 1",
            details={"order": n, "weights": [w1, w2]},
        )
    inverse = pow(w1, -1, n)
    return CyclicQuotient(n, (1, w2 * inverse % n))


def cartier_index(q: CyclicQuotient) -> int:
    """Index of the canonical divisor at the point: n / gcd(n, q + 1)."""
    p = normalize(q)
    return p.order // gcd(p.order, p.weights[1] + 1)


def class_t_decompose(q: CyclicQuotient) -> list[ClassTData]:
    """All (r, a, s) with r^2 s = n and a r s - 1 = q.

    The inverse weight q^-1 needs no separate search: whenever (r, a, s) matches q,
    (r, r - a, s) matches q^-1, so both orientations of the point are covered by
    the list and by ``ClassTData.swapped``.
    """
    p = normalize(q)
    n = p.order
    w = p.weights[1]

    matches: list[ClassTData] = []
    r = 2
    while r * r <= n:
        if n % (r * r) == 0:
            s = n // (r * r)
            for a in range(1, r):
                if gcd(a, r) == 1 and (a * r * s - 1) % n == w:
                    matches.append(ClassTData(r, a, s))
        r += 1
    return matches


def qg_deformation_data(t: ClassTData) -> DeformationEquations:
    """Index-one cover and versal Q-Gorenstein deformation of a class T point."""
    r, a, s = t.r, t.a, t.s
    ambient = (1, (-1) % r, a % r)
    variables = ("x", "y", "z")
    xy = (Monomial((1, 1, 0)),)
    top = Monomial((0, 0, r * s))

    cover = EquationRecord(
        variables=variables,
        lhs=xy,
        rhs=(top,),
        ambient_order=r,
        ambient_weights=ambient,
    )
    parameters = tuple(f"t_{i}" for i in range(s))
    versal = EquationRecord(
        variables=variables,
        lhs=xy,
        rhs=(top,) + tuple(Monomial((0, 0, i * r), parameter=f"t_{i}") for i in range(s)),
        ambient_order=r,
        ambient_weights=ambient,
        parameters=parameters,
    )
    embedding = (
        ("x", f"u^{r * s}"),
        ("y", f"v^{r * s}"),
        ("z", "u*v"),
    )
    return DeformationEquations(
        class_t=t,
        cover_equation=cover,
        versal_equation=versal,
        milnor_number=s - 1,
        embedding=embedding,
    )


def _format_monomial(m: Monomial, variables: tuple[str, ...]) -> str:
    factors = []
    for name, exponent in zip(variables, m.exponents):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    body = "".join(factors) if all(len(v) == 1 for v in variables) and m.parameter is None else "*".join(factors)
    if m.parameter is None:
        return body or "1"
    if not factors:
        return m.parameter
    return f"{m.parameter}*{body}"


def format_equation(e: EquationRecord) -> str:
    """Render e.g. ``xy = z^4 + t_0 + t_1*z^2``."""
    lhs = " + ".join(_format_monomial(m, e.variables) for m in e.lhs)
    rhs = " + ".join(_format_monomial(m, e.variables) for m in e.rhs)
    return f"{lhs} = {rhs}"


def format_ambient(e: EquationRecord) -> str:
    weights = ",".join(str(w) for w in e.ambient_weights)
    return f"1/{e.ambient_order}({weights})"
