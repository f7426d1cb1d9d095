"""Markov triples and 3-block Markov-type equations."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from math import isqrt
from typing import Literal

from .errors import InvalidInput, InvariantViolation, NonIntegralMutation

logger = logging.getLogger(__name__)

Direction = Literal["left", "right"]
Ranks = tuple[int, int, int]


def is_markov(a: int, b: int, c: int) -> bool:
    return a > 0 and b > 0 and c > 0 and a * a + b * b + c * c == 3 * a * b * c


@dataclass(frozen=True, order=True)
class MarkovTriple:
    """A positive solution of a^2 + b^2 + c^2 = 3abc, sorted ascending."""

    entries: Ranks

    def __post_init__(self) -> None:
        a, b, c = sorted(int(x) for x in self.entries)
        if not is_markov(a, b, c):
            raise InvalidInput(
                f"{tuple(self.entries)} is not a Markov triple",
                details={"entries": list(self.entries)},
            )
        object.__setattr__(self, "entries", (a, b, c))

    @classmethod
    def of(cls, a: int, b: int, c: int) -> MarkovTriple:
        return cls((a, b, c))

    @property
    def max_entry(self) -> int:
        return self.entries[2]

    def __iter__(self):
        return iter(self.entries)


ROOT = MarkovTriple((1, 1, 1))


def mutate_entries(entries: Ranks, index: int) -> Ranks:
    """Replace entries[index] by 3 * (product of the others) - entries[index], in place."""
    if index not in (0, 1, 2):
        raise InvalidInput(f"index must be 0, 1 or 2, got {index}", details={"index": index})
    a, b, c = entries
    if not is_markov(a, b, c):
        raise InvalidInput(f"{tuple(entries)} is not a Markov triple", details={"entries": list(entries)})
    others = [x for k, x in enumerate(entries) if k != index]
    out = list(entries)
    out[index] = 3 * others[0] * others[1] - entries[index]
    return (out[0], out[1], out[2])


def mutate(t: MarkovTriple, position: int) -> MarkovTriple:
    """Mutate the entry at 1-based ``position`` of the canonical triple."""
    if position not in (1, 2, 3):
        raise InvalidInput(f"position must be 1, 2 or 3, got {position}", details={"position": position})
    return MarkovTriple(mutate_entries(t.entries, position - 1))


def enumerate_tree(max_entry: int) -> frozenset[MarkovTriple]:
    """All canonical triples with largest entry <= max_entry, by BFS from (1, 1, 1)."""
    if max_entry < 1:
        raise InvalidInput(f"max_entry must be >= 1, got {max_entry}", details={"max_entry": max_entry})
    seen = {ROOT}
    queue: deque[MarkovTriple] = deque([ROOT])
    while queue:
        t = queue.popleft()
        for position in (1, 2, 3):
            child = mutate(t, position)
            if child.max_entry <= max_entry and child not in seen:
                seen.add(child)
                queue.append(child)
    logger.debug("markov tree up to %d: %d triples", max_entry, len(seen))
    return frozenset(seen)


def markov_numbers(triples: frozenset[MarkovTriple] | set[MarkovTriple]) -> list[int]:
    return sorted({x for t in triples for x in t.entries})


def markov_descent(t: MarkovTriple) -> list[MarkovTriple]:
    """Path to (1, 1, 1) obtained by always mutating the largest entry."""
    path = [t]
    current = t
    while current != ROOT:
        nxt = mutate(current, 3)
        if nxt.max_entry >= current.max_entry:
            raise InvariantViolation(
                f"descent from {current.entries} does not decrease the maximum",
                details={"triple": list(current.entries), "next": list(nxt.entries)},
            )
        path.append(nxt)
        current = nxt
    return path


def brute_force_markov_triples(max_entry: int) -> frozenset[MarkovTriple]:
    """Independent scan: solve the quadratic in c for every a <= b <= max_entry."""
    found: set[MarkovTriple] = set()
    for a in range(1, max_entry + 1):
        for b in range(a, max_entry + 1):
            disc = 9 * a * a * b * b - 4 * (a * a + b * b)
            if disc < 0:
                continue
            root = isqrt(disc)
            if root * root != disc:
                continue
            for num in (3 * a * b - root, 3 * a * b + root):
                if num % 2:
                    continue
                c = num // 2
                if b <= c <= max_entry and is_markov(a, b, c):
                    found.add(MarkovTriple((a, b, c)))
    return frozenset(found)


@dataclass(frozen=True)
class BlockStructure:
    """Block sizes (alpha, beta, gamma) with lambda^2 = K^2 alpha beta gamma."""

    block_sizes: Ranks
    k_squared: int
    lam: int

    def __post_init__(self) -> None:
        alpha, beta, gamma = self.block_sizes
        if min(alpha, beta, gamma) < 1 or self.k_squared < 1 or self.lam < 1:
            raise InvalidInput(
                "block sizes, K^2 and lambda must be positive",
                details={"block_sizes": list(self.block_sizes), "k_squared": self.k_squared, "lambda": self.lam},
            )
        if self.lam * self.lam != self.k_squared * alpha * beta * gamma:
            raise InvalidInput(
                "lambda^2 must equal K^2 * alpha * beta * gamma",
                details={"block_sizes": list(self.block_sizes), "k_squared": self.k_squared, "lambda": self.lam},
            )

    @classmethod
    def from_degree(cls, block_sizes: Ranks, k_squared: int) -> BlockStructure:
        alpha, beta, gamma = block_sizes
        product = k_squared * alpha * beta * gamma
        lam = isqrt(product) if product > 0 else 0
        if lam * lam != product:
            raise InvalidInput(
                "K^2 * alpha * beta * gamma is not a perfect square",
                details={"block_sizes": list(block_sizes), "k_squared": k_squared},
            )
        return cls(block_sizes=tuple(block_sizes), k_squared=k_squared, lam=lam)

    def satisfied_by(self, ranks: Ranks) -> bool:
        alpha, beta, gamma = self.block_sizes
        a, b, c = ranks
        return alpha * a * a + beta * b * b + gamma * c * c == self.lam * a * b * c

    def permuted(self, sizes: Ranks) -> BlockStructure:
        return BlockStructure(block_sizes=sizes, k_squared=self.k_squared, lam=self.lam)


P2_BLOCKS = BlockStructure(block_sizes=(1, 1, 1), k_squared=9, lam=3)


@dataclass(frozen=True)
class BlockMutation:
    ranks: Ranks
    block: BlockStructure


def block_mutate(ranks: Ranks, block: BlockStructure, direction: Direction) -> BlockMutation:
    """Left: (A; B; C) -> (A; C'; B). Right: (A; B; C) -> (B; A'; C)."""
    a, b, c = ranks
    if min(a, b, c) < 1 or not block.satisfied_by(ranks):
        raise InvalidInput(
            f"{tuple(ranks)} does not solve the block equation",
            details={"ranks": list(ranks), "block_sizes": list(block.block_sizes), "lambda": block.lam},
        )
    alpha, beta, gamma = block.block_sizes
    if direction == "left":
        if block.lam % gamma:
            raise NonIntegralMutation(
                f"lambda/gamma = {block.lam}/{gamma} is not integral",
                details={"lambda": block.lam, "gamma": gamma},
            )
        mutated = (block.lam // gamma) * a * b - c
        return BlockMutation(ranks=(a, mutated, b), block=block.permuted((alpha, gamma, beta)))
    if direction == "right":
        if block.lam % alpha:
            raise NonIntegralMutation(
                f"lambda/alpha = {block.lam}/{alpha} is not integral",
                details={"lambda": block.lam, "alpha": alpha},
            )
        mutated = (block.lam // alpha) * b * c - a
        return BlockMutation(ranks=(b, mutated, c), block=block.permuted((beta, alpha, gamma)))
    raise InvalidInput(f"direction must be 'left' or 'right', got {direction!r}", details={"direction": direction})


def enumerate_block_orbit(
    ranks: Ranks,
    block: BlockStructure,
    max_entry: int,
) -> frozenset[BlockMutation]:
    """Closure of (ranks, block) under left/right block mutations with entries <= max_entry.

    Directions whose coefficient is not integral are skipped.
    """
    start = BlockMutation(ranks=(ranks[0], ranks[1], ranks[2]), block=block)
    if not block.satisfied_by(start.ranks):
        raise InvalidInput(
            f"{tuple(ranks)} does not solve the block equation",
            details={"ranks": list(ranks), "block_sizes": list(block.block_sizes)},
        )
    seen = {start}
    queue: deque[BlockMutation] = deque([start])
    while queue:
        node = queue.popleft()
        for direction in ("left", "right"):
            try:
                child = block_mutate(node.ranks, node.block, direction)
            except NonIntegralMutation:
                continue
            if min(child.ranks) < 1 or max(child.ranks) > max_entry or child in seen:
                continue
            seen.add(child)
            queue.append(child)
    return frozenset(seen)
