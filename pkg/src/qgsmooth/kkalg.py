"""Kalck-Karmazyn algebras as monomial algebras.

The algebra attached to 1/r(1, a) is k<z_1, ..., z_l>/I where
r/(r - a) = [c_1, ..., c_l] and I is generated by the monomials

    z_j^{c_j}                                              for all j,
    z_j z_k                                                for j < k,
    z_j^{c_j - 1} z_{j-1}^{c_{j-1} - 2} ... z_{k+1}^{c_{k+1} - 2} z_k^{c_k - 1}   for k < j.

Since I is monomial, the words avoiding every generator as a factor form a
basis. Two independent counters are provided: an Aho-Corasick style
factor-avoidance automaton (enumeration and transfer counting) and a plain
generate-and-filter oracle.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from math import gcd

from .cfrac import hj_expand
from .errors import InvalidInput, InvariantViolation

logger = logging.getLogger(__name__)

# A word is stored as runs (generator, exponent); generators are 1-based.
Word = tuple[tuple[int, int], ...]
Letters = tuple[int, ...]


def word_from_letters(letters: Iterable[int]) -> Word:
    runs: list[list[int]] = []
    for g in letters:
        if runs and runs[-1][0] == g:
            runs[-1][1] += 1
        else:
            runs.append([g, 1])
    return tuple((g, e) for g, e in runs)


def word_letters(word: Word) -> Letters:
    out: list[int] = []
    for g, e in word:
        out.extend([g] * e)
    return tuple(out)


def word_length(word: Word) -> int:
    return sum(e for _, e in word)


def format_word(word: Word) -> str:
    """Render a word as ``z_4^2 z_1``; the empty word is ``1``."""
    if not word:
        return "1"
    parts = []
    for g, e in word:
        parts.append(f"z_{g}" if e == 1 else f"z_{g}^{e}")
    return " ".join(parts)


def _length_lex_key(word: Word) -> tuple[int, Letters]:
    letters = word_letters(word)
    return (len(letters), letters)


@dataclass(frozen=True)
class MonomialPresentation:
    generator_count: int
    exponents: tuple[int, ...]
    forbidden: tuple[Word, ...]
    reduced: bool = True

    @property
    def forbidden_letters(self) -> tuple[Letters, ...]:
        return tuple(word_letters(w) for w in self.forbidden)

    @property
    def nilpotency_bound(self) -> int:
        return sum(c - 1 for c in self.exponents)


@dataclass(frozen=True)
class WordBasis:
    words: tuple[Word, ...]
    hilbert: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.words)

    @property
    def max_length(self) -> int:
        return len(self.hilbert) - 1


def _long_relation(exponents: Sequence[int], j: int, k: int) -> Word:
    """z_j^{c_j-1} z_{j-1}^{c_{j-1}-2} ... z_{k+1}^{c_{k+1}-2} z_k^{c_k-1}, 1-based j > k."""
    runs: list[tuple[int, int]] = [(j, exponents[j - 1] - 1)]
    for g in range(j - 1, k, -1):
        runs.append((g, exponents[g - 1] - 2))
    runs.append((k, exponents[k - 1] - 1))
    return word_from_letters(word_letters(tuple((g, e) for g, e in runs if e > 0)))


def _contains_factor(letters: Letters, factor: Letters) -> bool:
    n, m = len(letters), len(factor)
    if m > n:
        return False
    for start in range(n - m + 1):
        if letters[start:start + m] == factor:
            return True
    return False


def _reduce(words: Iterable[Word]) -> tuple[Word, ...]:
    """Drop duplicates and every word having another forbidden word as a proper factor.

    Each word is scanned once by the factor automaton of all the words; a dead
    state before the last letter, or on the failure link of the last one, marks
    a proper factor.
    """
    unique = {word_letters(w) for w in words}
    automaton = FactorAutomaton.from_words(max(max(x) for x in unique), unique)
    kept = [letters for letters in unique if not _has_proper_factor(automaton, letters)]
    kept.sort(key=lambda x: (len(x), x))
    return tuple(word_from_letters(x) for x in kept)


def _has_proper_factor(automaton: FactorAutomaton, letters: Letters) -> bool:
    # letters is itself in the trie, so each prefix lands on its own trie node.
    state = 0
    last = len(letters) - 1
    for i, g in enumerate(letters):
        state = automaton.step(state, g)
        if i < last and automaton.dead[state]:
            return True
    return automaton.dead[automaton.fail[state]]


def kk_relations(exponents: Sequence[int], reduce: bool = True) -> MonomialPresentation:
    """Monomial generators of the ideal I for exponents c_1, ..., c_l."""
    cs = tuple(int(c) for c in exponents)
    if not cs:
        raise InvalidInput("at least one exponent is required")
    bad = [c for c in cs if c <= 1]
    if bad:
        raise InvalidInput(
            "Kalck-Karmazyn exponents must be >= 2",
            details={"exponents": list(cs), "offending": bad},
        )

    l = len(cs)
    words: list[Word] = []
    for j in range(1, l + 1):
        words.append(((j, cs[j - 1]),))
    for j in range(1, l + 1):
        for k in range(j + 1, l + 1):
            words.append(((j, 1), (k, 1)))
    for j in range(1, l + 1):
        for k in range(1, j):
            words.append(_long_relation(cs, j, k))

    if reduce:
        forbidden = _reduce(words)
    else:
        forbidden = tuple(sorted(set(words), key=_length_lex_key))
    return MonomialPresentation(
        generator_count=l,
        exponents=cs,
        forbidden=forbidden,
        reduced=reduce,
    )


@dataclass
class FactorAutomaton:
    """Trie of forbidden words with failure links.

    State 0 is the empty prefix. A state is dead when it, or any state on its
    failure chain, ends a forbidden word. Transitions are resolved lazily
    through the failure links and memoized per state.
    """

    alphabet: tuple[int, ...]
    children: list[dict[int, int]] = field(default_factory=lambda: [{}])
    fail: list[int] = field(default_factory=lambda: [0])
    dead: list[bool] = field(default_factory=lambda: [False])
    _delta: list[dict[int, int]] = field(default_factory=lambda: [{}])

    @classmethod
    def build(cls, p: MonomialPresentation) -> FactorAutomaton:
        automaton = cls.from_words(p.generator_count, p.forbidden_letters)
        logger.debug(
            "factor automaton: %d states for %d forbidden words",
            len(automaton.children),
            len(p.forbidden),
        )
        return automaton

    @classmethod
    def from_words(cls, generator_count: int, words: Iterable[Letters]) -> FactorAutomaton:
        automaton = cls(alphabet=tuple(range(1, generator_count + 1)))
        for letters in words:
            automaton._insert(letters)
        automaton._link()
        return automaton

    def _insert(self, letters: Letters) -> None:
        state = 0
        for g in letters:
            nxt = self.children[state].get(g)
            if nxt is None:
                nxt = len(self.children)
                self.children[state][g] = nxt
                self.children.append({})
                self.fail.append(0)
                self.dead.append(False)
                self._delta.append({})
            state = nxt
        self.dead[state] = True

    def _link(self) -> None:
        queue: deque[int] = deque()
        for child in self.children[0].values():
            self.fail[child] = 0
            queue.append(child)
        while queue:
            state = queue.popleft()
            for g, child in self.children[state].items():
                f = self.fail[state]
                while f and g not in self.children[f]:
                    f = self.fail[f]
                target = self.children[f].get(g, 0)
                self.fail[child] = target if target != child else 0
                self.dead[child] = self.dead[child] or self.dead[self.fail[child]]
                queue.append(child)

    def step(self, state: int, g: int) -> int:
        cached = self._delta[state].get(g)
        if cached is not None:
            return cached
        s = state
        while s and g not in self.children[s]:
            s = self.fail[s]
        target = self.children[s].get(g, 0)
        self._delta[state][g] = target
        return target

    def accepts(self, letters: Iterable[int]) -> bool:
        state = 0
        for g in letters:
            state = self.step(state, g)
            if self.dead[state]:
                return False
        return True


def _guard_length(p: MonomialPresentation, length: int) -> None:
    # The ideal contains every z_j^{c_j} and every ascending pair, so words
    # longer than the bound cannot survive.
    if length > p.nilpotency_bound + 1:
        raise InvariantViolation(
            "factor-avoiding words exceed the nilpotency bound",
            details={"exponents": list(p.exponents), "length": length},
        )


def kk_basis(p: MonomialPresentation) -> WordBasis:
    """Enumerate the factor-avoiding words in length-lexicographic order."""
    automaton = FactorAutomaton.build(p)
    words: list[Word] = [()]
    hilbert = [1]
    level: list[tuple[Letters, int]] = [((), 0)]
    length = 0
    while level:
        length += 1
        _guard_length(p, length)
        nxt: list[tuple[Letters, int]] = []
        for letters, state in level:
            for g in automaton.alphabet:
                target = automaton.step(state, g)
                if not automaton.dead[target]:
                    nxt.append((letters + (g,), target))
        if nxt:
            hilbert.append(len(nxt))
            words.extend(word_from_letters(letters) for letters, _ in nxt)
        level = nxt
    return WordBasis(words=tuple(words), hilbert=tuple(hilbert))


def hilbert_series(p: MonomialPresentation) -> list[int]:
    """Count basis words by length with the automaton transfer method."""
    automaton = FactorAutomaton.build(p)
    counts: dict[int, int] = {0: 1}
    series = [1]
    length = 0
    while counts:
        length += 1
        _guard_length(p, length)
        nxt: dict[int, int] = {}
        for state, count in counts.items():
            for g in automaton.alphabet:
                target = automaton.step(state, g)
                if not automaton.dead[target]:
                    nxt[target] = nxt.get(target, 0) + count
        if nxt:
            series.append(sum(nxt.values()))
        counts = nxt
    return series


def brute_force_basis(p: MonomialPresentation, max_length: int | None = None) -> WordBasis:
    """Generate-and-filter oracle: extend words letter by letter, test every factor."""
    forbidden = p.forbidden_letters
    limit = p.nilpotency_bound + 1 if max_length is None else max_length
    alphabet = range(1, p.generator_count + 1)

    words: list[Word] = [()]
    hilbert = [1]
    level: list[Letters] = [()]
    for _ in range(limit):
        nxt = []
        for letters in level:
            for g in alphabet:
                candidate = letters + (g,)
                if not any(_contains_factor(candidate, f) for f in forbidden):
                    nxt.append(candidate)
        if not nxt:
            break
        hilbert.append(len(nxt))
        words.extend(word_from_letters(x) for x in nxt)
        level = nxt
    return WordBasis(words=tuple(words), hilbert=tuple(hilbert))


def kk_exponents(r: int, a: int) -> tuple[int, ...]:
    """c_1, ..., c_l from r/(r - a)."""
    if r < 2 or not 0 < a < r or gcd(r, a) != 1:
        raise InvalidInput(
            f"need 2 <= r, 0 < a < r, gcd(r, a) = 1; got r={r}, a={a}",
            details={"r": r, "a": a},
        )
    return hj_expand(r, r - a).terms


def kk_dimension_for_singularity(r: int, a: int) -> int:
    """dim_k of the Kalck-Karmazyn algebra of 1/r(1, a)."""
    return kk_basis(kk_relations(kk_exponents(r, a))).dimension
