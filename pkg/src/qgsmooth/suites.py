"""Invariant sweeps behind ``qgsmooth verify``.

Every suite takes a VerifyConfig and returns a SuiteResult; failures are
collected (capped) instead of raised so one run reports every broken case.
"""

from __future__ import annotations

import logging
import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any

from .cfrac import continuant, hj_evaluate, hj_expand, rank_sequence
from .config import VerifyConfig
from .errors import InvalidInput, NotClassT, QGSmoothError, error_text
from .kkalg import (
    brute_force_basis,
    hilbert_series,
    kk_basis,
    kk_exponents,
    kk_relations,
    word_letters,
)
from .ktheory import (
    ChernP2,
    apply_word,
    collection_checks,
    euler_pairing,
    initial_collection,
)
from .markov import (
    P2_BLOCKS,
    BlockStructure,
    brute_force_markov_triples,
    enumerate_block_orbit,
    enumerate_tree,
    is_markov,
    markov_descent,
    markov_numbers,
    mutate_entries,
)
from .ncdef import column_sums, extension_ladder, splitting_type, verify_descent, versal_rank
from .singularity import ClassTData, CyclicQuotient, cartier_index, class_t_decompose, normalize, qg_deformation_data
from .smoothing import build_chain, chain_checks, dimension_conservation
from .wpp import (
    WeightedPlane,
    canonical_degree_squared,
    chi_divisorial,
    hilbert,
    hilbert_coefficients,
    kks_rank_report,
    markov_planes,
)

logger = logging.getLogger(__name__)

MAX_REPORTED_FAILURES = 20

FUZZ_LETTERS = ("L1", "L2", "R1", "R2", "L1", "L2", "R1", "R2", "C", "D", "T1", "T-1", "T3")

# Roots of the block-mutation orbits swept by the markov and wpp suites.
BLOCK_EXAMPLES = (
    ((1, 1, 1), P2_BLOCKS),
    ((1, 1, 1), BlockStructure.from_degree((1, 1, 2), 8)),
    ((1, 1, 1), BlockStructure.from_degree((1, 2, 3), 6)),
    ((2, 1, 1), BlockStructure.from_degree((1, 1, 5), 5)),
)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(message)
        else:
            self.details["suppressed_failures"] = self.details.get("suppressed_failures", 0) + 1


def _coprime_pairs(max_r: int):
    for r in range(2, max_r + 1):
        for a in range(1, r):
            if gcd(r, a) == 1:
                yield r, a


def run_cfrac(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("cfrac")
    duality_limit = min(cfg.cfrac_max_r, 200)
    for r, q in _coprime_pairs(cfg.cfrac_max_r):
        res.checked += 1
        terms = hj_expand(r, q).terms
        if hj_evaluate(terms) != Fraction(r, q):
            res.fail(f"round trip {r}/{q} -> {list(terms)}")
        if continuant(terms) != r or continuant(terms[1:]) != q:
            res.fail(f"continuant quotient {r}/{q}")
        ranks = rank_sequence(terms).values
        if any(x >= y for x, y in zip(ranks, ranks[1:])) or ranks[-1] != continuant(terms):
            res.fail(f"rank sequence {r}/{q}: {list(ranks)}")
        if r <= duality_limit and hj_expand(r, pow(q, -1, r)).terms != tuple(reversed(terms)):
            res.fail(f"inverse weight does not reverse {r}/{q}")
    return res


def run_singularity(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("singularity")
    multiplicity: dict[int, int] = {}
    for r in range(2, cfg.singularity_max_r + 1):
        for a in range(1, r):
            if gcd(r, a) != 1:
                continue
            for s in range(1, cfg.singularity_max_s + 1):
                res.checked += 1
                t = ClassTData(r, a, s)
                q = t.singularity()
                if normalize(normalize(q)) != normalize(q) or normalize(q).order != q.order:
                    res.fail(f"normalize not idempotent on {q.label}")
                matches = class_t_decompose(q)
                multiplicity[len(matches)] = multiplicity.get(len(matches), 0) + 1
                if t not in matches:
                    res.fail(f"{t} missing from the decomposition of {q.label}")
                if any(m.order != q.order for m in matches):
                    res.fail(f"order mismatch in decomposition of {q.label}")
                inverse = CyclicQuotient(q.order, (1, pow(q.weights[1], -1, q.order)))
                if t.swapped() not in class_t_decompose(inverse):
                    res.fail(f"{t.swapped()} missing from the decomposition of {inverse.label}")
                if cartier_index(q) != r:
                    res.fail(f"Cartier index of {q.label} is {cartier_index(q)}, expected {r}")
                eq = qg_deformation_data(t)
                if eq.milnor_number + 1 != len(eq.versal_equation.parameters):
                    res.fail(f"Milnor number of {q.label}")
    res.details["decomposition_multiplicity"] = {str(k): v for k, v in sorted(multiplicity.items())}
    return res


def run_kkalg(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("kkalg")
    for r, a in _coprime_pairs(cfg.kk_max_r):
        res.checked += 1
        p = kk_relations(kk_exponents(r, a))
        # Words are only materialized by the oracle suite; counting is enough here.
        series = hilbert_series(p)
        dimension = sum(series)
        if dimension != r:
            res.fail(f"dim R(1/{r}(1,{a})) = {dimension}")
        if len(series) - 1 > p.nilpotency_bound:
            res.fail(f"word longer than the nilpotency bound for 1/{r}(1,{a})")
        if versal_rank(CyclicQuotient(r, (1, a))) != dimension:
            res.fail(f"versal rank differs from dim R for 1/{r}(1,{a})")
    return res


def run_oracle(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("oracle")
    for r, a in _coprime_pairs(cfg.oracle_max_r):
        res.checked += 1
        exponents = kk_exponents(r, a)
        p = kk_relations(exponents)
        fast = kk_basis(p)
        slow = brute_force_basis(p)
        if fast.words != slow.words or fast.hilbert != slow.hilbert:
            res.fail(f"automaton and brute force disagree on 1/{r}(1,{a})")
        if tuple(hilbert_series(p)) != fast.hilbert:
            res.fail(f"transfer counting disagrees on 1/{r}(1,{a})")
        horizon = min(10, p.nilpotency_bound + 1)
        unreduced = brute_force_basis(kk_relations(exponents, reduce=False), max_length=horizon)
        reduced = brute_force_basis(p, max_length=horizon)
        if {word_letters(w) for w in unreduced.words} != {word_letters(w) for w in reduced.words}:
            res.fail(f"reduction changes the language of 1/{r}(1,{a})")
    return res


def run_ncdef(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("ncdef")
    for r, a in _coprime_pairs(cfg.descent_max_r):
        res.checked += 1
        terms = hj_expand(r, a).terms
        try:
            report = verify_descent(terms)
        except QGSmoothError as exc:
            res.fail(f"descent 1/{r}(1,{a}): {exc}")
            continue
        if report.total_rank != r:
            res.fail(f"ladder rank {report.total_rank} for 1/{r}(1,{a})")
        if extension_ladder(terms).ranks.values != rank_sequence(terms).values:
            res.fail(f"ladder ranks differ from the rank sequence for 1/{r}(1,{a})")
        if r > cfg.oracle_max_r:
            continue
        n = extension_ladder(terms).multiplicities
        for i in range(len(terms) + 1):
            partial = column_sums(terms, n, i)
            for j in range(1, len(terms) + 1):
                weighted = sum(deg * mult for deg, mult in splitting_type(terms, i, j))
                if weighted != partial[j - 1]:
                    res.fail(f"splitting type of G_{i} on E_{j} for 1/{r}(1,{a})")
    return res


def run_markov(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("markov")
    tree = enumerate_tree(cfg.markov_max_entry)
    scanned = brute_force_markov_triples(cfg.markov_max_entry)
    res.checked = len(tree)
    if tree != scanned:
        res.fail(f"tree has {len(tree)} triples, scan has {len(scanned)}")
    for t in sorted(tree):
        if not is_markov(*t.entries):
            res.fail(f"{t.entries} violates the equation")
        if markov_descent(t)[-1].entries != (1, 1, 1):
            res.fail(f"descent from {t.entries} misses the root")
        for index in range(3):
            once = mutate_entries(t.entries, index)
            if not is_markov(*once) or mutate_entries(once, index) != t.entries:
                res.fail(f"mutation at {index} of {t.entries} is not an involution")
    res.details["markov_numbers"] = markov_numbers(tree)

    orbit_sizes = []
    for ranks, block in BLOCK_EXAMPLES:
        orbit = enumerate_block_orbit(ranks, block, cfg.markov_max_entry)
        orbit_sizes.append(len(orbit))
        res.checked += len(orbit)
        for node in orbit:
            if not node.block.satisfied_by(node.ranks):
                res.fail(f"block mutation left the equation at {node.ranks} {node.block.block_sizes}")
    res.details["block_orbit_sizes"] = orbit_sizes
    return res


def _expected_ranks(ranks: tuple[int, ...], letter: str) -> tuple[int, ...]:
    token = letter.upper()
    if token in ("L1", "L2", "R1", "R2"):
        i = int(token[1]) - 1
        replaced = i + 1 if token[0] == "L" else i
        out = list(mutate_entries((ranks[0], ranks[1], ranks[2]), replaced))
        out[i], out[i + 1] = out[i + 1], out[i]
        return tuple(out)
    if token == "C":
        return (ranks[2], ranks[0], ranks[1])
    if token == "D":
        return tuple(reversed(ranks))
    return ranks


def run_ktheory(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("ktheory")
    rng = random.Random(cfg.seed)
    start = initial_collection()
    for _ in range(cfg.fuzz_words):
        word = [rng.choice(FUZZ_LETTERS) for _ in range(rng.randint(1, cfg.fuzz_max_length))]
        res.checked += 1
        steps = apply_word(start, word)
        for letter, before, after in zip(word, steps, steps[1:]):
            report = collection_checks(after)
            if not report.passed:
                res.fail(f"{' '.join(word)}: checks failed after {letter}: {report.checks}")
                break
            if after.ranks != _expected_ranks(before.ranks, letter):
                res.fail(f"{' '.join(word)}: ranks {after.ranks} after {letter} from {before.ranks}")
                break

    for n in range(-20, 21):
        for m in range(n, 21):
            res.checked += 1
            chi = euler_pairing(ChernP2.line_bundle(n), ChernP2.line_bundle(m))
            if chi != Fraction((m - n + 1) * (m - n + 2), 2):
                res.fail(f"chi(O({n}), O({m})) = {chi}")
            if chi != hilbert(WeightedPlane((1, 1, 1)), m - n):
                res.fail(f"chi(O({n}), O({m})) disagrees with the monomial count")
    return res


def _sample_weights(rng: random.Random, count: int, max_weight: int) -> list[tuple[int, int, int]]:
    out = []
    while len(out) < count:
        w = (rng.randint(1, max_weight), rng.randint(1, max_weight), rng.randint(1, max_weight))
        if gcd(w[0], w[1]) == gcd(w[0], w[2]) == gcd(w[1], w[2]) == 1:
            out.append(w)
    return out


def run_wpp(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("wpp")
    rng = random.Random(cfg.seed)
    for weights in _sample_weights(rng, cfg.wpp_samples, cfg.wpp_max_weight):
        res.checked += 1
        p = WeightedPlane(weights)
        total = sum(weights)
        if chi_divisorial(p, 0) != 1:
            res.fail(f"chi(O) = {chi_divisorial(p, 0)} on {p.label}")
        coefficients = hilbert_coefficients(p, 3 * total)
        for n in range(-3 * total, 3 * total + 1):
            if chi_divisorial(p, n) != chi_divisorial(p, -total - n):
                res.fail(f"Serre symmetry fails on {p.label} at n = {n}")
                break
            if n >= 0 and hilbert(p, n) != coefficients[n]:
                res.fail(f"lattice count and series disagree on {p.label} at n = {n}")
                break

    plane = WeightedPlane((1, 1, 1))
    for n in range(-20, 21):
        res.checked += 1
        if chi_divisorial(plane, n) != (n + 1) * (n + 2) // 2:
            res.fail(f"chi(O({n})) on P^2 is {chi_divisorial(plane, n)}")

    planes = markov_planes(cfg.markov_max_entry)
    for mp in planes:
        res.checked += 1
        if not mp.all_wahl:
            res.fail(f"{mp.plane.label} has a non-Wahl point")
        if canonical_degree_squared(mp.plane) != 9:
            res.fail(f"K^2 of {mp.plane.label} is {canonical_degree_squared(mp.plane)}")
    res.details["markov_planes"] = len(planes)

    block_planes = 0
    for ranks, block in BLOCK_EXAMPLES:
        for node in sorted(enumerate_block_orbit(ranks, block, cfg.markov_max_entry), key=lambda m: (m.ranks, m.block.block_sizes)):
            weights = tuple(s * a * a for s, a in zip(node.block.block_sizes, node.ranks))
            if gcd(weights[0], weights[1]) != 1 or gcd(weights[0], weights[2]) != 1 or gcd(weights[1], weights[2]) != 1:
                continue
            res.checked += 1
            block_planes += 1
            plane = WeightedPlane(weights)
            try:
                report = kks_rank_report(plane)
            except NotClassT as exc:
                res.fail(f"{plane.label} from block orbit: {error_text(exc)}")
                continue
            if report.block is None or report.block.lam != block.lam:
                res.fail(f"{plane.label} misses the block equation with lambda = {block.lam}")
            elif report.block_ranks != node.ranks or report.block_sizes != node.block.block_sizes:
                res.fail(f"{plane.label} gives blocks {report.block_sizes} of ranks {report.block_ranks}")
    res.details["block_planes"] = block_planes
    return res


@lru_cache(maxsize=None)
def _chain_checks_passed(r: int, s: int) -> bool:
    # Only r and s enter the form; a = 1 stands in for every a.
    return chain_checks(build_chain(ClassTData(r, 1, s))).passed


def run_smoothing(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("smoothing")
    for r in range(2, cfg.smoothing_max_r + 1):
        for a in range(1, r):
            if gcd(r, a) != 1:
                continue
            for s in range(1, cfg.smoothing_max_s + 1):
                res.checked += 1
                chain = build_chain(ClassTData(r, a, s))
                if len(set(chain.points)) != 1 or chain.points[0] != normalize(CyclicQuotient(r * r, (1, a * r - 1))):
                    res.fail(f"chain points of {(r, a, s)}")
                if not _chain_checks_passed(r, s):
                    res.fail(f"chain checks fail for {(r, a, s)}")
    return res


def run_conservation(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("conservation")
    for r in range(2, cfg.conservation_max_r + 1):
        for a in range(1, r):
            if gcd(r, a) != 1:
                continue
            for s in range(1, cfg.conservation_max_s + 1):
                res.checked += 1
                try:
                    dimension_conservation(ClassTData(r, a, s))
                except QGSmoothError as exc:
                    res.fail(f"{(r, a, s)}: {exc}")
    return res


SUITES: dict[str, Callable[[VerifyConfig], SuiteResult]] = {
    "cfrac": run_cfrac,
    "conservation": run_conservation,
    "kkalg": run_kkalg,
    "ktheory": run_ktheory,
    "markov": run_markov,
    "ncdef": run_ncdef,
    "oracle": run_oracle,
    "singularity": run_singularity,
    "smoothing": run_smoothing,
    "wpp": run_wpp,
}


def select_suites(names: list[str] | str) -> list[str]:
    """Expand ``"all"`` and validate names; the result is sorted."""
    requested = [names] if isinstance(names, str) else list(names)
    if "all" in requested:
        return sorted(SUITES)
    unknown = [n for n in requested if n not in SUITES]
    if unknown:
        raise InvalidInput(
            f"unknown suite(s): {', '.join(unknown)}. Known: all, {', '.join(sorted(SUITES))}",
            details={"unknown": unknown},
        )
    return sorted(set(requested))


def run_suite(name: str, cfg: VerifyConfig) -> SuiteResult:
    """Run one suite; a check that raises ends that suite with a recorded failure."""
    started = time.perf_counter()
    try:
        result = SUITES[name](cfg)
    except QGSmoothError as exc:
        logger.warning("suite %s aborted: %r", name, exc)
        result = SuiteResult(name)
        result.fail(f"aborted by {type(exc).__name__}: {error_text(exc)}")
        result.details["aborted"] = type(exc).__name__
    result.seconds = round(time.perf_counter() - started, 3)
    logger.info(
        "suite %s: %s, %d cases in %.2fs",
        name,
        "ok" if result.ok else f"{len(result.failures)} failure(s)",
        result.checked,
        result.seconds,
    )
    return result


def run_suites(names: list[str] | str, cfg: VerifyConfig) -> list[SuiteResult]:
    """Run the named suites (or ``"all"``) and return results ordered by name."""
    return [run_suite(name, cfg) for name in select_suites(names)]
