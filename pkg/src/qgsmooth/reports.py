"""Report builders shared by the CLI and the MCP server.

Each builder returns an insertion-ordered dict whose leaves are ints, bools,
strings, Fractions or sympy expressions; formatters.to_jsonable turns the
last two into strings.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

from .cfrac import continuant, dual_terms, hj_expand, rank_sequence
from .config import VerifyConfig
from .errors import NotClassT, error_text
from .kkalg import format_word, hilbert_series, kk_basis, kk_exponents, kk_relations
from .ktheory import ChernP2, NumericalCollection, apply_word, collection_checks, initial_collection
from .markov import (
    BlockStructure,
    MarkovTriple,
    brute_force_markov_triples,
    enumerate_block_orbit,
    enumerate_tree,
    markov_descent,
    markov_numbers,
    mutate,
)
from .ncdef import deg_matrix, ladder_for_singularity, splitting_type, verify_descent, versal_rank
from .singularity import (
    ClassTData,
    CyclicQuotient,
    cartier_index,
    class_t_decompose,
    format_ambient,
    format_equation,
    normalize,
    qg_deformation_data,
)
from .smoothing import (
    DivisorClass,
    blowup_sequence,
    build_chain,
    canonical_functional,
    chain_checks,
    chain_chi,
    dimension_conservation,
    factored_family,
    flop,
    is_isometry,
    orthogonality_closure,
)
from .suites import SuiteResult, run_suites
from .wpp import (
    RankReport,
    WeightedPlane,
    canonical_degree_squared,
    chi_divisorial,
    cone_case_study,
    hilbert,
    kks_rank_report,
    markov_planes,
    resolution_data,
    singular_locus,
)

SCHEMA_VERSION = 1


def envelope(command: str, body: dict[str, Any]) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "command": command, **body}


def _class_t(t: ClassTData | None) -> dict[str, int] | None:
    if t is None:
        return None
    return {"r": t.r, "a": t.a, "s": t.s}


def _chern(x: ChernP2) -> dict[str, Any]:
    return {"rank": x.rank, "degree": x.degree, "ch2": x.ch2}


def hj_report(n: int, q: int) -> dict[str, Any]:
    e = hj_expand(n, q)
    return envelope("hj", {
        "terms": list(e.terms),
        "value": e.value,
        "length": e.length,
        "continuant": continuant(e.terms),
        "ranks": list(rank_sequence(e.terms).values),
        "dual_terms": list(dual_terms(n, q)),
        "singularity": singularity_report(n, q),
    })


def kk_report(r: int, a: int, *, words: bool = True) -> dict[str, Any]:
    p = kk_relations(kk_exponents(r, a))
    basis = kk_basis(p)
    body: dict[str, Any] = {
        "singularity": CyclicQuotient(r, (1, a)).label,
        "exponents": list(p.exponents),
        "relations": [format_word(w) for w in p.forbidden],
        "dimension": basis.dimension,
        "hilbert": list(hilbert_series(p)),
        "nilpotency_bound": p.nilpotency_bound,
        "versal_rank": versal_rank(CyclicQuotient(r, (1, a))),
    }
    if words:
        body["basis"] = [format_word(w) for w in basis.words]
    return envelope("kk", body)


def ncdef_report(r: int, a: int) -> dict[str, Any]:
    ladder = ladder_for_singularity(r, a)
    terms = ladder.terms
    descent = verify_descent(terms)
    split = [
        {"i": i, "j": i + 1, "type": [list(pair) for pair in splitting_type(terms, i, i + 1)]}
        for i in range(len(terms))
    ]
    return envelope("ncdef", {
        "singularity": CyclicQuotient(r, (1, a)).label,
        "terms": list(terms),
        "ranks": list(ladder.ranks.values),
        "ext_dims": list(ladder.ext_dims),
        "multiplicities": list(ladder.multiplicities),
        "deg_matrix": [list(row) for row in deg_matrix(terms).rows],
        "column_sums": list(descent.column_sums),
        "rank": ladder.rank,
        "descent_ok": descent.ok,
        "splitting_types": split,
    })


def markov_report(
    max_entry: int,
    *,
    triple: Sequence[int] | None = None,
    block_sizes: Sequence[int] | None = None,
    k_squared: int | None = None,
) -> dict[str, Any]:
    tree = enumerate_tree(max_entry)
    body: dict[str, Any] = {
        "max_entry": max_entry,
        "count": len(tree),
        "triples": [list(t.entries) for t in sorted(tree)],
        "markov_numbers": markov_numbers(tree),
        "matches_scan": tree == brute_force_markov_triples(max_entry),
    }
    if triple is not None:
        t = MarkovTriple(tuple(triple))
        body["triple"] = {
            "entries": list(t.entries),
            "neighbours": [list(mutate(t, k).entries) for k in (1, 2, 3)],
            "descent": [list(x.entries) for x in markov_descent(t)],
        }
    if block_sizes is not None:
        block = BlockStructure.from_degree(tuple(block_sizes), k_squared or 9)
        start = tuple(triple) if triple is not None else (1, 1, 1)
        orbit = enumerate_block_orbit(start, block, max_entry)
        body["block_orbit"] = {
            "block_sizes": list(block.block_sizes),
            "k_squared": block.k_squared,
            "lambda": block.lam,
            "members": sorted([list(m.ranks), list(m.block.block_sizes)] for m in orbit),
        }
    return envelope("markov", body)


def _collection(c: NumericalCollection) -> dict[str, Any]:
    report = collection_checks(c)
    return {
        "members": [_chern(x) for x in c.members],
        "ranks": list(report.ranks),
        "gram_upper": list(report.upper_gram),
        "checks": dict(report.checks),
    }


def mutate_report(word: Sequence[str]) -> dict[str, Any]:
    steps = apply_word(initial_collection(), list(word))
    labels = ["start", *word]
    return envelope("mutate", {
        "word": list(word),
        "steps": [{"letter": label, **_collection(c)} for label, c in zip(labels, steps)],
        "passed": all(collection_checks(c).passed for c in steps),
    })


def _block_equation(report: RankReport) -> dict[str, Any] | None:
    if report.block is None:
        return None
    return {
        "block_sizes": list(report.block_sizes),
        "ranks": list(report.block_ranks),
        "lambda": report.block.lam,
        "holds": report.block.satisfied_by(report.block_ranks),
    }


def _rank_report(p: WeightedPlane) -> dict[str, Any]:
    report = kks_rank_report(p)
    return {
        "ranks": list(report.ranks),
        "k_squared": report.k_squared,
        "block_equation": _block_equation(report),
        "rows": [
            {
                "vertex": row.vertex,
                "weight": row.weight,
                "singularity": row.singularity.label if row.singularity else None,
                "class_t": _class_t(row.class_t),
                "du_val": row.du_val,
                "rank": row.rank,
                "bundles": row.bundle_count,
                "bundle_rank": row.bundle_rank,
                "multiplicity": row.multiplicity,
            }
            for row in report.rows
        ],
    }


def wpp_report(weights: Sequence[int], span: int = 10) -> dict[str, Any]:
    p = WeightedPlane(tuple(weights))
    resolution = resolution_data(p)
    body: dict[str, Any] = {
        "plane": p.label,
        "canonical_degree": p.canonical_degree,
        "k_squared": canonical_degree_squared(p),
        "hilbert": [hilbert(p, n) for n in range(span + 1)],
        "chi": {str(n): chi_divisorial(p, n) for n in range(-span, span + 1)},
        "singular_locus": [{"vertex": v, "type": q.label} for v, q in singular_locus(p)],
        "resolution": {
            "chains": [{"vertex": pt.vertex, "terms": list(pt.terms)} for pt in resolution.points],
            "collection_length": resolution.collection_length,
            "twisting_integer": resolution.twisting_integer,
        },
    }
    try:
        body["rank_report"] = _rank_report(p)
    except NotClassT as exc:
        body["rank_report"] = None
        body["not_class_t"] = error_text(exc)
    return envelope("wpp", body)


def cone_report(d: int) -> dict[str, Any]:
    study = cone_case_study(d)
    body: dict[str, Any] = {
        "plane": study.plane.label,
        "vertex": study.vertex.label,
        "kk_dimension": study.kk_dimension,
        "universal_extension": study.universal_extension,
        "ladder_ranks": list(study.ladder.ranks.values),
        "class_t": _class_t(study.class_t),
    }
    if study.class_t is not None:
        conservation = study.conservation
        body["rank_report"] = _rank_report(study.plane)
        body["conservation"] = {
            "kk_dimension": conservation.kk_dimension,
            "matrix_dimension": conservation.matrix_dimension,
            "blocks": list(conservation.blocks),
        }
        body["deformed_collection"] = _collection(study.collection)
        body["extension_pairing"] = study.extension_pairing
    return envelope("wpp", body)


def markov_planes_report(max_entry: int) -> dict[str, Any]:
    planes = markov_planes(max_entry)
    return envelope("wpp", {
        "max_entry": max_entry,
        "planes": [
            {
                "triple": list(mp.triple.entries),
                "plane": mp.plane.label,
                "k_squared": canonical_degree_squared(mp.plane),
                "points": [
                    {"vertex": v, "type": q.label, "class_t": _class_t(t)}
                    for v, q, t in mp.points
                ],
                "all_wahl": mp.all_wahl,
            }
            for mp in planes
        ],
    })


def smooth_report(r: int, a: int, s: int) -> dict[str, Any]:
    t = ClassTData(r, a, s)
    chain = build_chain(t)
    size = s + 1
    eq = qg_deformation_data(t)
    checks = chain_checks(chain)
    closure = orthogonality_closure(s)
    conservation = dimension_conservation(t)

    flops = []
    for i in chain.interior:
        flops.append({
            "i": i,
            "images": [list(flop(chain, i, DivisorClass.basis(s, k)).coefficients) for k in range(size)],
            "isometry": is_isometry(chain, i),
        })
    return envelope("smooth", {
        "class_t": _class_t(t),
        "singularity": t.singularity().label,
        "wahl": t.is_wahl,
        "points": [q.label for q in chain.points],
        "curves": list(chain.curves),
        "form": chain.form.tolist(),
        "canonical_functional": list(canonical_functional(chain)),
        "flops": flops,
        "checks": {
            "involution": checks.involution,
            "isometry": checks.isometry,
            "interchange": checks.interchange,
            "sign_switch": checks.sign_switch,
            "canonical": checks.canonical,
            "closure": checks.closure,
        },
        "closure": {
            "initial": [list(pair) for pair in closure.initial],
            "pairs": [list(pair) for pair in closure.closure],
            "rounds": closure.rounds,
            "complete": closure.complete,
        },
        "chain_chi": [[i, j, chain_chi(i, j)] for i in range(1, s + 1) for j in range(i + 1, s + 1)],
        "conservation": {
            "expansion": list(conservation.expansion),
            "kk_dimension": conservation.kk_dimension,
            "versal_rank": conservation.versal_rank,
            "matrix_dimension": conservation.matrix_dimension,
            "blocks": list(conservation.blocks),
        },
        "deformation": {
            "ambient": format_ambient(eq.cover_equation),
            "cover": format_equation(eq.cover_equation),
            "versal": format_equation(eq.versal_equation),
            "milnor_number": eq.milnor_number,
            "factored": factored_family(t),
        },
        "blowups": [
            {
                "before": step.before.singularity().label,
                "wahl": step.wahl.singularity().label,
                "remaining": step.remaining.singularity().label,
            }
            for step in blowup_sequence(t)
        ],
        "bundle_fingerprint": {"rank": r, "degree_on_curve": -1, "multiplicity": r},
    })


def singularity_report(n: int, q: int) -> dict[str, Any]:
    point = normalize(CyclicQuotient(n, (1, q)))
    matches = class_t_decompose(point)
    return {
        "type": point.label,
        "cartier_index": cartier_index(point),
        "class_t": [_class_t(t) for t in matches],
    }


def _suite(result: SuiteResult) -> dict[str, Any]:
    return {
        "name": result.name,
        "ok": result.ok,
        "checked": result.checked,
        "failures": list(result.failures),
        "details": dict(result.details),
    }


def verify_report(suites: Sequence[str] | str, cfg: VerifyConfig) -> dict[str, Any]:
    results = run_suites(suites if isinstance(suites, str) else list(suites), cfg)
    return verify_envelope(results, cfg)


def verify_envelope(results: Sequence[SuiteResult], cfg: VerifyConfig) -> dict[str, Any]:
    results = sorted(results, key=lambda r: r.name)
    return envelope("verify", {
        "ok": all(r.ok for r in results),
        "seed": cfg.seed,
        "suites": [_suite(r) for r in results],
    })
