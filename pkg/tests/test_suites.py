"""Tests for qgsmooth.suites module (small sweep limits)."""

from __future__ import annotations

import pytest

from qgsmooth.config import VerifyConfig
from qgsmooth.errors import InvalidInput, InvariantViolation
from qgsmooth.reports import verify_report
from qgsmooth.suites import (
    MAX_REPORTED_FAILURES,
    SUITES,
    SuiteResult,
    run_suite,
    run_suites,
    select_suites,
)

SMALL = VerifyConfig(
    cfrac_max_r=40,
    singularity_max_r=7,
    singularity_max_s=3,
    kk_max_r=25,
    oracle_max_r=10,
    descent_max_r=40,
    smoothing_max_r=4,
    smoothing_max_s=4,
    conservation_max_r=5,
    conservation_max_s=3,
    markov_max_entry=200,
    fuzz_words=25,
    fuzz_max_length=8,
    wpp_samples=8,
    wpp_max_weight=12,
)


class TestSuiteResult:
    def test_ok_until_failure(self):
        res = SuiteResult("x")
        assert res.ok
        res.fail("broken")
        assert not res.ok
        assert res.failures == ["broken"]

    def test_failures_are_capped(self):
        res = SuiteResult("x")
        for k in range(MAX_REPORTED_FAILURES + 5):
            res.fail(f"case {k}")
        assert len(res.failures) == MAX_REPORTED_FAILURES
        assert res.details["suppressed_failures"] == 5


class TestSelectSuites:
    def test_all(self):
        assert select_suites("all") == sorted(SUITES)
        assert select_suites(["cfrac", "all"]) == sorted(SUITES)

    def test_sorted_and_deduplicated(self):
        assert select_suites(["wpp", "cfrac", "wpp"]) == ["cfrac", "wpp"]

    def test_unknown(self):
        with pytest.raises(InvalidInput) as excinfo:
            select_suites(["cfrac", "bogus"])
        assert excinfo.value.details == {"unknown": ["bogus"]}

    def test_names(self):
        assert sorted(SUITES) == [
            "cfrac", "conservation", "kkalg", "ktheory", "markov",
            "ncdef", "oracle", "singularity", "smoothing", "wpp",
        ]


class TestSuitesPass:
    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_suite_passes(self, name):
        result = run_suite(name, SMALL)
        assert result.ok, result.failures
        assert result.checked > 0
        assert result.name == name

    def test_markov_details(self):
        result = run_suite("markov", SMALL)
        assert result.details["markov_numbers"] == [1, 2, 5, 13, 29, 34, 89, 169, 194]
        assert len(result.details["block_orbit_sizes"]) == 4

    def test_wpp_block_planes(self):
        result = run_suite("wpp", SMALL)
        assert result.details["block_planes"] > 0

    def test_singularity_decompositions_are_unique(self):
        result = run_suite("singularity", SMALL)
        assert set(result.details["decomposition_multiplicity"]) == {"1"}

    def test_seed_is_reproducible(self):
        first = run_suite("ktheory", SMALL.with_overrides(seed=3))
        second = run_suite("ktheory", SMALL.with_overrides(seed=3))
        assert first.checked == second.checked
        assert first.failures == second.failures


class TestSuiteAbort:
    def test_raising_check_is_recorded(self, monkeypatch):
        def broken(t):
            raise InvariantViolation("descent left the tree", details={"entries": list(t.entries)})

        monkeypatch.setattr("qgsmooth.suites.markov_descent", broken)
        result = run_suite("markov", SMALL)
        assert not result.ok
        assert result.details["aborted"] == "InvariantViolation"
        assert result.failures == ["aborted by InvariantViolation: descent left the tree"]

    def test_other_suites_still_run(self, monkeypatch):
        def rejecting(cfg):
            raise InvalidInput("bad limit")

        monkeypatch.setitem(SUITES, "cfrac", rejecting)
        results = run_suites(["cfrac", "singularity"], SMALL)
        assert [r.name for r in results] == ["cfrac", "singularity"]
        assert results[0].details == {"aborted": "InvalidInput"}
        assert results[1].ok


class TestVerifyReport:
    def test_ordered_and_without_timings(self):
        report = verify_report(["wpp", "cfrac"], SMALL)
        assert report["command"] == "verify"
        assert report["ok"] is True
        assert report["seed"] == 0
        assert [s["name"] for s in report["suites"]] == ["cfrac", "wpp"]
        assert all("seconds" not in s for s in report["suites"])

    def test_run_suites_order(self):
        results = run_suites(["oracle", "kkalg"], SMALL)
        assert [r.name for r in results] == ["kkalg", "oracle"]
