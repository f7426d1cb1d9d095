"""Tests for qgsmooth.wpp module."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgsmooth.errors import InvalidInput, NotClassT
from qgsmooth.markov import MarkovTriple
from qgsmooth.singularity import ClassTData, CyclicQuotient
from qgsmooth.wpp import (
    WeightedPlane,
    canonical_degree_squared,
    chi_divisorial,
    cone_case_study,
    hilbert,
    hilbert_coefficients,
    is_du_val,
    kks_rank_report,
    markov_planes,
    resolution_data,
    _block_structure,
    singular_locus,
)

CONE = WeightedPlane.of(1, 1, 4)
MARKOV_125 = WeightedPlane.of(1, 4, 25)


@st.composite
def planes(draw, max_weight: int = 30):
    w1 = draw(st.integers(min_value=1, max_value=max_weight))
    w2 = draw(st.integers(min_value=1, max_value=max_weight).filter(lambda x: gcd(x, w1) == 1))
    w3 = draw(st.integers(min_value=1, max_value=max_weight).filter(lambda x: gcd(x, w1 * w2) == 1))
    return WeightedPlane.of(w1, w2, w3)


# ======================================================================
# WeightedPlane
# ======================================================================

class TestWeightedPlane:
    def test_label(self):
        assert MARKOV_125.label == "P(1,4,25)"
        assert MARKOV_125.canonical_degree == -30

    def test_not_coprime(self):
        with pytest.raises(InvalidInput):
            WeightedPlane.of(2, 4, 1)

    def test_non_positive(self):
        with pytest.raises(InvalidInput):
            WeightedPlane.of(0, 1, 1)

    def test_k_squared(self):
        assert canonical_degree_squared(CONE) == 9
        assert canonical_degree_squared(MARKOV_125) == 9
        assert canonical_degree_squared(WeightedPlane.of(1, 2, 3)) == 6
        assert canonical_degree_squared(WeightedPlane.of(1, 1, 5)) == Fraction(49, 5)


# ======================================================================
# hilbert / chi_divisorial
# ======================================================================

class TestHilbert:
    def test_cone(self):
        assert hilbert(CONE, 4) == 6
        assert hilbert(CONE, 1) == 2
        assert hilbert(CONE, 0) == 1
        assert hilbert(CONE, -3) == 0

    def test_p2_closed_form(self):
        p2 = WeightedPlane.of(1, 1, 1)
        for n in range(30):
            assert hilbert(p2, n) == (n + 1) * (n + 2) // 2

    def test_generating_function(self):
        p = WeightedPlane.of(3, 5, 7)
        coeffs = hilbert_coefficients(p, 60)
        assert [hilbert(p, n) for n in range(61)] == coeffs
        assert coeffs[:8] == [1, 0, 0, 1, 0, 1, 1, 1]

    @settings(max_examples=50)
    @given(planes())
    def test_lattice_count_matches_series(self, p):
        assert [hilbert(p, n) for n in range(41)] == hilbert_coefficients(p, 40)


class TestChi:
    def test_cone(self):
        assert chi_divisorial(CONE, -1) == 0
        assert chi_divisorial(CONE, -6) == 1
        assert chi_divisorial(CONE, 0) == 1

    @settings(max_examples=50)
    @given(planes(), st.integers(min_value=-60, max_value=60))
    def test_serre_symmetry(self, p, n):
        assert chi_divisorial(p, n) == chi_divisorial(p, p.canonical_degree - n)


# ======================================================================
# Singular points and resolution data
# ======================================================================

class TestSingularLocus:
    def test_markov_plane(self):
        assert singular_locus(MARKOV_125) == [
            (2, CyclicQuotient(4, (1, 1))),
            (3, CyclicQuotient(25, (1, 4))),
        ]

    def test_p2_is_smooth(self):
        assert singular_locus(WeightedPlane.of(1, 1, 1)) == []

    def test_resolution_data(self):
        data = resolution_data(MARKOV_125)
        assert [pt.terms for pt in data.points] == [(4,), (7, 2, 2, 2)]
        assert data.collection_length == 8
        assert data.twisting_integer == 1

    def test_twisting_integer(self):
        data = resolution_data(WeightedPlane.of(2, 3, 5))
        # least m with 2 | m and m = 1 mod 5
        assert data.twisting_integer == 6


class TestRankReport:
    def test_markov_plane(self):
        report = kks_rank_report(MARKOV_125)
        assert report.ranks == (1, 4, 25)
        assert [row.class_t for row in report.rows] == [None, ClassTData(2, 1, 1), ClassTData(5, 1, 1)]
        assert [row.bundle_rank for row in report.rows] == [1, 2, 5]
        assert report.k_squared == 9

    def test_rank_conservation(self):
        report = kks_rank_report(WeightedPlane.of(1, 8, 27))
        assert [row.class_t for row in report.rows[1:]] == [ClassTData(2, 1, 2), ClassTData(3, 1, 3)]
        for row in report.rows:
            assert row.bundle_count * row.bundle_rank * row.multiplicity == row.rank == row.weight

    def test_not_class_t(self):
        with pytest.raises(NotClassT):
            kks_rank_report(WeightedPlane.of(1, 1, 5))


class TestBlockEquation:
    def test_markov_plane(self):
        report = kks_rank_report(MARKOV_125)
        assert report.block_sizes == (1, 1, 1)
        assert report.block_ranks == (1, 2, 5)
        assert report.block.lam == 3
        assert report.block.satisfied_by(report.block_ranks)

    def test_cone(self):
        # 1 + 1 + 4 = 3 * 1 * 1 * 2
        report = kks_rank_report(WeightedPlane.of(1, 1, 4))
        assert report.block.lam == 3
        assert report.block_ranks == (1, 1, 2)

    def test_degree_eight_with_a1_point(self):
        # 1 + 2 * 1 + 9 = 4 * 1 * 1 * 3
        report = kks_rank_report(WeightedPlane.of(1, 2, 9))
        assert report.k_squared == 8
        assert report.block_sizes == (1, 2, 1)
        assert report.block_ranks == (1, 1, 3)
        assert report.block.lam == 4
        a1 = report.rows[1]
        assert a1.du_val
        assert a1.class_t is None
        assert a1.bundle_count * a1.bundle_rank * a1.multiplicity == a1.rank == 2

    def test_degree_six(self):
        report = kks_rank_report(WeightedPlane.of(1, 8, 27))
        assert report.k_squared == 6
        assert report.block_sizes == (1, 2, 3)
        assert report.block_ranks == (1, 2, 3)
        assert report.block.lam == 6

    def test_du_val_plane(self):
        report = kks_rank_report(WeightedPlane.of(1, 2, 3))
        assert [row.du_val for row in report.rows] == [False, True, True]
        assert report.block_sizes == (1, 2, 3)
        assert report.block.lam == 6

    def test_fractional_degree_has_no_block_equation(self):
        assert _block_structure(WeightedPlane.of(1, 1, 5), (1, 1, 5), (1, 1, 1)) is None

    @pytest.mark.parametrize(
        "q,expected",
        [
            (CyclicQuotient(2, (1, 1)), True),
            (CyclicQuotient(5, (1, 4)), True),
            (CyclicQuotient(5, (2, 3)), True),
            (CyclicQuotient(4, (1, 1)), False),
            (CyclicQuotient(5, (1, 1)), False),
        ],
    )
    def test_is_du_val(self, q, expected):
        assert is_du_val(q) is expected


class TestMarkovPlanes:
    def test_prefix(self):
        planes_ = markov_planes(5)
        assert [mp.plane.label for mp in planes_] == ["P(1,1,1)", "P(1,1,4)", "P(1,4,25)"]
        assert planes_[2].triple == MarkovTriple.of(1, 2, 5)

    def test_all_wahl_and_degree_nine(self):
        for mp in markov_planes(1000):
            assert mp.all_wahl, mp.plane.label
            assert canonical_degree_squared(mp.plane) == 9


# ======================================================================
# cone_case_study
# ======================================================================

class TestConeCaseStudy:
    def test_class_t_cone(self):
        study = cone_case_study(4)
        assert study.class_t == ClassTData(2, 1, 1)
        assert study.universal_extension == 3
        assert study.kk_dimension == 4
        assert study.extension_pairing == 3
        assert study.collection_report is not None and study.collection_report.passed
        assert study.collection.ranks == (1, 2, 1)
        assert study.conservation is not None and study.conservation.ok
        assert study.rank_report.ranks == (1, 1, 4)

    @pytest.mark.parametrize("d", [2, 3, 5, 9])
    def test_other_cones(self, d):
        study = cone_case_study(d)
        assert study.class_t is None
        assert study.rank_report is None
        assert study.collection is None
        assert study.kk_dimension == d
        assert study.ladder.ranks.values == (1, d)

    def test_degree_one(self):
        with pytest.raises(InvalidInput):
            cone_case_study(1)
