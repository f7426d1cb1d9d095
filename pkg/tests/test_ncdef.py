"""Tests for qgsmooth.ncdef module."""

from __future__ import annotations

from math import gcd

import pytest

from qgsmooth.cfrac import hj_expand, rank_sequence
from qgsmooth.errors import InvalidInput
from qgsmooth.ncdef import (
    column_sums,
    deg_matrix,
    extension_ladder,
    ladder_for_singularity,
    splitting_type,
    verify_descent,
    versal_rank,
)
from qgsmooth.singularity import ClassTData, CyclicQuotient


class TestDegMatrix:
    def test_two_terms(self):
        m = deg_matrix([5, 2])
        assert m.rows == ((4, 0), (-1, 1), (0, -1))
        assert m.entry(1, 2) == 1
        assert m.column(1) == (4, -1, 0)

    def test_single_term(self):
        assert deg_matrix([4]).rows == ((3,), (-1,))

    def test_all_twos(self):
        assert deg_matrix([2, 2, 2]).rows == (
            (1, 0, 0),
            (-1, 1, 0),
            (0, -1, 1),
            (0, 0, -1),
        )

    def test_far_rows_use_d_minus_two(self):
        m = deg_matrix([3, 4, 5])
        assert m.entry(0, 3) == 3
        assert m.entry(0, 2) == 3
        assert m.entry(1, 3) == 4

    def test_rejects_one(self):
        with pytest.raises(InvalidInput):
            deg_matrix([3, 1])


class TestExtensionLadder:
    def test_cone(self):
        ladder = extension_ladder([4])
        assert ladder.ranks.values == (1, 4)
        assert ladder.ext_dims == (3,)
        assert ladder.multiplicities == (1, 3)
        assert ladder.rank == 4

    def test_two_terms(self):
        ladder = extension_ladder([5, 2])
        assert ladder.ranks.values == (1, 5, 9)
        assert ladder.ext_dims == (4, 4)
        assert ladder.multiplicities == (1, 4, 4)

    def test_all_twos(self):
        ladder = extension_ladder([2, 2, 2])
        assert ladder.ranks.values == (1, 2, 3, 4)
        assert ladder.ext_dims == (1, 1, 1)
        assert ladder.multiplicities == (1, 1, 1, 1)

    def test_for_singularity(self):
        assert ladder_for_singularity(9, 2).terms == (5, 2)

    @pytest.mark.parametrize("r", [7, 12, 25, 64])
    def test_ranks_agree_with_continuants(self, r):
        for a in range(1, r):
            if gcd(r, a) != 1:
                continue
            terms = hj_expand(r, a).terms
            ladder = extension_ladder(terms)
            assert ladder.ranks == rank_sequence(terms)
            assert ladder.rank == r
            assert sum(ladder.multiplicities) == r


class TestSplittingType:
    def test_trivial_on_earlier_curves(self):
        assert splitting_type([5, 2], 2, 1) == ((0, 9),)

    def test_next_curve(self):
        assert splitting_type([5, 2], 1, 2) == ((0, 1), (1, 4))

    def test_first_step(self):
        assert splitting_type([4], 0, 1) == ((3, 1),)

    @pytest.mark.parametrize("i,j", [(-1, 1), (3, 1), (0, 0), (0, 3)])
    def test_out_of_range(self, i, j):
        with pytest.raises(InvalidInput):
            splitting_type([5, 2], i, j)

    def test_degree_sum_matches_column_sums(self):
        terms = hj_expand(31, 7).terms
        ladder = extension_ladder(terms)
        m = len(terms)
        for i in range(m + 1):
            sums = column_sums(terms, ladder.multiplicities, i)
            for j in range(i + 1, m + 1):
                pairs = splitting_type(terms, i, j)
                assert sum(k for _, k in pairs) == ladder.ranks[i]
                assert sum(deg * k for deg, k in pairs) == sums[j - 1]


class TestDescent:
    def test_two_terms(self):
        report = verify_descent([5, 2])
        assert report.column_sums == (0, 0)
        assert report.total_rank == 9
        assert report.ok

    def test_column_sums_before_last_step(self):
        # G_1 for [5, 2] still has degree 1 on E_2 with multiplicity 4
        assert column_sums([5, 2], (1, 4, 4), 1) == (0, 4)

    @pytest.mark.parametrize("r", [2, 3, 10, 30, 101])
    def test_every_expansion_descends(self, r):
        for a in range(1, r):
            if gcd(r, a) == 1:
                assert verify_descent(hj_expand(r, a).terms).expected_rank == r

    def test_versal_rank(self):
        assert versal_rank(ClassTData(2, 1, 2)) == 8
        assert versal_rank(CyclicQuotient(9, (1, 2))) == 9
