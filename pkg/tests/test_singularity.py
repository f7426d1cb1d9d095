"""Tests for qgsmooth.singularity module."""

from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgsmooth.errors import InvalidInput, NotIsolated
from qgsmooth.singularity import (
    ClassTData,
    CyclicQuotient,
    cartier_index,
    class_t_decompose,
    format_ambient,
    format_equation,
    normalize,
    qg_deformation_data,
)


@st.composite
def class_t_data(draw, max_r: int = 30, max_s: int = 10):
    r = draw(st.integers(min_value=2, max_value=max_r))
    a = draw(st.integers(min_value=1, max_value=r - 1).filter(lambda a: gcd(a, r) == 1))
    s = draw(st.integers(min_value=1, max_value=max_s))
    return ClassTData(r, a, s)


# ======================================================================
# CyclicQuotient / normalize
# ======================================================================

class TestNormalize:
    def test_rescales_first_weight(self):
        assert normalize(CyclicQuotient(9, (2, 1))) == CyclicQuotient(9, (1, 5))

    def test_already_normal(self):
        q = CyclicQuotient(8, (1, 3))
        assert normalize(q) == q

    def test_not_isolated(self):
        with pytest.raises(NotIsolated):
            normalize(CyclicQuotient(25, (5, 1)))

    def test_second_weight_not_isolated(self):
        with pytest.raises(NotIsolated):
            normalize(CyclicQuotient(12, (1, 4)))

    def test_not_isolated_is_invalid_input(self):
        with pytest.raises(InvalidInput):
            normalize(CyclicQuotient(25, (1, 10)))

    def test_order_too_small(self):
        with pytest.raises(InvalidInput):
            CyclicQuotient(1, (1, 1))

    def test_weights_reduced(self):
        assert CyclicQuotient(5, (6, -1)).weights == (1, 4)
        assert CyclicQuotient(5, (1, 4)).label == "1/5(1,4)"

    @given(class_t_data())
    def test_idempotent(self, t):
        q = CyclicQuotient(t.order, (t.weight, 1))
        once = normalize(q)
        assert normalize(once) == once
        assert once.order == q.order


# ======================================================================
# class_t_decompose
# ======================================================================

class TestClassTDecompose:
    def test_wahl_cone(self):
        assert class_t_decompose(CyclicQuotient(4, (1, 1))) == [ClassTData(2, 1, 1)]

    def test_t_singularity(self):
        assert class_t_decompose(CyclicQuotient(8, (1, 3))) == [ClassTData(2, 1, 2)]

    def test_nine(self):
        assert class_t_decompose(CyclicQuotient(9, (1, 2))) == [ClassTData(3, 1, 1)]

    def test_square_free_order(self):
        assert class_t_decompose(CyclicQuotient(5, (1, 1))) == []

    def test_not_class_t(self):
        # 1/9(1,1) has index 9 and is not of the form 1/9(1, 3a - 1)
        assert class_t_decompose(CyclicQuotient(9, (1, 1))) == []

    def test_inverse_weight_gives_complementary_a(self):
        # 1/25(1,14) is 1/25(1,9) with the coordinates swapped
        assert pow(9, -1, 25) == 14
        assert class_t_decompose(CyclicQuotient(25, (1, 14))) == [ClassTData(5, 3, 1)]
        assert ClassTData(5, 3, 1).swapped() == ClassTData(5, 2, 1)

    @given(class_t_data())
    def test_inverse_weight_matches_swapped_data(self, t):
        inverse = CyclicQuotient(t.order, (1, pow(t.weight, -1, t.order)))
        assert t.swapped() in class_t_decompose(inverse)
        assert t.swapped().swapped() == t

    @given(class_t_data())
    def test_round_trip(self, t):
        matches = class_t_decompose(t.singularity())
        assert t in matches
        for m in matches:
            assert m.r ** 2 * m.s == t.order

    @given(class_t_data())
    def test_cartier_index_is_r(self, t):
        assert cartier_index(t.singularity()) == t.r


class TestClassTData:
    def test_properties(self):
        t = ClassTData(2, 1, 2)
        assert t.order == 8
        assert t.weight == 3
        assert not t.is_wahl
        assert t.singularity().label == "1/8(1,3)"

    def test_wahl(self):
        assert ClassTData(3, 1, 1).is_wahl

    @pytest.mark.parametrize("r,a,s", [(1, 0, 1), (4, 2, 1), (3, 3, 1), (3, 1, 0)])
    def test_invalid(self, r, a, s):
        with pytest.raises(InvalidInput):
            ClassTData(r, a, s)


# ======================================================================
# qg_deformation_data
# ======================================================================

class TestDeformationData:
    def test_t_singularity(self):
        d = qg_deformation_data(ClassTData(2, 1, 2))
        assert format_equation(d.cover_equation) == "xy = z^4"
        assert format_ambient(d.cover_equation) == "1/2(1,1,1)"
        assert format_equation(d.versal_equation) == "xy = z^4 + t_0 + t_1*z^2"
        assert d.versal_equation.parameters == ("t_0", "t_1")
        assert d.milnor_number == 1

    def test_wahl_cone(self):
        d = qg_deformation_data(ClassTData(2, 1, 1))
        assert format_equation(d.versal_equation) == "xy = z^2 + t_0"
        assert d.milnor_number == 0
        assert d.is_wahl

    def test_five_two(self):
        d = qg_deformation_data(ClassTData(5, 2, 1))
        assert format_equation(d.cover_equation) == "xy = z^5"
        assert format_ambient(d.cover_equation) == "1/5(1,4,2)"
        assert format_equation(d.versal_equation) == "xy = z^5 + t_0"

    @given(class_t_data())
    def test_parameter_count(self, t):
        d = qg_deformation_data(t)
        assert d.milnor_number + 1 == len(d.versal_equation.parameters) == t.s
