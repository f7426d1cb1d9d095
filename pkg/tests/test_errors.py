"""Tests for the qgsmooth exception hierarchy."""

from __future__ import annotations

import pytest

from qgsmooth.errors import (
    DegenerateExpansion,
    InvalidInput,
    InvariantViolation,
    NonIntegralMutation,
    NotClassT,
    NotIsolated,
    QGSmoothError,
    error_text,
)


class TestHierarchy:
    @pytest.mark.parametrize("cls", [DegenerateExpansion, NotIsolated, NotClassT, NonIntegralMutation])
    def test_input_errors_exit_two(self, cls):
        exc = cls("bad")
        assert isinstance(exc, InvalidInput)
        assert exc.exit_code == 2

    def test_invariant_violation_exits_one(self):
        exc = InvariantViolation("broken", details={"r": 5})
        assert isinstance(exc, QGSmoothError)
        assert not isinstance(exc, InvalidInput)
        assert exc.exit_code == 1
        assert exc.details == {"r": 5}

    def test_details_default(self):
        assert InvalidInput("x").details is None


class TestErrorText:
    def test_message(self):
        assert error_text(NotClassT("  1/5(1,1) is not of class T ")) == "1/5(1,1) is not of class T"

    def test_empty_message_falls_back_to_repr(self):
        text = error_text(InvalidInput(""))
        assert text.startswith("InvalidInput")
        assert text.strip()
