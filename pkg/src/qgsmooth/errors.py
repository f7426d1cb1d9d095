"""Exception hierarchy shared by every qgsmooth module."""

from __future__ import annotations

from typing import Any


class QGSmoothError(RuntimeError):
    """Base error. ``details`` is a JSON-able payload for reports."""

    exit_code = 1

    def __init__(self, message: str, details: Any | None = None):
        super().__init__(message)
        self.details = details


class InvalidInput(QGSmoothError):
    """Raised when an argument violates an operation's precondition."""

    exit_code = 2


class DegenerateExpansion(InvalidInput):
    """A continued fraction hit a zero denominator while being evaluated."""


class NotIsolated(InvalidInput):
    """A cyclic quotient weight is not coprime to the group order."""


class NotClassT(InvalidInput):
    """A singular point admits no class T decomposition."""


class NonIntegralMutation(InvalidInput):
    """A block mutation coefficient lambda/gamma or lambda/alpha is not integral."""


class InvariantViolation(QGSmoothError):
    """An exact identity that must hold failed on a concrete instance."""

    exit_code = 1


def error_text(exc: BaseException) -> str:
    """Return a non-empty, user-facing exception string."""
    msg = str(exc).strip()
    if msg:
        return msg
    return f"{type(exc).__name__}: {repr(exc)}"
