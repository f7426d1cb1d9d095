"""Exact invariants of Q-Gorenstein smoothings of class T singularities."""

__all__ = ["__version__"]
__version__ = "0.1.0"
