"""Truncated multivariate power series in x, y, t, z with exact rational coefficients."""

from .core import InexactDivisionError, Series, TruncationBox, load_dump

__all__ = ["InexactDivisionError", "Series", "TruncationBox", "load_dump"]
