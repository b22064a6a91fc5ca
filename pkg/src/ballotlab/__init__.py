"""Exact enumeration, generating functions and identity checks for ballot permutations."""

from .permcore import (
    EnumerationLimitError, StatTable, ballot_count, ballot_permutations, des, depth,
    eulerian, is_ballot, permutations, pk, stat_table,
)
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "EnumerationLimitError", "StatTable", "VerificationReport", "ballot_count",
    "ballot_permutations", "des", "depth", "eulerian", "is_ballot", "permutations",
    "pk", "stat_table",
]
