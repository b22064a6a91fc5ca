"""
The reversal-concatenation map ``(rho, tau) -> reverse(rho) + tau`` and
its two inverse splittings at the first and last lowest positions.

>>> phi(SplitPair((3, 4, 1), (2, 6, 5)))
(1, 4, 3, 2, 6, 5)
>>> split_at_first_lowest((1, 4, 3, 2, 6, 5))
SplitPair(rho=(3, 4, 1), tau=(2, 6, 5))
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .permcore import (
    Permutation, STATISTICS, StatTable, ballot_permutations, des, is_ballot,
    lowest_positions, pk, reverse, stat_table, standardize,
)
from .report import VerificationReport, timed

__all__ = [
    "SplitPair", "phi", "split_at_first_lowest", "split_at_last_lowest",
    "descent_law_rhs", "valid_split_pairs", "verify_e17", "verify_e21",
    "binomial_row",
]


@dataclass(frozen=True)
class SplitPair:
    rho: tuple[int, ...]
    tau: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        object.__setattr__(self, "tau", tuple(self.tau))

    @property
    def n(self) -> int:
        return len(self.rho) + len(self.tau)

    def validate(self) -> None:
        word = self.rho + self.tau
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{self!r}: rho+tau is not a permutation of 1..{len(word)}")
        for name, part in (("rho", self.rho), ("tau", self.tau)):
            if not is_ballot(standardize(part)):
                raise ValueError(f"{self!r}: {name} does not standardize to a ballot permutation")


def phi(pair: SplitPair) -> Permutation:
    pair.validate()
    return reverse(pair.rho) + pair.tau


def _split(p: Sequence[int], cut: int) -> SplitPair:
    p = tuple(p)
    return SplitPair(reverse(p[:cut]), p[cut:])


def split_at_first_lowest(p: Sequence[int]) -> SplitPair:
    """Cut just before the first lowest position."""
    if not p:
        raise ValueError("cannot split the empty permutation")
    return _split(p, min(lowest_positions(p)) - 1)


def split_at_last_lowest(p: Sequence[int]) -> SplitPair:
    """Cut just after the last lowest position."""
    if not p:
        raise ValueError("cannot split the empty permutation")
    return _split(p, max(lowest_positions(p)))


def descent_law_rhs(pair: SplitPair) -> int:
    """Predicted ``des(phi(pair))`` from the descents of the two halves."""
    rho, tau = pair.rho, pair.tau
    boundary = not rho or (bool(tau) and rho[0] > tau[0])
    return len(rho) - 1 - des(standardize(rho)) + des(standardize(tau)) + int(boundary)


def valid_split_pairs(n: int):
    """Every SplitPair of total length ``n``: choose the letters of rho, then ballot orders."""
    letters = range(1, n + 1)
    for l in range(n + 1):
        for chosen in combinations(letters, l):
            rest = [v for v in letters if v not in chosen]
            for sr in ballot_permutations(l):
                rho = tuple(chosen[i - 1] for i in sr)
                for st in ballot_permutations(n - l):
                    yield SplitPair(rho, tuple(rest[i - 1] for i in st))


def binomial_row(n: int) -> list[int]:
    """Row ``n`` of Pascal's triangle, built additively."""
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


def _zero(p: Sequence[int]) -> int:
    return 0


# statistics allowed in place of pk in the e17-style recurrence
_E17_STATS: dict[str, Callable[[Sequence[int]], int]] = {"pk": pk, "zero": _zero}


def _table(n: int, ground: str, stat: str, with_depth: bool = False) -> StatTable:
    if stat == "pk":
        stats = ("pk", "depth", "des") if with_depth else ("pk", "des")
        return stat_table(n, ground, stats)
    # the zero statistic: reuse the des-only table with a constant first column
    base = stat_table(n, ground, ("depth", "des") if with_depth else ("des",))
    entries = {(m, (0, *vals)): c for (m, vals), c in base.entries.items()}
    return StatTable(("zero", *base.stat_names), entries, n)


def verify_e17(n: int, stat: str = "pk") -> VerificationReport:
    """
    Check, for every ``(k, d)``,

        p_n(k, d) + p_n(k, d-1) = sum_{l,i,j} C(n, l) b_l(i, j) b_{n-l}(k-i, d-l+j)

    with ``p`` over S_n and ``b`` over ballot permutations, both tallied for
    the pair ``(stat, des)``.  The triple ``(n, k, d) = (0, 0, 1)`` is skipped.
    """
    if stat not in _E17_STATS:
        raise KeyError(f"statistic {stat!r} not supported; choose from {sorted(_E17_STATS)}")
    report = VerificationReport("e17" if stat == "pk" else f"e17[{stat}]", {"n": n})
    with timed(report):
        perms = _table(n, "all", stat)
        ballot = _table(n, "ballot", stat)
        binom = binomial_row(n)
        rhs: dict[tuple[int, int], int] = defaultdict(int)
        for l in range(n + 1):
            left, right = ballot.row(l), ballot.row(n - l)
            for (i, j), c1 in left.items():
                for (ki, dj), c2 in right.items():
                    # ki = k - i and dj = d - l + j
                    rhs[(i + ki, dj + l - j)] += binom[l] * c1 * c2
        p = perms.row(n)
        for k in range(n + 1):
            for d in range(n + 2):
                if (n, k, d) == (0, 0, 1):
                    continue
                lhs = p.get((k, d), 0) + p.get((k, d - 1), 0)
                report.expect(lhs, rhs.get((k, d), 0), k=k, d=d)
        # nothing may land outside the grid
        stray = [key for key in rhs if not (0 <= key[0] <= n and 0 <= key[1] <= n + 1)]
        if stray:
            report.fail(lhs=0, rhs=rhs[stray[0]], k=stray[0][0], d=stray[0][1])
    return report


def verify_e21(n: int) -> VerificationReport:
    """
    Check, for every ``(k, h, d)``,

        p_n(k, h, d) + p_n(k, h-1, d-1)
            = sum_{i,j} C(n, 2i+h) b_{2i+h}(j, i) b_{n-2i-h}(k-j, d-i-h)

    where ``p`` tallies (pk, depth, des) over S_n and ``b`` tallies (pk, des)
    over ballot permutations.  ``(n, k, h, d) = (0, 0, 1, 1)`` is skipped.
    """
    report = VerificationReport("e21", {"n": n})
    with timed(report):
        perms = _table(n, "all", "pk", with_depth=True)
        ballot = _table(n, "ballot", "pk")
        binom = binomial_row(n)
        rhs: dict[tuple[int, int, int], int] = defaultdict(int)
        for l in range(n + 1):
            left, right = ballot.row(l), ballot.row(n - l)
            for (j, i), c1 in left.items():
                h = l - 2 * i
                if h < 0:
                    continue
                for (kj, dih), c2 in right.items():
                    rhs[(j + kj, h, dih + i + h)] += binom[l] * c1 * c2
        p = perms.row(n)
        for k in range(n + 1):
            for h in range(n + 2):
                for d in range(n + 2):
                    if (n, k, h, d) == (0, 0, 1, 1):
                        continue
                    lhs = p.get((k, h, d), 0) + p.get((k, h - 1, d - 1), 0)
                    report.expect(lhs, rhs.get((k, h, d), 0), k=k, h=h, d=d)
        stray = [key for key in rhs
                 if not all(0 <= e <= n + 1 for e in key)]
        if stray:
            report.fail(lhs=0, rhs=rhs[stray[0]], k=stray[0][0], h=stray[0][1], d=stray[0][2])
    return report


def statistic(name: str) -> Callable[[Sequence[int]], int]:
    return _E17_STATS.get(name) or STATISTICS[name]
