"""
Permutations in one-line notation and their linear statistics.

A permutation of ``[n]`` is a plain tuple of the integers ``1..n``; every
statistic also accepts any word of distinct integers, since descents, peaks
and prefix heights only depend on relative order.

>>> des((5, 6, 4, 1, 3, 2, 7)), depth((5, 6, 4, 1, 3, 2, 7))
(3, 1)
>>> sorted(lowest_positions((5, 6, 4, 1, 3, 2, 7)))
[4, 6]
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from collections import Counter
from collections.abc import Callable, Iterator, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

__all__ = [
    "Permutation", "EnumerationLimitError", "StatTable", "EulerianTable",
    "as_permutation", "enumeration_limit",
    "des", "asc", "height", "prefix_heights", "depth", "lowest_positions",
    "is_ballot", "is_dyck", "pk", "reverse", "standardize",
    "permutations", "ballot_permutations", "ballot_count",
    "STATISTICS", "stat_table", "eulerian", "eulerian_table",
]

# one-line notation, values 1..n
Permutation = tuple[int, ...]

GroundSet = Literal["all", "ballot"]

DEFAULT_ENUM_LIMIT = 10
ENUM_LIMIT_ENV = "BALLOTLAB_ENUM_LIMIT"


class EnumerationLimitError(ValueError):
    """Raised when an exhaustive enumeration would exceed the configured limit."""


def enumeration_limit() -> int:
    """Largest n for which S_n may be enumerated; overridable via the environment."""
    raw = os.environ.get(ENUM_LIMIT_ENV)
    if raw is None:
        return DEFAULT_ENUM_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENUM_LIMIT_ENV} must be an integer, got {raw!r}") from None


def _check_limit(n: int) -> None:
    if n < 0:
        raise ValueError(f"length must be nonnegative, got {n}")
    limit = enumeration_limit()
    if n > limit:
        raise EnumerationLimitError(
            f"n={n} exceeds the enumeration limit {limit} (set {ENUM_LIMIT_ENV} to override)")


def as_permutation(word: Sequence[int]) -> Permutation:
    """Validate ``word`` as a permutation of ``1..len(word)`` and return it as a tuple."""
    p = tuple(word)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"{p!r} is not a permutation of 1..{len(p)}")
    return p


# --- linear statistics ------------------------------------------------------

def des(p: Sequence[int]) -> int:
    return sum(1 for a, b in zip(p, p[1:]) if a > b)


def asc(p: Sequence[int]) -> int:
    return sum(1 for a, b in zip(p, p[1:]) if a < b)


def height(p: Sequence[int]) -> int:
    """Ascents minus descents; 0 for the empty permutation."""
    return asc(p) - des(p)


def prefix_heights(p: Sequence[int]) -> list[int]:
    """
    Heights of the prefixes ``p[:1], p[:2], ..., p[:n]``.

    >>> prefix_heights((5, 6, 4, 1, 3, 2, 7))
    [0, 1, 0, -1, 0, -1, 0]
    """
    if not p:
        raise ValueError("the empty permutation has no nonempty prefixes")
    heights = [0]
    h = 0
    for a, b in zip(p, p[1:]):
        h += 1 if a < b else -1
        heights.append(h)
    return heights


def depth(p: Sequence[int]) -> int:
    if not p:
        return 0
    return -min(prefix_heights(p))


def lowest_positions(p: Sequence[int]) -> set[int]:
    """1-based positions whose prefix height attains the minimum."""
    heights = prefix_heights(p)
    low = min(heights)
    return {i for i, h in enumerate(heights, start=1) if h == low}


def is_ballot(p: Sequence[int]) -> bool:
    h = 0
    for a, b in zip(p, p[1:]):
        h += 1 if a < b else -1
        if h < 0:
            return False
    return True


def is_dyck(p: Sequence[int]) -> bool:
    return is_ballot(p) and height(p) == 0


def pk(p: Sequence[int]) -> int:
    # interior positions only, so words of length <= 2 have no peaks
    return sum(1 for a, b, c in zip(p, p[1:], p[2:]) if a < b > c)


def reverse(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(p))


def standardize(w: Sequence[int]) -> Permutation:
    """
    The permutation of ``[len(w)]`` order-isomorphic to ``w``.

    >>> standardize((2, 6, 5))
    (1, 3, 2)
    """
    rank = {v: i for i, v in enumerate(sorted(w), start=1)}
    if len(rank) != len(w):
        raise ValueError(f"word {tuple(w)!r} has repeated entries")
    return tuple(rank[v] for v in w)


STATISTICS: dict[str, Callable[[Sequence[int]], int]] = {
    "des": des,
    "asc": asc,
    "pk": pk,
    "depth": depth,
    "height": height,
}


# --- enumeration ------------------------------------------------------------

def permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order."""
    _check_limit(n)
    return itertools.permutations(range(1, n + 1))


def ballot_permutations(n: int, first: int | None = None) -> Iterator[Permutation]:
    """
    Ballot permutations of length ``n`` in lexicographic order.

    Prefixes whose height has gone negative are pruned, so this touches far
    fewer than n! words.  ``first`` restricts to permutations starting with
    that letter (used to partition work).
    """
    _check_limit(n)
    if n == 0:
        yield ()
        return
    word: list[int] = []
    unused = [True] * (n + 1)

    def extend(h: int) -> Iterator[Permutation]:
        if len(word) == n:
            yield tuple(word)
            return
        last = word[-1]
        for v in range(1, n + 1):
            if not unused[v]:
                continue
            nh = h + 1 if v > last else h - 1
            if nh < 0:
                continue
            unused[v] = False
            word.append(v)
            yield from extend(nh)
            word.pop()
            unused[v] = True

    starts = range(1, n + 1) if first is None else [first]
    for v in starts:
        unused[v] = False
        word.append(v)
        yield from extend(0)
        word.pop()
        unused[v] = True


def _double_factorial(n: int) -> int:
    # (-1)!! = 0!! = 1
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def ballot_count(n: int) -> int:
    """Closed-form number of ballot permutations of length ``n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n % 2 == 0:
        return _double_factorial(n - 1) ** 2
    return _double_factorial(n) * _double_factorial(n - 2)


# --- joint distributions ----------------------------------------------------

def _row_counts(n: int, ground: str, stats: tuple[str, ...],
                first: int | None = None) -> Counter:
    funcs = [STATISTICS[s] for s in stats]
    if ground == "ballot":
        source = ballot_permutations(n, first)
    elif first is None:
        source = permutations(n)
    else:
        rest = [v for v in range(1, n + 1) if v != first]
        source = ((first, *q) for q in itertools.permutations(rest))
    counts: Counter = Counter()
    for p in source:
        counts[tuple(f(p) for f in funcs)] += 1
    return counts


@lru_cache(maxsize=None)
def _cached_row(n: int, ground: str, stats: tuple[str, ...], workers: int) -> dict:
    _check_limit(n)
    if workers <= 1 or n < 2:
        return dict(_row_counts(n, ground, stats))
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_row_counts, itertools.repeat(n), itertools.repeat(ground),
                         itertools.repeat(stats), range(1, n + 1))
        for part in parts:
            total.update(part)
    return dict(total)


@dataclass(frozen=True)
class StatTable:
    """
    Exact joint distribution counts, keyed by ``(n, values)`` where ``values``
    is a tuple aligned with ``stat_names``.
    """
    stat_names: tuple[str, ...]
    entries: Mapping[tuple[int, tuple[int, ...]], int] = field(repr=False)
    n_max: int

    def row(self, n: int) -> dict[tuple[int, ...], int]:
        return {vals: c for (m, vals), c in self.entries.items() if m == n}

    def count(self, n: int, *values: int) -> int:
        return self.entries.get((n, tuple(values)), 0)

    def total(self, n: int) -> int:
        return sum(self.row(n).values())

    def merge(self, other: StatTable) -> StatTable:
        """Add counts; used to combine tables built over a partition of the ground set."""
        if self.stat_names != other.stat_names:
            raise ValueError("cannot merge tables over different statistics")
        merged = Counter(self.entries)
        merged.update(other.entries)
        return StatTable(self.stat_names, dict(merged), max(self.n_max, other.n_max))

    def rows(self) -> list[tuple[int, tuple[int, ...], int]]:
        """Canonical order: by n, then value tuple lexicographically."""
        return [(n, vals, c) for (n, vals), c in sorted(self.entries.items())]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", *self.stat_names, "count"])
        for n, vals, c in self.rows():
            writer.writerow([n, *vals, c])
        return buf.getvalue()

    def to_json(self) -> str:
        records = []
        for n, vals, c in self.rows():
            rec = {"n": n}
            rec.update(zip(self.stat_names, vals))
            rec["count"] = c
            records.append(rec)
        return json.dumps(records, indent=1)

    @classmethod
    def from_csv(cls, text: str) -> StatTable:
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header[0] != "n" or header[-1] != "count":
            raise ValueError(f"unexpected header {header!r}")
        entries = {}
        for rec in reader:
            vals = [int(v) for v in rec]
            entries[(vals[0], tuple(vals[1:-1]))] = vals[-1]
        n_max = max((n for n, _ in entries), default=0)
        return cls(tuple(header[1:-1]), entries, n_max)


def stat_table(n_max: int, ground_set: GroundSet, stats: Sequence[str],
               workers: int = 1) -> StatTable:
    """
    Joint distribution of ``stats`` over S_n or B_n for every ``n <= n_max``.

    Rows are memoized per ``(n, ground_set, stats)``; ``workers > 1``
    partitions each S_n by first letter across processes.
    """
    stats = tuple(stats)
    unknown = [s for s in stats if s not in STATISTICS]
    if unknown:
        raise KeyError(f"unknown statistic(s) {unknown}; choose from {sorted(STATISTICS)}")
    if ground_set not in ("all", "ballot"):
        raise ValueError(f"ground set must be 'all' or 'ballot', got {ground_set!r}")
    _check_limit(n_max)
    entries = {}
    for n in range(n_max + 1):
        for vals, c in _cached_row(n, ground_set, stats, workers).items():
            entries[(n, vals)] = c
    return StatTable(stats, entries, n_max)


# --- Eulerian numbers -------------------------------------------------------

@lru_cache(maxsize=None)
def eulerian(n: int, d: int) -> int:
    """
    Number of permutations of ``[n]`` with ``d`` descents, extended by zero.

    E(0, 0) = 1, and E(n, d) = 0 whenever n < 0, d < 0, d > n, or d = n >= 1.

    >>> [eulerian(4, d) for d in range(4)]
    [1, 11, 11, 1]
    """
    if n < 0 or d < 0 or d > n or (d == n and n >= 1):
        return 0
    if n == 0:
        return 1
    return (d + 1) * eulerian(n - 1, d) + (n - d) * eulerian(n - 1, d - 1)


@dataclass(frozen=True)
class EulerianTable:
    entries: Mapping[tuple[int, int], int] = field(repr=False)
    n_max: int
    # entries outside 0 <= d <= n-1 (and (0, 0)) are zero by convention
    zero_extended: bool = True

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def row(self, n: int) -> list[int]:
        if n == 0:
            return [1]
        return [self[n, d] for d in range(n)]

    def polynomial(self, n: int) -> list[int]:
        """Coefficients of the Eulerian polynomial A_n(t), lowest degree first."""
        return self.row(n)


def eulerian_table(n_max: int) -> EulerianTable:
    entries = {(0, 0): 1}
    for n in range(1, n_max + 1):
        for d in range(n):
            entries[(n, d)] = eulerian(n, d)
    return EulerianTable(entries, n_max)
