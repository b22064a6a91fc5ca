"""
Cycle structure, odd order permutations and the cyclic statistic M.

>>> cycle_decomposition((2, 3, 1)).cycles
((1, 2, 3),)
>>> M((3, 1, 2))
1
"""

from __future__ import annotations

import json
from collections import Counter
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .permcore import (
    Permutation, StatTable, _check_limit, ballot_permutations, des, eulerian,
    permutations,
)

__all__ = [
    "CycleForm", "OddOrderTable", "cycle_decomposition", "is_odd_order",
    "cdes", "casc", "M", "odd_order_permutations", "odd_order_table",
    "spiro_recurrence_table", "factor_count_ballot", "cyclic_factor_count_odd",
    "ballot_factor_counts", "odd_cyclic_factor_counts", "has_factor",
    "has_cyclic_factor",
]


@dataclass(frozen=True)
class CycleForm:
    """Cycles rotated to start at their minimum, listed by increasing minimum."""
    cycles: tuple[tuple[int, ...], ...]
    n: int

    def to_permutation(self) -> Permutation:
        image = [0] * (self.n + 1)
        for c in self.cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                image[a] = b
        return tuple(image[1:])

    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]


def cycle_decomposition(p: Sequence[int]) -> CycleForm:
    n = len(p)
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = p[v - 1]
        cycles.append(tuple(cycle))
    # scanning starts in increasing order yields min-first, min-sorted cycles
    return CycleForm(tuple(cycles), n)


def is_odd_order(p: Sequence[int]) -> bool:
    return all(len(c) % 2 == 1 for c in cycle_decomposition(p).cycles)


def cdes(c: Sequence[int]) -> int:
    """Cyclic descents of a cycle, reading ``c[-1] -> c[0]`` as the wrap-around step."""
    if not c:
        raise ValueError("a cycle must be nonempty")
    return sum(1 for a, b in zip(c, (*c[1:], c[0])) if a > b)


def casc(c: Sequence[int]) -> int:
    """
    Cyclic ascents, counted literally, so a fixed point has none.

    For cycles of length >= 2 this equals ``len(c) - cdes(c)``.
    """
    if not c:
        raise ValueError("a cycle must be nonempty")
    return sum(1 for a, b in zip(c, (*c[1:], c[0])) if a < b)


def M(p: Sequence[int]) -> int:
    return sum(min(cdes(c), casc(c)) for c in cycle_decomposition(p).cycles)


def odd_order_permutations(n: int) -> Iterator[Permutation]:
    return (p for p in permutations(n) if is_odd_order(p))


@dataclass(frozen=True)
class OddOrderTable:
    """Counts |O_n(d)| of odd order permutations of length n with M = d."""
    entries: Mapping[tuple[int, int], int] = field(repr=False)
    n_max: int

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def row(self, n: int) -> dict[int, int]:
        return {d: c for (m, d), c in sorted(self.entries.items()) if m == n and c}

    def total(self, n: int) -> int:
        return sum(self.row(n).values())

    def as_stat_table(self) -> StatTable:
        entries = {(n, (d,)): c for (n, d), c in self.entries.items() if c}
        return StatTable(("M",), entries, self.n_max)

    def to_csv(self) -> str:
        return self.as_stat_table().to_csv()

    def to_json(self) -> str:
        return self.as_stat_table().to_json()


@lru_cache(maxsize=None)
def _odd_row(n: int) -> dict[int, int]:
    return dict(Counter(M(p) for p in odd_order_permutations(n)))


def odd_order_table(n_max: int) -> OddOrderTable:
    """Enumerate each S_n, keep the odd order permutations, tally M."""
    _check_limit(n_max)
    entries = {}
    for n in range(n_max + 1):
        for d, c in _odd_row(n).items():
            entries[(n, d)] = c
    return OddOrderTable(entries, n_max)


def spiro_recurrence_table(n_max: int) -> OddOrderTable:
    """
    |O_n(d)| from the recurrence

        O_{n+1}(d) = O_n(d) + sum_i sum_{k>=i} 2 C(n, 2k) E(2k, i-1) O_{n-2k}(d-i)

    seeded with O_0(0) = 1.  No permutation is enumerated.
    """
    table: dict[tuple[int, int], int] = {(0, 0): 1}

    def get(n: int, d: int) -> int:
        return table.get((n, d), 0)

    for n in range(n_max):
        # k >= i >= 1 is the summation range; E(2k, i-1) = 0 for i < 1
        for d in range(n + 1):
            total = get(n, d)
            for k in range(1, n // 2 + 1):
                for i in range(1, k + 1):
                    total += 2 * comb(n, 2 * k) * eulerian(2 * k, i - 1) * get(n - 2 * k, d - i)
            if total:
                table[(n + 1, d)] = total
    return OddOrderTable(table, n_max)


# --- factors around the largest letter -------------------------------------

def has_factor(word: Sequence[int], u: Sequence[int]) -> bool:
    k = len(u)
    u = tuple(u)
    return any(tuple(word[s:s + k]) == u for s in range(len(word) - k + 1))


def has_cyclic_factor(p: Sequence[int], u: Sequence[int]) -> bool:
    """Whether ``u`` is a factor of some rotation of some cycle of ``p``."""
    for c in cycle_decomposition(p).cycles:
        if len(c) < len(u):
            continue
        # one unrolled copy covers every rotation's factors of length <= len(c)
        doubled = c + c[:len(u) - 1]
        if has_factor(doubled, u):
            return True
    return False


def _check_factor_domain(n: int, i: int, j: int) -> None:
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1) or i == j:
        raise ValueError(f"need 1 <= i, j <= n-1 and i != j; got n={n}, i={i}, j={j}")


@lru_cache(maxsize=None)
def ballot_factor_counts(n: int) -> dict[tuple[int, int, int], int]:
    """
    Map ``(d, i, j)`` to the number of ballot permutations of length ``n``
    with ``d`` descents containing the factor ``i n j``.
    """
    out: Counter = Counter()
    for p in ballot_permutations(n):
        pos = p.index(n) if n else 0
        if 0 < pos < n - 1:
            out[(des(p), p[pos - 1], p[pos + 1])] += 1
    return dict(out)


@lru_cache(maxsize=None)
def odd_cyclic_factor_counts(n: int) -> dict[tuple[int, int, int], int]:
    """
    Map ``(d, i, j)`` to the number of odd order permutations of length ``n``
    with M = d having ``i n j`` as a cyclic factor.
    """
    out: Counter = Counter()
    for p in odd_order_permutations(n):
        for c in cycle_decomposition(p).cycles:
            if n in c and len(c) >= 3:
                at = c.index(n)
                out[(M(p), c[at - 1], c[(at + 1) % len(c)])] += 1
                break
    return dict(out)


def factor_count_ballot(n: int, d: int, i: int, j: int) -> int:
    if n < 3:
        return 0
    _check_factor_domain(n, i, j)
    return ballot_factor_counts(n).get((d, i, j), 0)


def cyclic_factor_count_odd(n: int, d: int, i: int, j: int) -> int:
    if n < 3:
        return 0
    _check_factor_domain(n, i, j)
    return odd_cyclic_factor_counts(n).get((d, i, j), 0)


def conjecture_records(n: int) -> list[dict]:
    """
    One record per ``(d, j)`` with ``2 <= j <= n-1`` comparing
    ``b(1, j) + b(j, 1)`` against ``2 p(1, j)``.
    """
    records = []
    for d in range(max(n, 1)):
        for j in range(2, n):
            lhs = factor_count_ballot(n, d, 1, j) + factor_count_ballot(n, d, j, 1)
            rhs = 2 * cyclic_factor_count_odd(n, d, 1, j)
            records.append({"n": n, "d": d, "i": 1, "j": j,
                            "lhs": lhs, "rhs": rhs, "equal": lhs == rhs})
    return records


def records_to_jsonl(records: list[dict]) -> str:
    return "".join(json.dumps(r) + "\n" for r in records)
