"""
Identity checks with brute-force enumeration as the oracle.

Each check returns :class:`VerificationReport` objects; nothing here raises
on a failed identity.  ``CHECKS`` maps the CLI identity names to the checks.
"""

from __future__ import annotations

import math
import re
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import oddorder, permcore, rcmap
from .permcore import ballot_count, eulerian, stat_table
from .report import VerificationReport, timed
from .series import builders as gf
from .series.core import (
    D_trunc, Series, TruncationBox, from_egf_table, integrate_x, ln1p_series,
    reflect_t, reflect_tz, scale_x,
)

__all__ = [
    "CHECKS", "Check", "REFERENCE_ROWS", "bnd_multinomial", "eulerian_catalan_check",
    "OeisBFile", "parse_bfile", "OeisError", "check_oeis", "run_checks",
]


# Rows of small coefficient triangles, as printed in the literature.
REFERENCE_ROWS = {
    "ballot-des": {3: [1, 2], 4: [1, 8], 5: [1, 22, 22], 6: [1, 52, 172],
                   7: [1, 114, 856, 604]},
    "ballot-pk": {5: [1, 28, 16]},
    "perm-depth": {3: [3, 2, 1], 4: [9, 11, 3, 1]},
    "eulerian": {4: [1, 11, 11, 1]},
}


def _row_list(table: permcore.StatTable, n: int) -> list[int]:
    row = table.row(n)
    top = max((v[0] for v in row), default=-1)
    return [row.get((d,), 0) for d in range(top + 1)]


def _series_row(s: Series, n: int, var: str) -> list[int]:
    i = "xytz".index(var)
    row = {m[i]: c * math.factorial(n) for m, c in s.coeffs.items() if m[0] == n}
    top = max(row, default=-1)
    out = []
    for e in range(top + 1):
        c = row.get(e, Fraction(0))
        if c.denominator != 1:
            raise ArithmeticError(f"{n}! * coefficient is not an integer: {c}")
        out.append(c.numerator)
    return out


def _compare_series(report: VerificationReport, got: Series, want: Series,
                    box: TruncationBox | None = None, **where) -> None:
    diffs = got.differences(want, box)
    report.checked += len(got.restrict(box or got.box.meet(want.box))) or 1
    if diffs:
        m, a, b = diffs[0]
        report.fail(monomial=list(m), lhs=a, rhs=b, **where)


# --- individual checks ------------------------------------------------------

def check_bdn(n_max: int = 9, series_n: int = 30) -> VerificationReport:
    report = VerificationReport("bdn", {"n": n_max, "series_n": max(series_n, n_max)})
    with timed(report):
        for n in range(n_max + 1):
            enumerated = sum(1 for _ in permcore.ballot_permutations(n))
            report.expect(enumerated, ballot_count(n), n=n, side="enumeration")
        top = max(series_n, n_max)
        s = gf.gf_ballot_count(TruncationBox(top, 0, 0, 0))
        for n in range(top + 1):
            report.expect(s.coeff((n, 0, 0, 0)) * math.factorial(n), ballot_count(n),
                          n=n, side="series")
    return report


def check_expansions(n_max: int = 7) -> VerificationReport:
    """Reproduce the reference rows from enumeration and from the closed forms."""
    report = VerificationReport("expansions", {"n": n_max})
    with timed(report):
        box = TruncationBox(n_max, n_max, n_max, n_max)
        b_des, b_pk = gf.gf_B_des(box), gf.gf_B_pk(box)
        p_depth, eul = gf.gf_P_depth(box), gf.gf_eulerian(box)
        tables = {
            "ballot-des": (stat_table(n_max, "ballot", ["des"]), b_des, "t"),
            "ballot-pk": (stat_table(n_max, "ballot", ["pk"]), b_pk, "y"),
            "perm-depth": (stat_table(n_max, "all", ["depth"]), p_depth, "z"),
            "eulerian": (stat_table(n_max, "all", ["des"]), eul, "t"),
        }
        for kind, rows in REFERENCE_ROWS.items():
            table, series, var = tables[kind]
            for n, expected in rows.items():
                if n > n_max:
                    continue
                report.expect(_row_list(table, n), expected, kind=kind, n=n, side="enumeration")
                report.expect(_series_row(series, n, var), expected, kind=kind, n=n,
                              side="series")
        report.expect([eulerian(4, d) for d in range(4)], REFERENCE_ROWS["eulerian"][4],
                      kind="eulerian", side="recurrence")
    return report


def check_eulerian(n_max: int = 8) -> VerificationReport:
    report = VerificationReport("eulerian", {"n": n_max})
    with timed(report):
        table = stat_table(n_max, "all", ["des"])
        series = gf.gf_eulerian(TruncationBox(n_max, 0, n_max, 0))
        for n in range(n_max + 1):
            row = [eulerian(n, d) for d in range(max(n, 1))]
            report.expect(row, _row_list(table, n), n=n, side="enumeration")
            report.expect(sum(row), math.factorial(n), n=n, side="row sum")
            if n >= 1:
                report.expect(row, row[::-1], n=n, side="symmetry")
                report.expect(_series_row(series, n, "t"), row, n=n, side="series")
    return report


def check_spiro(n_max: int = 9) -> VerificationReport:
    report = VerificationReport("spiro", {"n": n_max})
    with timed(report):
        ballot = stat_table(n_max, "ballot", ["des"])
        odd = oddorder.odd_order_table(n_max)
        for n in range(n_max + 1):
            b_row = {v[0]: c for v, c in ballot.row(n).items()}
            report.expect(b_row, odd.row(n), n=n)
            if n >= 1:
                report.expect(max(odd.row(n)) <= (n - 1) // 2, True, n=n, side="M bound")
    return report


def check_phi(n_max: int = 7) -> VerificationReport:
    """Round trips of the splitting maps, the descent law and peak additivity."""
    report = VerificationReport("phi", {"n": n_max})
    with timed(report):
        for n in range(1, n_max + 1):
            for p in permcore.permutations(n):
                for split in (rcmap.split_at_first_lowest, rcmap.split_at_last_lowest):
                    pair = split(p)
                    report.expect(rcmap.phi(pair), p, p=p, split=split.__name__)
                    report.expect(permcore.pk(p), permcore.pk(pair.rho) + permcore.pk(pair.tau),
                                  p=p, split=split.__name__, side="peaks")
            for pair in rcmap.valid_split_pairs(n):
                p = rcmap.phi(pair)
                report.expect(permcore.des(p), rcmap.descent_law_rhs(pair),
                              rho=pair.rho, tau=pair.tau, side="descent law")
                rho, tau = pair.rho, pair.tau
                if not rho or (tau and rho[0] > tau[0]):
                    report.expect(rcmap.split_at_first_lowest(p), pair, rho=rho, tau=tau,
                                  side="first lowest")
                if not tau or (rho and rho[0] < tau[0]):
                    report.expect(rcmap.split_at_last_lowest(p), pair, rho=rho, tau=tau,
                                  side="last lowest")
    return report


def check_e17(n_max: int = 9) -> list[VerificationReport]:
    return [rcmap.verify_e17(n) for n in range(n_max + 1)]


def check_rem1(n_max: int = 9) -> list[VerificationReport]:
    """The e17-style recurrence with pk replaced by the zero statistic."""
    return [rcmap.verify_e17(n, stat="zero") for n in range(n_max + 1)]


def check_e21(n_max: int = 8) -> list[VerificationReport]:
    return [rcmap.verify_e21(n) for n in range(n_max + 1)]


def _enumerated(n_max: int, ground: str, stats: list[str], variables: str,
                box: TruncationBox) -> Series:
    table = stat_table(n_max, ground, stats)
    return from_egf_table({(n, *vals): c for (n, vals), c in table.entries.items()},
                          variables, box)


def check_relpkdes(n_max: int = 8) -> VerificationReport:
    """B(xt, y, 1/t) B(x, y, t) = (1 + t) P(x, y, t) - t with enumerated B and P."""
    report = VerificationReport("relpkdes", {"n": n_max})
    with timed(report):
        box = TruncationBox(n_max, n_max, n_max, 0)
        b = _enumerated(n_max, "ballot", ["pk", "des"], "yt", box)
        p = _enumerated(n_max, "all", ["pk", "des"], "yt", box)
        t = Series.var("t", box)
        _compare_series(report, reflect_t(b) * b, (1 + t) * p - t)
    return report


def check_relpkdesmh(n_max: int = 7) -> VerificationReport:
    """B(xzt, y, 1/(z^2 t)) B(x, y, t) = (1 + zt) P(x, y, z, t) - zt."""
    report = VerificationReport("relpkdesmh", {"n": n_max})
    with timed(report):
        box = TruncationBox(n_max, n_max, n_max, n_max)
        b = _enumerated(n_max, "ballot", ["pk", "des"], "yt", box)
        p = _enumerated(n_max, "all", ["pk", "depth", "des"], "yzt", box)
        zt = Series.monomial(box=box, z=1, t=1)
        _compare_series(report, reflect_tz(b) * b, (1 + zt) * p - zt)
    return report


def check_zhuang(n_max: int = 6, degree: int = 10) -> VerificationReport:
    """sum t^(des+1) y^(pk+1) over S_n against ((1+u)/(1+uv))^(n+1) v A_n(v)."""
    report = VerificationReport("zhuang", {"n": n_max, "degree": degree})
    with timed(report):
        box = TruncationBox(0, degree, degree, 0)
        table = stat_table(n_max, "all", ["pk", "des"])
        for n in range(1, n_max + 1):
            lhs = Series.polynomial(
                (((0, k + 1, d + 1, 0), c) for (k, d), c in table.row(n).items()), box)
            _compare_series(report, lhs, gf.zhuang_rhs(n, box), n=n)
    return report


def check_formdespk(n_max: int = 7) -> VerificationReport:
    report = VerificationReport("formdespk", {"n": n_max})
    with timed(report):
        box = TruncationBox(n_max, n_max, n_max, 0)
        _compare_series(report, gf.gf_B_pk_des(box),
                        _enumerated(n_max, "ballot", ["pk", "des"], "yt", box))
    return report


def check_bpk(n_max: int = 9, square_n: int = 8) -> VerificationReport:
    report = VerificationReport("bpk", {"n": n_max, "square_n": square_n})
    with timed(report):
        box = TruncationBox(n_max, n_max, 0, 0)
        b = gf.gf_B_pk(box)
        _compare_series(report, b, _enumerated(n_max, "ballot", ["pk"], "y", box),
                        side="coefficients")
        sq_box = TruncationBox(square_n, square_n, 0, 0)
        p = _enumerated(square_n, "all", ["pk"], "y", sq_box)
        b_sq = b.restrict(sq_box)
        _compare_series(report, b_sq * b_sq, 2 * p - 1, side="square")
    return report


def check_bdes(n_max: int = 9) -> VerificationReport:
    """Closed form, the D^{t,x} route, and the odd-part integral, all against enumeration."""
    report = VerificationReport("bdes", {"n": n_max})
    with timed(report):
        box = TruncationBox(n_max, 0, n_max, 0)
        closed = gf.gf_B_des(box)
        _compare_series(report, closed, _enumerated(n_max, "ballot", ["des"], "t", box),
                        side="enumeration")
        _compare_series(report, gf.gf_B_des_via_D(box), closed, side="D route")
        # D^{t,x} of t * int_0^x (E(u,t) + E(-u,t)) du is the odd-part exponent
        e = gf.gf_eulerian(box)
        t = Series.var("t", box)
        lhs = D_trunc(t * integrate_x(e + scale_x(e, -1)), "t", "x")
        _compare_series(report, lhs, gf.odd_part_exponent(box), side="integral")
        # log(1 + (1+t)E) splits into log B and its reflection
        log_full = ln1p_series((1 + t) * e)
        kept = D_trunc(log_full, "t", "x")
        _compare_series(report, log_full - kept, reflect_t(kept), side="D complement")
    return report


def check_depth(n_max: int = 8) -> VerificationReport:
    report = VerificationReport("depth", {"n": n_max})
    with timed(report):
        box = TruncationBox(n_max, 0, 0, n_max)
        _compare_series(report, gf.gf_P_depth(box),
                        _enumerated(n_max, "all", ["depth"], "z", box))
    return report


def check_recofpnd(n_max: int = 9) -> VerificationReport:
    report = VerificationReport("recofpnd", {"n": n_max})
    with timed(report):
        rec = oddorder.spiro_recurrence_table(n_max)
        odd = oddorder.odd_order_table(n_max)
        for n in range(n_max + 1):
            report.expect(rec.row(n), odd.row(n), n=n)
    return report


def check_dsr_ode(n_max: int = 9, nx: int = 10) -> VerificationReport:
    """The exp form of O(x, t) solves its ODE and matches enumerated |O_n(d)|."""
    report = VerificationReport("dsr-ode", {"n": n_max, "nx": nx})
    with timed(report):
        box = TruncationBox(max(nx, n_max), 0, max(nx, n_max), 0)
        o = gf.gf_O(box)
        residual = gf.ode_residual_O(o)
        report.expect(len(residual), 0, side="ode residual",
                      first=residual.items()[:1])
        odd = oddorder.odd_order_table(n_max)
        want = from_egf_table({(n, d): c for (n, d), c in odd.entries.items()}, "t",
                              box.replace(nx=n_max))
        _compare_series(report, o.restrict(want.box), want, side="enumeration")
    return report


# --- closing multinomial sums -----------------------------------------------

def _compositions(total: int, parts: int, minimum: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` integers >= ``minimum`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first, *rest)


def bnd_multinomial(n: int, d: int) -> int:
    """
    Ballot permutations of length ``n`` with ``d`` descents, as the sum

        sum_{m=1}^{n} sum_{i=0}^{m} sum 2^i n! / ((m-i)! i! prod (2k_j+1)!)
            * E(2k_1, d_1) ... E(2k_i, d_i)

    over ordered k_j >= 1 with sum 2k_j = n - m and ordered
    0 <= d_j <= k_j - 1 with sum d - i.  This is the coefficient extraction of
    exp(x + sum_k 2 E(2k, d) t^(d+1) x^(2k+1) / (2k+1)!).
    """
    if n < 1 or not 0 <= d <= (n - 1) // 2:
        raise ValueError(f"need n >= 1 and 0 <= d <= (n-1)/2, got n={n}, d={d}")
    total = Fraction(0)
    for m in range(1, n + 1):
        if (n - m) % 2:
            continue
        for i in range(0, m + 1):
            base = Fraction(2 ** i * math.factorial(n),
                            math.factorial(m - i) * math.factorial(i))
            for ks in _compositions((n - m) // 2, i, 1):
                weight = base / math.prod(math.factorial(2 * k + 1) for k in ks)
                for ds in _compositions(d - i, i, 0):
                    if any(dj > k - 1 for k, dj in zip(ks, ds)):
                        continue
                    total += weight * math.prod(eulerian(2 * k, dj) for k, dj in zip(ks, ds))
    if total.denominator != 1:
        raise ArithmeticError(f"multinomial sum for (n={n}, d={d}) is not an integer: {total}")
    return total.numerator


def check_bnd_multinomial(n_max: int = 9) -> VerificationReport:
    report = VerificationReport("bnd-multinomial", {"n": n_max})
    with timed(report):
        table = stat_table(n_max, "ballot", ["des"])
        for n in range(1, n_max + 1):
            for d in range((n - 1) // 2 + 1):
                report.expect(bnd_multinomial(n, d), table.count(n, d), n=n, d=d)
    return report


def eulerian_catalan_check(n: int) -> VerificationReport:
    """(n+1) * b_{2n+1}^des(n) = E(2n+1, n), by enumeration and by the multinomial sum."""
    report = VerificationReport("eulerian-catalan", {"n": n})
    with timed(report):
        target = eulerian(2 * n + 1, n)
        if 2 * n + 1 <= permcore.enumeration_limit():
            dyck = sum(1 for p in permcore.ballot_permutations(2 * n + 1)
                       if permcore.des(p) == n)
            report.expect((n + 1) * dyck, target, side="enumeration")
            report.expect(dyck, sum(1 for p in permcore.ballot_permutations(2 * n + 1)
                                    if permcore.is_dyck(p)), side="dyck")
        report.expect((n + 1) * bnd_multinomial(2 * n + 1, n), target, side="multinomial")
    return report


def check_eulerian_catalan(n_max: int = 9) -> list[VerificationReport]:
    """All n >= 1 with 2n + 1 <= n_max."""
    return [eulerian_catalan_check(n) for n in range(1, (n_max - 1) // 2 + 1)]


def check_wz(n_max: int = 8) -> VerificationReport:
    """Evidence for the factor conjecture; a pass means consistent up to n_max."""
    report = VerificationReport("wz", {"n": n_max},
                                note=f"conjecture consistent up to n={n_max} (not a proof)")
    with timed(report):
        for n in range(n_max + 1):
            for rec in oddorder.conjecture_records(n):
                report.expect(rec["lhs"], rec["rhs"], n=n, d=rec["d"], j=rec["j"])
    if not report.passed:
        report.note = "conjecture violated"
    return report


# --- OEIS b-files -----------------------------------------------------------

class OeisError(ValueError):
    """Malformed b-file or a b-file whose offset does not line up."""


@dataclass
class OeisBFile:
    sequence_id: str
    entries: dict[int, int] = field(repr=False)

    @property
    def offset(self) -> int:
        return min(self.entries)

    def terms(self) -> list[int]:
        return [self.entries[i] for i in sorted(self.entries)]


def parse_bfile(text: str, sequence_id: str | None = None) -> OeisBFile:
    """Parse ``index value`` lines; ``#`` starts a comment."""
    entries: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(re.fullmatch(r"-?\d+", p) for p in parts):
            raise OeisError(f"line {lineno}: expected 'index value', got {line!r}")
        idx, value = int(parts[0]), int(parts[1])
        if idx in entries:
            raise OeisError(f"line {lineno}: duplicate index {idx}")
        entries[idx] = value
    if not entries:
        raise OeisError("b-file has no entries")
    indices = sorted(entries)
    if indices != list(range(indices[0], indices[0] + len(indices))):
        raise OeisError("b-file indices are not contiguous")
    return OeisBFile(sequence_id or "unknown", entries)


def _triangle(rows: Callable[[int], list[int]], count: int) -> list[int]:
    out: list[int] = []
    n = 1
    while len(out) < count:
        out.extend(rows(n))
        n += 1
    return out[:count]


def _ballot_des_rows(count: int) -> Callable[[int], list[int]]:
    # enough rows of the closed-form series to cover ``count`` triangle entries
    n_rows = 1
    while sum((n + 1) // 2 for n in range(1, n_rows + 1)) < count:
        n_rows += 1
    series = gf.gf_B_des(TruncationBox(n_rows, 0, n_rows, 0))
    return lambda n: _series_row(series, n, "t")


def _expected_terms(sequence_id: str, count: int) -> tuple[list[int], int]:
    """Artifact-computed terms and the index the first of them carries."""
    if sequence_id == "A000246":
        s = gf.gf_ballot_count(TruncationBox(count, 0, 0, 0))
        return [int(s.coeff((n, 0, 0, 0)) * math.factorial(n)) for n in range(count)], 0
    if sequence_id == "A008292":
        return _triangle(lambda n: [eulerian(n, d) for d in range(n)], count), 1
    if sequence_id == "A321280":
        return _triangle(_ballot_des_rows(count), count), 1
    raise OeisError(f"no artifact values for {sequence_id}; supported: A000246, A008292, A321280")


def check_oeis(sequence_id: str, path: str | Path) -> VerificationReport:
    report = VerificationReport(f"oeis:{sequence_id}", {"path": str(path)})
    with timed(report):
        bfile = parse_bfile(Path(path).read_text(), sequence_id)
        expected, offset = _expected_terms(sequence_id, len(bfile.entries))
        if bfile.offset != offset:
            raise OeisError(f"{sequence_id}: b-file starts at index {bfile.offset}, "
                            f"expected offset {offset}")
        report.parameters["terms"] = len(expected)
        for idx, (got, want) in enumerate(zip(bfile.terms(), expected), start=offset):
            if not report.expect(got, want, index=idx):
                break
    return report


# --- registry ---------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    description: str
    default_n: int
    run: Callable[[int], VerificationReport | list[VerificationReport]]
    enumerates: bool = True


CHECKS: dict[str, Check] = {c.name: c for c in [
    Check("bdn", "ballot permutation counts: enumeration and EGF vs double factorials", 9, check_bdn),
    Check("expansions", "printed rows of B^des, B^pk, P^depth and E(x,t)", 7, check_expansions),
    Check("eulerian", "Eulerian recurrence vs enumeration, symmetry, row sums, EGF", 8, check_eulerian),
    Check("spiro", "descents over ballot = M over odd order permutations", 9, check_spiro),
    Check("phi", "reversal-concatenation round trips, descent law, peak additivity", 7, check_phi),
    Check("e17", "(pk, des) recurrence between S_n and ballot permutations", 9, check_e17),
    Check("rem1", "the same recurrence with the zero statistic in place of pk", 9, check_rem1),
    Check("e21", "(pk, depth, des) recurrence", 8, check_e21),
    Check("relpkdes", "B(xt,y,1/t) B(x,y,t) = (1+t)P - t as series", 8, check_relpkdes),
    Check("relpkdesmh", "B(xzt,y,1/(z^2 t)) B = (1+zt)P - zt as series", 7, check_relpkdesmh),
    Check("zhuang", "(des, pk) polynomial of S_n via u, v and A_n(v)", 6, check_zhuang),
    Check("formdespk", "closed form of B^(pk,des) via u, v, w and D^{t,x}", 7, check_formdespk),
    Check("bpk", "closed form of B^pk and B^pk squared = 2P^pk - 1", 9, check_bpk),
    Check("bdes", "closed form of B^des, D route, odd-part integral", 9, check_bdes),
    Check("depth", "closed form of P^depth", 8, check_depth),
    Check("recofpnd", "odd order recurrence vs enumeration", 9, check_recofpnd),
    Check("dsr-ode", "O(x,t) solves its ODE and matches enumeration", 9, check_dsr_ode),
    Check("bnd-multinomial", "multinomial sum for b_n^des(d)", 9, check_bnd_multinomial),
    Check("eulerian-catalan", "(n+1) b_{2n+1}^des(n) = E(2n+1, n)", 9, check_eulerian_catalan),
    Check("wz", "factor conjecture around the largest letter (evidence only)", 8, check_wz),
]}


def run_checks(names: list[str] | None = None, n_max: int | None = None
               ) -> Iterator[VerificationReport]:
    for name in names or list(CHECKS):
        check = CHECKS[name]
        result = check.run(check.default_n if n_max is None else n_max)
        yield from (result if isinstance(result, list) else [result])
