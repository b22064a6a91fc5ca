"""
The fourteen acceptance criteria, each an exact comparison with zero tolerance.

Every criterion prints one ``acceptance NN PASS|FAIL`` line.  Run directly
(``python3 tests/test_acceptance.py``) for just those lines, or under pytest,
where the lines are repeated in the terminal summary.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from ballotlab import verify as V
from ballotlab.report import VerificationReport
from ballotlab.series import builders as gf
from ballotlab.series.core import (
    Series, TruncationBox, exp_series, ln1p_series, sqrt_series,
)

DATA = Path(__file__).parent / "data"
RESULTS: list[str] = []


def _flatten(*results) -> list[VerificationReport]:
    out = []
    for r in results:
        out.extend(r if isinstance(r, list) else [r])
    return out


def c01():
    return _flatten(V.check_bdn(9, series_n=30))


def c02():
    return _flatten(V.check_expansions(7))


def c03():
    return _flatten(V.check_spiro(9))


def c04():
    return _flatten(V.check_e17(9), V.check_e21(8))


def c05():
    return _flatten(V.check_relpkdes(8))


def c06():
    return _flatten(V.check_formdespk(7))


def c07():
    return _flatten(V.check_zhuang(6))


def c08():
    return _flatten(V.check_bpk(9, square_n=8))


def c09():
    return _flatten(V.check_depth(8))


def c10():
    return _flatten(V.check_recofpnd(9), V.check_dsr_ode(9, nx=10))


def c11():
    return _flatten(V.check_bnd_multinomial(9), V.check_eulerian_catalan(9))


def c12():
    return _flatten(V.check_wz(8))


def c13():
    reports = []
    minimum = {"A000246": 15, "A008292": sum(range(1, 9)), "A321280": sum((n + 1) // 2 for n in range(1, 8))}
    for seq, name in [("A000246", "b000246.txt"), ("A008292", "b008292.txt"),
                      ("A321280", "b321280.txt")]:
        r = V.check_oeis(seq, DATA / name)
        r.expect(r.parameters.get("terms", 0) >= minimum[seq], True, side="enough terms")
        reports.append(r)
    return reports


def _random_series(rng: random.Random, box: TruncationBox, constant=None) -> Series:
    terms = {}
    for _ in range(rng.randint(0, 7)):
        m = tuple(rng.randint(0, b) for b in box.bounds)
        terms[m] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    if constant is not None:
        terms[(0, 0, 0, 0)] = constant
    return Series(terms, box)


def _series_properties(cases: int = 1200, seed: int = 20240) -> VerificationReport:
    report = VerificationReport("series-properties", {"cases": cases, "seed": seed})
    rng = random.Random(seed)
    box = TruncationBox(3, 2, 2, 1)
    one = Series.constant(1, box)
    for case in range(cases):
        kind = case % 4
        if kind == 0:
            a, b, c = (_random_series(rng, box) for _ in range(3))
            report.expect((a * b) * c, a * (b * c), case=case, law="associativity")
            report.expect(a * (b + c), a * b + a * c, case=case, law="distributivity")
            report.expect(a * b, b * a, case=case, law="commutativity")
        elif kind == 1:
            a = _random_series(rng, box, constant=Fraction(0))
            report.expect(ln1p_series(exp_series(a) - 1), a, case=case, law="ln(exp)")
            report.expect(exp_series(ln1p_series(a)), 1 + a, case=case, law="exp(ln)")
        elif kind == 2:
            a = _random_series(rng, box, constant=Fraction(rng.randint(1, 5), rng.randint(1, 3)))
            report.expect(sqrt_series(a * a), a, case=case, law="sqrt(square)")
        else:
            a = _random_series(rng, box, constant=Fraction(rng.choice([-3, -1, 2, 5]), 2))
            report.expect(a / a, one, case=case, law="inverse")
    return report


def _guard_soundness() -> VerificationReport:
    report = VerificationReport("guard-soundness", {"box": 10, "guard": "4 vs 6"})
    box = TruncationBox(10, 10, 10, 0)
    for name in ["u", "v", "w", "P_pk_des", "B_pk_des"]:
        base = gf.BUILDERS[name](box)
        wide = gf.BUILDERS[name](box.replace(guard=6))
        report.expect(base.agrees_with(wide), True, builder=name)
    return report


def c14():
    return _flatten(V.check_phi(7), _series_properties(), _guard_soundness())


CRITERIA = [
    (1, "ballot counts by enumeration (n<=9) and EGF (n<=30)", c01, 60),
    (2, "printed expansions of B^des, B^pk, P^depth, E", c02, 10),
    (3, "b_n^des(d) = |O_n(d)| for n<=9", c03, 300),
    (4, "e17 for n<=9 and e21 for n<=8", c04, 300),
    (5, "B(xt,y,1/t) B = (1+t)P - t to x^8", c05, 30),
    (6, "closed form B^(pk,des) vs enumeration, n<=7", c06, 60),
    (7, "(des, pk) over S_n via u, v for 1<=n<=6", c07, 60),
    (8, "B^pk squared = 2P^pk - 1 to x^8; coefficients n<=9", c08, 60),
    (9, "closed form P^depth vs enumeration, n<=8", c09, 60),
    (10, "odd order recurrence n<=9 and ODE residual zero", c10, 60),
    (11, "multinomial sum n<=9 and Eulerian-Catalan 2n+1<=9", c11, 60),
    (12, "factor conjecture consistent for n<=8", c12, 300),
    (13, "OEIS A000246, A008292, A321280 b-files", c13, 10),
    (14, "round trips, descent law, series laws, guard soundness", c14, 120),
]


def run_criterion(number: int, label: str, fn, budget: float) -> tuple[bool, str]:
    start = time.perf_counter()
    reports = fn()
    elapsed = time.perf_counter() - start
    failed = [r for r in reports if not r.passed]
    ok = not failed and elapsed < budget
    detail = f"{elapsed:.2f}s of {budget}s"
    if failed:
        detail += f"; first failure {failed[0].to_json()}"
    elif elapsed >= budget:
        detail += "; over time budget"
    line = f"acceptance {number:02d} {'PASS' if ok else 'FAIL'}  {label}  ({detail})"
    return ok, line


@pytest.mark.parametrize("number, label, fn, budget", CRITERIA,
                         ids=[f"criterion-{c[0]:02d}" for c in CRITERIA])
def test_acceptance(number, label, fn, budget):
    ok, line = run_criterion(number, label, fn, budget)
    print(line)
    RESULTS.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line, flush=True)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
