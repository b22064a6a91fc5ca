import pytest
from hypothesis import given, strategies as st

from ballotlab.oddorder import (
    M, ballot_factor_counts, casc, cdes, conjecture_records, cycle_decomposition,
    cyclic_factor_count_odd, factor_count_ballot, has_cyclic_factor, has_factor,
    is_odd_order, odd_order_permutations, odd_order_table, spiro_recurrence_table,
)
from ballotlab.permcore import ballot_permutations, des, permutations


def perm(s):
    return tuple(int(c) for c in s)


def test_cycle_decomposition_examples():
    assert cycle_decomposition(perm("123")).cycles == ((1,), (2,), (3,))
    assert cycle_decomposition(perm("231")).cycles == ((1, 2, 3),)
    assert cycle_decomposition(()).cycles == ()


@given(st.integers(0, 8).flatmap(lambda n: st.permutations(range(1, n + 1))).map(tuple))
def test_cycle_form_round_trip(p):
    assert cycle_decomposition(p).to_permutation() == p


def test_is_odd_order():
    assert is_odd_order(perm("231"))
    assert not is_odd_order(perm("21"))
    for n in range(7):
        assert is_odd_order(tuple(range(1, n + 1)))


def test_cyclic_descents_and_ascents():
    assert (cdes((1, 2, 3)), casc((1, 2, 3))) == (1, 2)
    assert (cdes((1, 3, 2)), casc((1, 3, 2))) == (2, 1)


def test_fixed_point_counts_nothing():
    assert cdes((5,)) == 0 and casc((5,)) == 0


def test_empty_cycle_rejected():
    with pytest.raises(ValueError):
        cdes(())


def test_M_examples():
    assert M(tuple(range(1, 7))) == 0
    assert M(perm("231")) == 1
    assert M(perm("312")) == 1


def test_odd_order_rows():
    t = odd_order_table(5)
    assert t.row(3) == {0: 1, 1: 2}
    assert t.row(0) == {0: 1}
    assert t.row(5) == {0: 1, 1: 22, 2: 22}


def test_odd_order_totals_match_ballot_counts():
    t = odd_order_table(8)
    for n in range(9):
        assert t.total(n) == sum(1 for _ in ballot_permutations(n))


def test_recurrence_rows():
    rec = spiro_recurrence_table(9)
    assert rec.row(3) == {0: 1, 1: 2}
    assert rec.row(1) == {0: 1}
    odd = odd_order_table(9)
    for n in range(10):
        assert rec.row(n) == odd.row(n)


def test_odd_order_table_csv():
    text = odd_order_table(3).to_csv().splitlines()
    assert text[0] == "n,M,count"
    assert text[-2:] == ["3,0,1", "3,1,2"]


def test_factor_helpers():
    assert has_factor((1, 3, 2), (1, 3, 2))
    assert not has_factor((2, 3, 1), (1, 3))
    # 2 -> 3 -> 1 read cyclically in the cycle (1 2 3)
    assert has_cyclic_factor(perm("231"), (2, 3, 1))
    assert not has_cyclic_factor(perm("231"), (1, 3, 2))


def test_ballot_factor_examples():
    assert factor_count_ballot(3, 1, 1, 2) == 1
    assert factor_count_ballot(3, 1, 2, 1) == 1
    for d in range(3):
        assert factor_count_ballot(2, d, 1, 2) == 0


def test_ballot_factor_matches_brute_force():
    for n in range(3, 7):
        for d in range(n):
            for i in range(1, n):
                for j in range(1, n):
                    if i == j:
                        continue
                    brute = sum(1 for p in ballot_permutations(n)
                                if des(p) == d and has_factor(p, (i, n, j)))
                    assert factor_count_ballot(n, d, i, j) == brute


def test_odd_cyclic_factor_examples():
    assert cyclic_factor_count_odd(3, 1, 1, 2) == 1
    assert cyclic_factor_count_odd(3, 1, 2, 1) == 1


def test_odd_cyclic_factor_matches_brute_force():
    for n in range(3, 7):
        for d in range(n):
            for i in range(1, n):
                for j in range(1, n):
                    if i == j:
                        continue
                    brute = sum(1 for p in odd_order_permutations(n)
                                if M(p) == d and has_cyclic_factor(p, (i, n, j)))
                    assert cyclic_factor_count_odd(n, d, i, j) == brute


def test_factor_domain_checked():
    with pytest.raises(ValueError):
        factor_count_ballot(4, 1, 2, 2)
    with pytest.raises(ValueError):
        cyclic_factor_count_odd(4, 1, 0, 2)


def test_conjecture_small_cases():
    rec = [r for r in conjecture_records(3) if r["d"] == 1]
    assert rec == [{"n": 3, "d": 1, "i": 1, "j": 2, "lhs": 2, "rhs": 2, "equal": True}]
    assert conjecture_records(2) == []


def test_conjecture_consistent_to_7():
    assert all(r["equal"] for n in range(8) for r in conjecture_records(n))


def test_factor_counts_cover_every_ballot_permutation_with_interior_max():
    for n in range(3, 7):
        interior = sum(1 for p in ballot_permutations(n) if 0 < p.index(n) < n - 1)
        assert sum(ballot_factor_counts(n).values()) == interior


def test_odd_order_enumeration_is_a_filter():
    assert list(odd_order_permutations(4)) == [p for p in permutations(4) if is_odd_order(p)]
