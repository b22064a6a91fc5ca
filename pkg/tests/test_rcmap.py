import pytest
from hypothesis import given, strategies as st

from ballotlab.permcore import ballot_permutations, des, permutations, pk, standardize
from ballotlab.rcmap import (
    SplitPair, binomial_row, descent_law_rhs, phi, split_at_first_lowest, split_at_last_lowest,
    valid_split_pairs, verify_e17, verify_e21,
)


def perm(s):
    return tuple(int(c) for c in s)


def test_phi_examples():
    assert phi(SplitPair(perm("341"), perm("265"))) == perm("143265")
    assert phi(SplitPair(perm("134"), perm("256"))) == perm("431256")
    for p in ballot_permutations(5):
        assert phi(SplitPair((), p)) == p


def test_phi_rejects_non_ballot_halves():
    with pytest.raises(ValueError):
        phi(SplitPair((2, 1), (3,)))
    with pytest.raises(ValueError):
        phi(SplitPair((1, 2), (2,)))


def test_split_first_lowest_examples():
    assert split_at_first_lowest(perm("143265")) == SplitPair(perm("341"), perm("265"))
    assert split_at_first_lowest(perm("21")) == SplitPair((2,), (1,))
    for p in ballot_permutations(5):
        assert split_at_first_lowest(p) == SplitPair((), p)


def test_split_last_lowest_examples():
    assert split_at_last_lowest(perm("431256")) == SplitPair(perm("134"), perm("256"))
    assert split_at_last_lowest(perm("123")) == SplitPair((1,), perm("23"))
    assert split_at_last_lowest(perm("21")) == SplitPair(perm("12"), ())


def test_split_empty_raises():
    with pytest.raises(ValueError):
        split_at_first_lowest(())
    with pytest.raises(ValueError):
        split_at_last_lowest(())


def test_round_trips_up_to_7():
    for n in range(1, 8):
        for p in permutations(n):
            for split in (split_at_first_lowest, split_at_last_lowest):
                pair = split(p)
                pair.validate()
                assert phi(pair) == p


def test_descent_law_up_to_7():
    # the pair of empty words is left out, as for the lowest-position claims
    for n in range(1, 8):
        for pair in valid_split_pairs(n):
            assert des(phi(pair)) == descent_law_rhs(pair)


def test_valid_split_pair_count():
    # sum_l C(n, l) b_l b_{n-l} counts each p in S_n twice when n >= 1
    for n in range(1, 7):
        assert sum(1 for _ in valid_split_pairs(n)) == 2 * len(list(permutations(n)))


@given(st.integers(1, 8).flatmap(lambda n: st.permutations(range(1, n + 1))).map(tuple))
def test_peaks_add_across_the_split(p):
    for split in (split_at_first_lowest, split_at_last_lowest):
        pair = split(p)
        assert pk(p) == pk(pair.rho) + pk(pair.tau)


@given(st.integers(1, 8).flatmap(lambda n: st.permutations(range(1, n + 1))).map(tuple))
def test_split_halves_standardize_to_ballot(p):
    from ballotlab.permcore import is_ballot
    for split in (split_at_first_lowest, split_at_last_lowest):
        pair = split(p)
        assert is_ballot(standardize(pair.rho)) and is_ballot(standardize(pair.tau))


def test_binomial_row():
    assert binomial_row(0) == [1]
    assert binomial_row(5) == [1, 5, 10, 10, 5, 1]


@pytest.mark.parametrize("n", range(8))
def test_e17(n):
    assert verify_e17(n).passed


@pytest.mark.parametrize("n", range(8))
def test_e17_with_zero_statistic(n):
    report = verify_e17(n, stat="zero")
    assert report.passed and report.identity_id == "e17[zero]"


def test_e17_unknown_statistic():
    with pytest.raises(KeyError):
        verify_e17(3, stat="des")


@pytest.mark.parametrize("n", range(8))
def test_e21(n):
    assert verify_e21(n).passed


def test_e17_at_zero_skips_the_excluded_triple():
    report = verify_e17(0)
    assert report.passed and report.checked == 1
