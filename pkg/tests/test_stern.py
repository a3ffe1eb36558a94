import pytest
from hypothesis import given
from hypothesis import strategies as st

from golden import A17, D_LISTING
from sternenum.exact import PHI, SQRT2, SQRT3, parse_value
from sternenum.stern import (
    FAMILIES,
    diatomic_row,
    digit_prefix,
    get_family,
    row_max,
    seq_prefix,
    seq_term,
    three_term_next,
    three_term_prefix,
    valuation,
)


def test_seq_term_examples():
    assert seq_term("A", 11) == 5
    assert seq_term("B", 10) == 3 * SQRT2
    assert seq_term("D", 6) == 1 + 2 * PHI


def test_prefix_examples():
    assert seq_prefix("A", 16) == A17
    assert seq_prefix("C", 5) == [0, 1, SQRT3, 2, SQRT3, 1]
    assert seq_prefix("B", 3) == [0, 1, SQRT2, 1]


def test_d_listing():
    want = [parse_value(t) for t in D_LISTING]
    assert seq_prefix("D", len(want))[1:] == want


def test_three_term_examples():
    assert three_term_next("A", 1, 2) == 1
    assert three_term_next("B", 1, SQRT2) == 1
    assert three_term_next("D", 1, PHI) == PHI


@pytest.mark.parametrize("tag", "ABCD")
def test_two_constructions_agree(tag):
    n = 20_000
    assert three_term_prefix(tag, n) == digit_prefix(tag, n)


@pytest.mark.parametrize("tag", "ABCD")
def test_sequences_positive_and_reach_one_at_powers(tag):
    fam = get_family(tag)
    vals = seq_prefix(tag, fam.base**5)
    assert all(v > 0 for v in vals[1:])
    assert all(vals[fam.base**k] == 1 for k in range(6))


def test_rows():
    assert diatomic_row("A", 2).values == (1, 3, 2, 3, 1)
    assert diatomic_row("A", 0).values == (1, 1)
    b = diatomic_row("B", 1).values
    assert b == (1, 2 * SQRT2, 3, SQRT2, 3, 2 * SQRT2, 1)


@pytest.mark.parametrize("tag", "ABCD")
def test_rows_are_palindromes(tag):
    for k in range(5):
        v = diatomic_row(tag, k).values
        assert v == v[::-1]


def test_row_max():
    assert row_max("A", 3) == 5
    assert row_max("A", 4) == 8
    assert [row_max("A", k) for k in range(6)] == [1, 2, 3, 5, 8, 13]
    # b_11 = 5 and 5 sqrt2 > 7 on the row starting at 9
    assert row_max("B", 2) == 5 * SQRT2
    assert [row_max("B", k) for k in (1, 3)] == [3, 17]


def test_valuation():
    assert valuation(2, 12) == 2
    assert valuation(5, 50) == 2
    assert valuation(3, 7) == 0
    with pytest.raises(ValueError):
        valuation(2, 0)


@given(st.sampled_from("ABCD"), st.integers(1, 5000))
def test_digit_rules(tag, n):
    fam = FAMILIES[tag]
    m = fam.base
    x, y = seq_term(tag, n), seq_term(tag, n + 1)
    for j, (u, v) in enumerate(fam.digit_rules):
        assert seq_term(tag, m * n + j) == u * x + v * y


@given(st.sampled_from("ABCD"), st.integers(1, 3000))
def test_three_term_matches(tag, n):
    assert three_term_next(tag, seq_term(tag, n - 1), seq_term(tag, n)) == seq_term(tag, n + 1)
