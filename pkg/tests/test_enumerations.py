from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from golden import R32, S32, T32, U_LISTING, U_MISSING_PHI
from sternenum.enumerations import (
    ENUMERATIONS,
    BoundExceeded,
    IsRoot,
    NotPositive,
    build_contraction,
    children,
    corollary_orbit_report,
    depth_to_root,
    greedy_prefix,
    index_of,
    parent,
    prefix,
    reduced_rationals,
    term_by_ratio,
    term_by_recurrence,
    term_by_semirecursive,
    u_conjecture_experiment,
    value_at_index,
    verify_bijection,
)
from sternenum.exact import PHI, format_value, parse_value

F = Fraction


def tokens(s):
    return s.split()


@pytest.mark.parametrize("tag, listing", [("R", R32), ("S", S32), ("T", T32)])
def test_reference_prefixes(tag, listing):
    assert [format_value(v) for v in prefix(tag, 32)] == tokens(listing)


def test_u_listing():
    got = prefix("U", len(U_LISTING))
    for i, (tok, v) in enumerate(zip(U_LISTING, got), start=1):
        want = parse_value(tok)
        if i in U_MISSING_PHI:
            # "a+b" stands for a+b*phi at these positions
            a, b = tok.split("+")
            want = parse_value(f"{a}+{b}*phi")
        assert v == want, i


def test_ratio_examples():
    assert term_by_ratio("R", 4) == 3
    assert term_by_ratio("S", 5) == F(2, 3)
    assert term_by_ratio("U", 6) == 3 - PHI


def test_recurrence_examples():
    assert term_by_recurrence("S", 3) == 4
    assert term_by_recurrence("T", 4) == 1
    assert term_by_recurrence("U", 2) == PHI


def test_semirecursive_examples():
    assert term_by_semirecursive("R", 1) == 1
    assert term_by_semirecursive("R", 4) == 3
    assert term_by_semirecursive("T", 5) == 6


def test_contraction_breakpoints():
    assert build_contraction("R").breakpoints == (0, 1)
    assert build_contraction("T").breakpoints == (0, 1, F(3, 2), 2, 3)
    assert build_contraction("U").breakpoints == (0, 1, PHI, PHI * PHI)
    assert build_contraction("S").roots == [2, 1]


def test_parent_examples():
    assert parent("R", F(2, 3)) == (2, 1)
    assert parent("S", F(3, 2)) == (2, 1)
    # 1/2+phi = u_5 sits below u_1 = phi^2
    assert parent("U", F(1, 2) + PHI) == (PHI * PHI, 1)
    with pytest.raises(IsRoot):
        parent("T", F(3, 2))
    with pytest.raises(NotPositive):
        parent("R", F(-1, 2))


def test_children_examples():
    assert children("R", 1) == [2, F(1, 2)]
    assert children("S", 2) == [4, F(3, 2), F(2, 3)]
    assert children("T", 3) == [6, F(5, 2), F(9, 5), F(4, 3), F(3, 4)]


def test_index_examples():
    assert value_at_index("R", 5) == F(2, 3)
    assert value_at_index("S", 9) == 6
    assert value_at_index("T", 3) == F(3, 2)
    assert index_of("R", F(3, 4)) == 9
    assert index_of("S", F(1, 2)) == 8
    assert index_of("U", 1) == 3
    assert index_of("T", F(1, 2)) == 24


def test_greedy_examples():
    assert greedy_prefix("R", 5) == [1, 2, F(1, 2), 3, F(2, 3)]
    assert greedy_prefix("S", 4) == [2, 1, 4, F(3, 2)]
    assert greedy_prefix("U", 4) == [PHI * PHI, PHI, 1, 2 + 2 * PHI]


@pytest.mark.parametrize("tag", "RSTU")
def test_five_methods_agree(tag):
    n = 3000
    ref = prefix(tag, n, "ratio")
    for method in ("rec", "semi", "tree"):
        assert prefix(tag, n, method) == ref, method
    assert prefix(tag, 1000, "greedy") == ref[:1000]


@given(st.sampled_from("RSTU"), st.integers(1, 10**12))
def test_index_inverts_value(tag, n):
    assert index_of(tag, value_at_index(tag, n)) == n


@given(st.sampled_from("RSTU"), st.integers(1, 10**9))
def test_parent_and_children_are_inverse(tag, n):
    x = value_at_index(tag, n)
    kids = children(tag, x)
    assert len(kids) == ENUMERATIONS[tag].base
    for digit, kid in enumerate(kids):
        assert parent(tag, kid) == (x, digit)


@given(st.sampled_from("RST"), st.integers(1, 200), st.integers(1, 200))
def test_every_rational_is_indexed(tag, a, b):
    x = F(a, b)
    assert value_at_index(tag, index_of(tag, x)) == x


def test_bijection_examples():
    rep = verify_bijection("R", 4)
    assert rep.ok and rep.checked == 5
    assert sorted(index_of("S", x) for x in (1, 2, F(1, 2))) == [1, 2, 8]
    assert sorted(index_of("T", x) for x in (1, 2, F(1, 2))) == [2, 4, 24]


def test_bijection_parallel_matches_serial():
    a = verify_bijection("S", 20, jobs=1).to_dict()
    b = verify_bijection("S", 20, jobs=3).to_dict()
    assert a == b and not a["failures"]


def test_bijection_rejects_u():
    with pytest.raises(ValueError):
        verify_bijection("U", 10)


def test_reduced_rationals_count():
    # sum of phi(s) for s = 2..B
    assert len(list(reduced_rationals(12))) == 45


def test_orbit_small_bound_is_covered():
    rep = corollary_orbit_report(10, max_steps=20_000, compare_steps=20_000)
    assert rep.covered and rep.matches_s
    assert rep.required_steps == 3**9 - 1


def test_u_depth_examples():
    assert depth_to_root(PHI ** 0, 10) == 0
    assert depth_to_root(F(2, 5) + PHI / 5, 3) is not None


def test_u_experiment_small():
    rep = u_conjecture_experiment(3, max_steps=200)
    assert rep.reached == rep.total
    assert rep.max_steps == 200
    assert u_conjecture_experiment(2).max_steps == 40


def test_u_step_cap():
    with pytest.raises(BoundExceeded):
        index_of("U", value_at_index("U", 10**30), max_steps=5)
