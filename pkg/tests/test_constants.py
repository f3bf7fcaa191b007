from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lcmlab.constants import (
    cap_K,
    corollary1_constant,
    corollary2_constant,
    display,
    residue_constant,
    theorem_constant,
)
from lcmlab.ntk import normalize, residue_set
from lcmlab.verify import check_branch_boundary, check_corollaries


@pytest.mark.parametrize("r, a, l, m, want", [(1, 1, 3, 2, 2), (1, 2, 3, 1, 1)])
def test_cap_K_examples(r, a, l, m, want):
    assert cap_K(r, a, l, m) == want


def test_cap_K_zero_when_m_zero():
    for a in range(1, 12):
        for r in residue_set(a):
            for l in range(1, 6):
                assert cap_K(r, a, l, 0) == 0


def test_cap_K_floors_toward_minus_infinity():
    # a*l - (l-m)*r can be negative in the first branch; -1/4 must floor to -1
    assert cap_K(3, 4, 1, 0) == 0
    assert cap_K(7, 8, 3, 1) == (24 - 14) // 16
    assert cap_K(5, 6, 2, 0) == 0
    assert cap_K(5, 6, 1, 0) == (6 - 5) // 6


def test_cap_K_rejects_bad_residue():
    with pytest.raises(ValueError):
        cap_K(2, 4, 3, 1)
    with pytest.raises(ValueError):
        residue_constant(0, 3, 3, 1)


@pytest.mark.parametrize(
    "r, a, l, m, want",
    [(2, 3, 4, 1, Fraction(2)), (1, 1, 3, 2, Fraction(5, 2))],
)
def test_residue_constant_examples(r, a, l, m, want):
    assert residue_constant(r, a, l, m) == want


def test_residue_constant_m_zero_is_l_over_r():
    for a in range(1, 10):
        for r in residue_set(a):
            for l in range(1, 5):
                assert residue_constant(r, a, l, 0) == Fraction(l, r)


@pytest.mark.parametrize(
    "spec, want",
    [((1, 0, 1, 0), Fraction(1)), ((3, 1, 1, 0), Fraction(9, 4)), ((1, 0, 3, 2), Fraction(5, 2))],
)
def test_theorem_constant_examples(spec, want):
    const = theorem_constant(normalize(*spec))
    assert const.value == want
    assert const.value == Fraction(normalize(*spec).a1, const.phi) * sum(ar for _, ar in const.breakdown.values())


@pytest.mark.parametrize("a, l, m, want", [(1, 1, 0, Fraction(1)), (3, 2, 0, Fraction(9, 2)), (2, 3, 1, Fraction(6))])
def test_corollary1_examples(a, l, m, want):
    assert corollary1_constant(a, l, m) == want


def test_corollary1_rejects_outside_domain():
    with pytest.raises(ValueError):
        corollary1_constant(2, 2, 1)


@pytest.mark.parametrize("l, m, want", [(2, 1, Fraction(2)), (3, 2, Fraction(5, 2)), (5, 3, Fraction(9, 2))])
def test_corollary2_examples(l, m, want):
    assert corollary2_constant(l, m) == want


def test_corollary2_example_matches_ladder():
    assert corollary2_constant(5, 3) == residue_constant(1, 1, 5, 3)


def test_branch_boundary_agreement():
    res = check_branch_boundary()
    assert res.checks > 0 and res.ok, res.failures


def test_corollary_consistency():
    res = check_corollaries()
    assert res.checks > 0 and res.ok, res.failures


def test_constant_increases_in_l():
    for a in range(1, 9):
        for m in range(0, 5):
            values = [theorem_constant(normalize(a, 1, l, m)).value for l in range(m + 1, m + 12)]
            assert all(x < y for x, y in zip(values, values[1:]))
            for r in residue_set(a):
                ars = [residue_constant(r, a, l, m) for l in range(m + 1, m + 12)]
                assert all(x < y for x, y in zip(ars, ars[1:]))


@given(a=st.integers(1, 30), m=st.integers(0, 6), gap=st.integers(1, 6), shift=st.integers(-3, 3))
def test_constant_independent_of_b(a, m, gap, shift):
    l = m + gap
    ref = theorem_constant(normalize(a, 1, l, m)).value
    for b in residue_set(a):
        bb = b + shift * a
        if a + bb >= 1:
            assert theorem_constant(normalize(a, bb, l, m)).value == ref


def test_breakdown_invariants():
    for a in range(1, 9):
        for l in range(1, 7):
            for m in range(l):
                const = theorem_constant(normalize(a, 1, l, m))
                for k, ar in const.breakdown.values():
                    assert ar > 0 and k >= 0
                    if m == 0:
                        assert k == 0


def test_reduced_pair_used_when_gcd_above_one():
    assert theorem_constant(normalize(4, 6, 2, 1)).value == theorem_constant(normalize(2, 3, 2, 1)).value


def test_display_twelve_digits():
    assert display(Fraction(9, 4)) == "2.25"
    assert display(Fraction(1, 3)) == "0.333333333333"
