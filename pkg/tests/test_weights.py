from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockcb.errors import NonIntegral
from fockcb.weights import (
    AffineWeight,
    admissible_weights,
    cartan_solve,
    dot_wt_n,
    format_weight,
    fundamental,
    in_fundamental_domain,
    null_root,
    pair_of_weight,
    reduce_to_fundamental,
    root_combination,
    simple_root,
    theta,
    theta_inverse,
    vacuum_weight,
    weyl_on_multicharge,
    weyl_on_weight,
    wt_l,
)

charges = st.lists(st.integers(-8, 8), min_size=1, max_size=4).map(tuple)


def test_simple_roots_of_affine_sl2():
    a0 = simple_root("n", 2, 0)
    a1 = simple_root("n", 2, 1)
    assert a0 + a1 == null_root("n", 2)
    assert a1.lam == (-2, 2) and a1.delta == 0


def test_formatting():
    w = fundamental("n", 3, 0).scale(2) - null_root("n", 3).scale(3)
    assert format_weight(w) == "2*L0-3*d"
    assert format_weight(AffineWeight("n", (0, 0), Fraction(0))) == "0"


def test_vacuum_weight_level_two():
    assert format_weight(vacuum_weight((0, 0), 2)) == "2*L0"
    assert format_weight(wt_l(((1,), ()), (0, 0), 2)) == "2*L1-d"


def test_pair_of_weight_example():
    w = AffineWeight("n", (-2, 1, 3), Fraction(-2))
    s_n, dw = pair_of_weight((1, 0), w, 3)
    assert s_n == (2, 1, -2)
    assert format_weight(dw) == "2*L0+L1-2*d"


def test_theta_inverse_rejects_non_integral():
    with pytest.raises(NonIntegral):
        theta_inverse((1, 0), 2, 1)
    with pytest.raises(NonIntegral):
        theta_inverse((1, 1), 3, 0)


@given(charges, st.integers(1, 5))
def test_theta_round_trip(s, N):
    assert theta_inverse(theta(s, N), N, sum(s)) == s


def test_reduction_examples():
    assert reduce_to_fundamental((3, 1, -4), 2) == ((1, 0, -1), (0, 1, 2, 0, 1))
    assert reduce_to_fundamental((1, -1, 0), 2) == ((1, 0, -1), (2,))
    assert weyl_on_multicharge((3, 1, -4), 0, 2) == (-2, 1, 1)


@given(charges, st.integers(1, 5))
def test_reduction_lands_in_fundamental_domain(s, M):
    r, word = reduce_to_fundamental(s, M)
    assert in_fundamental_domain(r, M)
    assert sum(r) == sum(s)
    # replaying the word backwards from r recovers s
    cur = r
    for i in reversed(word):
        cur = weyl_on_multicharge(cur, i, M)
    assert cur == s


@given(charges, st.integers(1, 5), st.integers(0, 3))
def test_weyl_action_is_an_involution(s, M, i):
    if i >= len(s):
        return
    assert weyl_on_multicharge(weyl_on_multicharge(s, i, M), i, M) == s


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(-4, 4), st.integers(0, 2))
def test_weyl_on_weight_is_an_involution(lam, d, i):
    w = AffineWeight("n", tuple(lam), Fraction(d))
    assert weyl_on_weight(weyl_on_weight(w, i), i) == w


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_cartan_solve_inverts_root_combination(coeffs):
    diff = root_combination("n", 3, coeffs)
    assert cartan_solve(diff) == tuple(coeffs)


ADMISSIBLE = [
    # w, N(w), dotted weight, r_n, v_n, r_l, v_l, c, dotted profile
    ("2*L0-3*d", 1, "6*L0-3*L1-3*d", (3, 3, 3), (1, 1, 1), (6, 3), (0, 0), (1, 1, 1), (0, 3)),
    ("L1+L2-4*d", 0, "6*L0-3*L1-4*d", (4, 3, 2), (1, 0, 0), (5, 4), (2, 1), (0, 1, 1), (1, 3)),
    ("2*L0-4*d", 0, "6*L0-3*L1-4*d", (3, 3, 3), (1, 1, 1), (6, 3), (0, 0), (0, 0, 0), (1, 4)),
]


def test_admissible_weights_array():
    records = admissible_weights((3, 6), 3, (1, 1, 1))
    got = [
        (format_weight(r.w), r.N_of_w, format_weight(r.dot_w), r.r_n, r.v_n, r.r_l, r.v_l, r.c, r.dotted_profile)
        for r in records
    ]
    assert got == ADMISSIBLE


def test_dotted_weights_against_printed_form():
    # printed as fundamental part of the dotted vacuum minus a sum of dotted roots
    printed = [((0, 3), (0, 3)), ((2, 1), (1, 3)), ((0, 3), (1, 4))]
    for r, (lam, roots) in zip(admissible_weights((3, 6), 3, (1, 1, 1)), printed):
        top = dot_wt_n(((),) * 3, r.r_n, 2)
        assert top.lam == lam
        assert r.dot_w == top - root_combination("l", 2, roots)


def test_admissible_weights_rejects_bad_deficit():
    with pytest.raises(ValueError):
        admissible_weights((0, 0), 2, (1, 1, 1))
