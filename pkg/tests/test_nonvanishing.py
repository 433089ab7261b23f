import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from apk.ems import shift, sign_condition
from apk.halfint import HalfInt
from apk.nonvanishing import (CONTAINING, SHIFTED, PreconditionError, beta_values,
                              explain, ladder_nonzero, nec_adjacent, nec_pair, nonzero,
                              nonzero_nonneg, star_condition)
from apk.orders import enumerate_admissible_orders, reorder
from generators import E_of, nested_block, random_valid, row


def test_nec_shifted_same_sign():
    v = nec_pair(row(2, 0, 1, 1), row(3, 1, 1, 1))
    assert v.passed and v.case_used == SHIFTED


def test_nec_large_containment():
    # l_j >= 7 >= b_i makes the containment condition automatic
    for l_j in range(7, 23):
        for l_i in range(3):
            for ei, ej in [(1, -1), (-1, 1)]:
                v = nec_pair(row(44, 0, l_j, ej), row(15, 11, l_i, ei))
                assert v.passed and v.case_used == CONTAINING


def test_nec_equal_segments_need_equal_l():
    assert not nec_pair(row(2, 0, 1, 1), row(2, 0, 0, 1)).passed
    assert nec_pair(row(2, 0, 1, 1), row(2, 0, 1, 1)).passed


def test_nec_containing_case():
    v = nec_pair(row(5, 0, 0, 1), row(3, 2, 0, 1))
    assert v.case_used == CONTAINING


def test_nec_adjacent_requires_nonnegative():
    with pytest.raises(PreconditionError):
        nec_adjacent(E_of([row(1, -1, 1), row(2, 0)]), None, 1)


def test_ladder_examples():
    assert ladder_nonzero(E_of([row(2, 0, 1, 1), row(3, 1, 1, 1)]))
    assert not ladder_nonzero(E_of([row(2, 0, 0, 1), row(3, 1, 1, -1)]))
    assert ladder_nonzero(E_of([row(2, 0, 0, 1)]))
    with pytest.raises(PreconditionError):
        ladder_nonzero(E_of([row(5, 0), row(3, 1)]))


def test_singleton_nonneg():
    assert nonzero_nonneg(E_of([row(3, 1, 1, -1)]))


def test_star_examples():
    so13_e1 = E_of([row(F(5, 2), F(-5, 2), 3), row(F(1, 2), F(-1, 2), 1), row(F(3, 2), F(3, 2), 0, 1)])
    assert star_condition(so13_e1)
    assert nonzero(so13_e1)
    assert not star_condition(E_of([row(2, -1, 0, 1)]))
    for l_j in range(0, 23):
        E = E_of([row(37, -7, l_j, 1), row(8, 4, 0, 1), row(40, 10, 0, 1)])
        assert star_condition(E) == (l_j >= 7)


def test_star_needs_p_prime():
    with pytest.raises(PreconditionError):
        star_condition(E_of([row(3, 0, 0, 1), row(2, -1, 1, 1)]))


def test_beta_values():
    assert beta_values([row(3, 0), row(2, 1), row(4, 4)]) == [0, 3, 4]


def test_explain():
    assert explain(E_of([row(2, 0, 1, 1), row(3, 1, 1, 1)])) is None
    msg = explain(E_of([row(2, 0, 0, 1), row(3, 1, 1, -1)]))
    assert "shifted(1)" in msg and "FAIL" in msg
    assert "lower bound" in explain(E_of([row(2, -1, 0, 1)]))


@settings(max_examples=80)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_shift_invariance(seed, t):
    E = random_valid(random.Random(seed), max_rows=4, allow_negative=False)
    assert nonzero(shift(E, t)) == nonzero(E)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_larger_shift_same_verdict(seed):
    E = random_valid(random.Random(seed), max_rows=4, allow_negative=True)
    if not star_condition(E):
        return
    from apk.ems import minimal_shift
    t = minimal_shift(E)
    assert nonzero_nonneg(shift(E, t)) == nonzero_nonneg(shift(E, t + 2))


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_nonzero_implies_nec_on_stored_order(seed):
    E = random_valid(random.Random(seed), max_rows=4, allow_negative=False)
    if nonzero_nonneg(E):
        for k in range(1, len(E.rows())):
            assert nec_adjacent(E, None, k).passed


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_nonzero_invariant_under_reorder(seed):
    rng = random.Random(seed)
    while True:
        rows = nested_block(rng, 4)
        if nonzero(E_of(rows)):
            break
    E = E_of(rows)
    for order in enumerate_admissible_orders(rows):
        assert nonzero(reorder(E, None, order))


def test_representative_choice_is_immaterial():
    # nonzero_nonneg is a function of the equivalence class
    rng = random.Random(5)
    for _ in range(300):
        E = random_valid(rng, max_rows=3, allow_negative=False)
        flipped = E.with_rows(None, [r.with_(eta=-r.eta) if r.is_full() else r for r in E.rows()])
        assert nonzero_nonneg(flipped) == nonzero_nonneg(E)


def test_tempered_all_pass():
    # all b = 1, distinct B: only the sign condition matters
    rows = [row(0, 0, 0, 1), row(1, 1, 0, -1), row(2, 2, 0, -1)]
    assert sign_condition(E_of(rows)) and nonzero(E_of(rows))
