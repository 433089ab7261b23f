import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from apk.ems import Segment, dominates, normalize_row, sign_condition, support
from apk.nonvanishing import nec_pair, nonzero
from apk.orders import (SwapError, adjacency_blocked, enumerate_admissible_orders, is_admissible,
                        realizable_adjacent_pairs, reorder, reorder_rows, swap_adjacent, swap_rows)
from apk.symbol import row_strings
from generators import E_of, nested_block, row

EX1 = [row(3, 1, 0, -1), row(5, 2, 1, -1), row(6, 3, 2, 1), row(5, 4, 0, -1)]
LARGE = [row(37, -7), row(8, 4), row(40, 10)]          # j < i < k


def brute_orders(rows):
    out = []
    for perm in permutations(range(len(rows))):
        pos = {p: k for k, p in enumerate(perm)}
        if all(not dominates(rows[a].seg, rows[b].seg) or pos[a] > pos[b]
               for a in range(len(rows)) for b in range(len(rows))):
            out.append(perm)
    return out


def test_dominates():
    assert dominates(Segment(5, 2), Segment(3, 1))
    assert not dominates(Segment(6, 1), Segment(5, 2))
    assert dominates(Segment(40, 10), Segment(37, -7))


def test_large_orders():
    assert enumerate_admissible_orders(LARGE) == ((0, 1, 2), (1, 0, 2))


def test_ex1_orders():
    # [5,4] only has to follow [3,1]
    assert enumerate_admissible_orders(EX1) == ((0, 1, 2, 3), (0, 1, 3, 2), (0, 3, 1, 2))
    assert len(enumerate_admissible_orders(EX1)) == len(brute_orders(EX1))


def test_singleton_orders():
    assert enumerate_admissible_orders([row(2, 0)]) == ((0,),)


@given(st.integers(0, 10**6))
def test_orders_match_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    rows = []
    for _ in range(n):
        B = rng.randint(0, 5)
        rows.append(row(rng.randint(B, 7), B))
    # distinct segments so that brute force counts the same thing
    rows = list({r.seg: r for r in rows}.values())
    rows.sort(key=lambda r: (r.B, r.A))
    assert set(enumerate_admissible_orders(rows)) == set(brute_orders(rows))


def test_swap_worked_example():
    lo, hi = row(3, 1, 1, 1), row(3, 2, 0, 1)
    new_lo, new_hi = swap_rows(lo, hi)
    assert new_lo == row(3, 2, 0, 1)
    assert (new_hi.l, new_hi.eta) == (0, -1) and new_hi.seg == Segment(3, 1)
    E = E_of([row(1, 0, 0, 1), row(2, 1, 1, 1), lo, hi])
    assert [s for _, s in row_strings(swap_adjacent(E, None, 3))] == ["⊕⊖", "⊲⊳", "⊕⊖", "⊖⊕⊖"]


def test_swap_equal_segments_is_identity():
    a, b = row(2, 0, 1, 1), row(2, 0, 0, -1)
    assert swap_rows(a, b) == (a, b)


def test_swap_rejects_non_nested():
    with pytest.raises(SwapError):
        swap_rows(row(3, 1), row(5, 2))


@pytest.mark.parametrize("l_i", range(3))
@pytest.mark.parametrize("l_j", range(7, 23))
@pytest.mark.parametrize("eta_i,eta_j", [(1, 1), (-1, -1), (1, -1), (-1, 1)])
def test_large_swap_regimes(l_i, l_j, eta_i, eta_j):
    j, i = row(37, -7, l_j, eta_j), row(8, 4, l_i, eta_i)
    new_i, new_j = swap_rows(j, i)
    assert new_i.seg == i.seg and new_j.seg == j.seg
    if eta_i == eta_j and l_j <= 17 + 2 * l_i:
        want = row(37, -7, l_j + 5 - 2 * l_i, -eta_j)
    elif eta_i == eta_j:
        want = row(37, -7, 40 + 2 * l_i - l_j, eta_j)
    else:
        want = row(37, -7, l_j + 2 * l_i - 5, eta_i)
    assert new_j == normalize_row(want)


def test_realizable_pairs_large():
    assert realizable_adjacent_pairs(LARGE) == {(1, 0, 0), (2, 1, 0), (0, 1, 1), (2, 0, 1)}
    assert realizable_adjacent_pairs([row(2, 0)]) == set()
    assert len(realizable_adjacent_pairs([row(3, 0), row(2, 1)])) == 2


def test_adjacency_blocked_matches_orders():
    rng = random.Random(3)
    for _ in range(300):
        rows = []
        for _ in range(rng.randint(2, 5)):
            B = rng.randint(0, 4)
            rows.append(row(rng.randint(B, 6), B))
        rows.sort(key=lambda r: (r.B, r.A))
        orders = enumerate_admissible_orders(rows)
        for i in range(len(rows)):
            for j in range(len(rows)):
                if i == j or rows[i].seg == rows[j].seg or not dominates(rows[i].seg, rows[j].seg):
                    continue
                adjacent = any(o.index(i) == o.index(j) + 1 for o in orders)
                assert adjacency_blocked(rows, i, j) == (not adjacent)


def _random_nested(seed, n=4):
    return nested_block(random.Random(seed), n)


def _random_nonzero_nested(seed, n=4):
    rng = random.Random(seed)
    while True:
        rows = nested_block(rng, n)
        if nonzero(E_of(rows)):
            return rows


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_swap_involution(seed):
    # the change-of-order formulas presuppose the necessary conditions on the pair
    rows = _random_nested(seed)
    for k in range(1, len(rows)):
        if not nec_pair(rows[k - 1], rows[k]).passed:
            continue
        a, b = swap_rows(rows[k - 1], rows[k])
        assert swap_rows(a, b) == (normalize_row(rows[k - 1]), normalize_row(rows[k]))


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_swap_preserves_support(seed):
    E = E_of(_random_nested(seed))
    for k in range(1, len(E.rows())):
        F = swap_adjacent(E, None, k)
        assert support(F) == support(E)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_swap_preserves_nonzero(seed):
    E = E_of(_random_nonzero_nested(seed))
    for k in range(1, len(E.rows())):
        F = swap_adjacent(E, None, k)
        assert nonzero(F)
        assert sign_condition(F)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_reorder_path_independent(seed):
    rng = random.Random(seed)
    rows = _random_nonzero_nested(seed, 5)
    target = list(range(5))
    rng.shuffle(target)
    direct = reorder_rows(rows, target)
    # a second schedule: go through an intermediate random order first
    mid = list(range(5))
    rng.shuffle(mid)
    first = reorder_rows(rows, mid)
    second = reorder_rows(first, [mid.index(t) for t in target])
    assert direct == second


def test_full_row_representatives_agree():
    # the swap formulas give equivalent outputs on both eta representatives
    rng = random.Random(11)
    checked = 0
    for _ in range(2000):
        rows = nested_block(rng, 2)
        lo, hi = rows
        if lo.seg == hi.seg or not nec_pair(lo, hi).passed:
            continue
        for r_lo in lo.representatives():
            for r_hi in hi.representatives():
                assert swap_rows(r_lo, r_hi) == swap_rows(lo, hi)
                checked += lo.is_full() or hi.is_full()
    assert checked > 0


def test_reorder_identity_and_admissibility():
    E = E_of(EX1)
    assert reorder(E, None, (0, 1, 2, 3)) == E.normalized()
    assert is_admissible(EX1, (0, 3, 1, 2))
    with pytest.raises(SwapError):
        reorder(E, None, (1, 0, 2, 3))
