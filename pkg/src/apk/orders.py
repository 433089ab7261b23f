"""Admissible orders and the change-of-order transformation.

An order on a block is given as a tuple ``target`` of current row indices:
``target[p]`` is the index (in the stored order) of the row that should sit
at position ``p``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

from .ems import (ExtendedMultiSegment, ExtendedSegment, SegmentError, dominates,
                  normalize_row)
from .halfint import sign_pow

__all__ = [
    "dominates", "enumerate_admissible_orders", "is_admissible", "swap_rows",
    "swap_adjacent", "reorder", "reorder_rows", "realizable_adjacent_pairs",
    "adjacency_blocked", "SwapError",
]


class SwapError(SegmentError):
    pass


def _seg_key(rows):
    return tuple((r.A.twice, r.B.twice) for r in rows)


def _predecessors(segs) -> list[frozenset]:
    """For each index, the indices that must be placed before it."""
    n = len(segs)
    preds = []
    for j in range(n):
        Aj, Bj = segs[j]
        before = set()
        for i in range(n):
            if i == j:
                continue
            Ai, Bi = segs[i]
            if Aj > Ai and Bj > Bi:
                before.add(i)
            elif segs[i] == segs[j] and i < j:
                # identical segments keep their stored relative order
                before.add(i)
        preds.append(frozenset(before))
    return preds


@lru_cache(maxsize=4096)
def _linear_extensions(segs: tuple) -> tuple:
    n = len(segs)
    preds = _predecessors(segs)
    out = []
    order: list[int] = []
    placed = [False] * n

    def extend():
        if len(order) == n:
            out.append(tuple(order))
            return
        for i in range(n):
            if not placed[i] and all(placed[p] for p in preds[i]):
                placed[i] = True
                order.append(i)
                extend()
                order.pop()
                placed[i] = False

    extend()
    return tuple(out)


def enumerate_admissible_orders(rows: Sequence[ExtendedSegment]) -> tuple:
    """All admissible orders of a block, lexicographic in the index tuples.

    Rows carrying identical segments are interchangeable, so only the
    extensions preserving their stored relative order are listed.
    """
    return _linear_extensions(_seg_key(rows))


def is_admissible(rows: Sequence[ExtendedSegment], target: Sequence[int]) -> bool:
    pos = {idx: p for p, idx in enumerate(target)}
    if sorted(pos) != list(range(len(rows))):
        return False
    for i in range(len(rows)):
        for j in range(len(rows)):
            if dominates(rows[j].seg, rows[i].seg) and pos[j] < pos[i]:
                return False
    return True


def swap_rows(lo: ExtendedSegment, hi: ExtendedSegment) -> tuple[ExtendedSegment, ExtendedSegment]:
    """Transpose adjacent rows ``lo`` (position k-1) and ``hi`` (position k).

    Returns the new (position k-1, position k) pair.  The two segments must be
    nested; identical segments are returned untouched.
    """
    lo, hi = normalize_row(lo), normalize_row(hi)
    if lo.seg == hi.seg:
        return lo, hi
    c = int(lo.A - lo.B)          # A_{k-1} - B_{k-1}
    d = int(hi.A - hi.B)          # A_k - B_k
    eps = sign_pow(c) * lo.eta * hi.eta
    same = hi.eta == sign_pow(c) * lo.eta
    if hi.A >= lo.A and hi.B <= lo.B:
        # [A_{k-1},B_{k-1}] inside [A_k,B_k]
        alpha = lo.b - 2 * lo.l
        new_lo = lo.with_(eta=sign_pow(d) * lo.eta)
        l_hi = hi.l + eps * alpha
        if same and hi.b - 2 * hi.l < 2 * alpha:
            eta_hi = sign_pow(c) * hi.eta
        else:
            eta_hi = sign_pow(c - 1) * hi.eta
        new_hi = hi.with_(l=l_hi, eta=eta_hi)
    elif hi.A <= lo.A and hi.B >= lo.B:
        # [A_{k-1},B_{k-1}] contains [A_k,B_k]
        alpha = hi.b - 2 * hi.l
        new_hi = hi.with_(eta=sign_pow(c) * hi.eta)
        l_lo = lo.l + eps * alpha
        if same and lo.b - 2 * lo.l < 2 * alpha:
            eta_lo = sign_pow(d) * lo.eta
        else:
            eta_lo = sign_pow(d - 1) * lo.eta
        new_lo = lo.with_(l=l_lo, eta=eta_lo)
    else:
        raise SwapError(f"{lo.seg} and {hi.seg} are not nested; the swapped order is not admissible")
    return normalize_row(new_hi), normalize_row(new_lo)


def swap_adjacent(E: ExtendedMultiSegment, rho: Optional[str], k: int) -> ExtendedMultiSegment:
    """Exchange rows k-1 and k (0-based) of a block, keeping pi(E) fixed."""
    rows = list(E.rows(rho))
    if not 1 <= k < len(rows):
        raise IndexError(f"k = {k} does not name an adjacent pair")
    rows[k - 1], rows[k] = swap_rows(rows[k - 1], rows[k])
    return E.with_rows(rho, rows)


def reorder_rows(rows: Sequence[ExtendedSegment], target: Sequence[int]) -> list[ExtendedSegment]:
    """Bubble the rows into ``target`` by adjacent swaps."""
    n = len(rows)
    if sorted(target) != list(range(n)):
        raise ValueError(f"{tuple(target)} is not a permutation of {n} rows")
    rank = {idx: p for p, idx in enumerate(target)}
    cur = [normalize_row(r) for r in rows]
    ranks = [rank[i] for i in range(n)]
    # insertion sort on ranks; each transposition is one change of order
    for p in range(1, n):
        q = p
        while q > 0 and ranks[q - 1] > ranks[q]:
            cur[q - 1], cur[q] = swap_rows(cur[q - 1], cur[q])
            ranks[q - 1], ranks[q] = ranks[q], ranks[q - 1]
            q -= 1
    return cur


def reorder(E: ExtendedMultiSegment, rho: Optional[str], target: Sequence[int]) -> ExtendedMultiSegment:
    rows = E.rows(rho)
    if not is_admissible(rows, target):
        raise SwapError(f"target order {tuple(target)} is not admissible")
    return E.with_rows(rho, reorder_rows(rows, target))


def realizable_adjacent_pairs(rows: Sequence[ExtendedSegment]) -> set:
    """Triples (later, earlier, order index) over every admissible order."""
    out = set()
    for oid, order in enumerate(enumerate_admissible_orders(rows)):
        for p in range(1, len(order)):
            out.add((order[p], order[p - 1], oid))
    return out


def adjacency_blocked(rows: Sequence[ExtendedSegment], i: int, j: int) -> bool:
    """True iff some row sits strictly between rows i and j in dominance,
    so that no admissible order puts j immediately below i."""
    if dominates(rows[i].seg, rows[j].seg):
        top, bot = i, j
    elif dominates(rows[j].seg, rows[i].seg):
        top, bot = j, i
    else:
        return False
    hi, lo = rows[top].seg, rows[bot].seg
    for m in range(len(rows)):
        if m in (i, j):
            continue
        s = rows[m].seg
        if dominates(hi, s) and dominates(s, lo):
            return True
        # identical copies keep their stored order, so they get in the way too
        if (s == lo and m > bot) or (s == hi and m < top):
            return True
    return False
