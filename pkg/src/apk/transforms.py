"""Union/intersection moves and the derivative algorithm built on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .ems import ExtendedMultiSegment, ExtendedSegment, Segment, SegmentError, dominates, normalize_row
from .halfint import HalfInt, sign_pow
from .nonvanishing import PreconditionError, nonzero
from .orders import adjacency_blocked, enumerate_admissible_orders, reorder_rows

CASE1, CASE2, CASE3 = "case1", "case2", "case3"


@dataclass(frozen=True)
class UnionCase:
    """Which deformation applies to an adjacent pair, and with which eta
    representatives (they differ from the stored ones only for full rows)."""

    tag: str
    lo: ExtendedSegment
    hi: ExtendedSegment
    same_sign: bool


def union_pair(lo: ExtendedSegment, hi: ExtendedSegment) -> Optional[UnionCase]:
    if not (hi.A > lo.A and hi.B > lo.B):
        return None
    lo, hi = normalize_row(lo), normalize_row(hi)
    reps = list(product(lo.representatives(), hi.representatives()))
    for tag in (CASE1, CASE2, CASE3):
        for rlo, rhi in reps:
            same = rhi.eta == sign_pow(rlo.A - rlo.B) * rlo.eta
            if tag == CASE1 and same and rhi.A - rhi.l == rlo.A - rlo.l:
                return UnionCase(tag, rlo, rhi, True)
            if tag == CASE2 and same and rhi.B + rhi.l == rlo.B + rlo.l:
                return UnionCase(tag, rlo, rhi, True)
            if tag == CASE3 and not same and rhi.B + rhi.l == rlo.A - rlo.l + 1:
                return UnionCase(tag, rlo, rhi, False)
    return None


def union_case(E: ExtendedMultiSegment, rho: Optional[str], k: int) -> Optional[UnionCase]:
    rows = E.rows(rho)
    if not 1 <= k < len(rows):
        raise IndexError(f"k = {k} does not name an adjacent pair")
    if any(r.B < 0 for r in rows):
        raise PreconditionError("union moves are stated for B >= 0")
    return union_pair(rows[k - 1], rows[k])


def union_rows(case: UnionCase) -> list[ExtendedSegment]:
    """The replacement rows (union below, intersection above); an empty
    intersection is dropped."""
    lo, hi = case.lo, case.hi
    d = int(hi.A - lo.A)
    if case.tag == CASE1:
        l_lo, l_hi, e_lo, e_hi = lo.l, hi.l - d, lo.eta, sign_pow(d) * hi.eta
    elif case.tag == CASE2:
        if lo.b - 2 * lo.l >= d:
            l_lo, l_hi, e_lo, e_hi = lo.l + d, hi.l, lo.eta, sign_pow(d) * hi.eta
        else:
            l_lo, l_hi, e_lo, e_hi = lo.b - lo.l, hi.l, -lo.eta, sign_pow(d) * hi.eta
    else:
        if hi.l <= lo.l:
            l_lo, l_hi, e_lo, e_hi = lo.l, hi.l, lo.eta, sign_pow(d) * hi.eta
        else:
            l_lo, l_hi, e_lo, e_hi = lo.l, lo.l, lo.eta, sign_pow(d - 1) * hi.eta
    union = ExtendedSegment(Segment(hi.A, lo.B), l_lo, e_lo)
    inter = ExtendedSegment(Segment(lo.A, hi.B), l_hi, e_hi)
    out = [normalize_row(union)]
    if inter.b == 0:
        if l_hi != 0:
            raise SegmentError("empty intersection with nonzero l")
    else:
        out.append(normalize_row(inter))
    return out


def union_move(E: ExtendedMultiSegment, rho: Optional[str], k: int) -> ExtendedMultiSegment:
    case = union_case(E, rho, k)
    if case is None:
        raise PreconditionError(f"no union case applies to rows {k} and {k + 1}")
    rows = list(E.rows(rho))
    rows[k - 1:k + 1] = union_rows(case)
    return E.with_rows(rho, rows)


def _bmax_last(rows: Sequence[ExtendedSegment], bmax: HalfInt) -> list[ExtendedSegment]:
    target = ([i for i, r in enumerate(rows) if r.B != bmax]
              + [i for i, r in enumerate(rows) if r.B == bmax])
    return reorder_rows(rows, target)


def _try_union(rows: list, i: int):
    """Step 2: find j below i, an order making them adjacent, and a union case."""
    orders = None
    for j in range(len(rows)):
        if not dominates(rows[i].seg, rows[j].seg) or adjacency_blocked(rows, i, j):
            continue
        if orders is None:
            orders = enumerate_admissible_orders(rows)
        for order in orders:
            p = order.index(i)
            if p == 0 or order[p - 1] != j:
                continue
            moved = reorder_rows(rows, order)
            case = union_pair(moved[p - 1], moved[p])
            if case is not None:
                moved[p - 1:p + 1] = union_rows(case)
                return moved, j, order, case
    return None


def _block_rows(E, rho):
    rows = [normalize_row(r) for r in E.rows(rho)]
    if any(r.B < 0 for r in rows):
        raise PreconditionError("the derivative algorithm needs all B >= 0")
    return rows


def algorithm_star(E: ExtendedMultiSegment, rho: Optional[str] = None,
                   trace: Optional[list] = None) -> ExtendedMultiSegment:
    """Union moves on the rows with maximal B until none applies.

    Rows with B = B^max are kept on top.  ``trace``, when given, receives a
    ``(note, rows)`` pair after every reordering and every union.
    """
    rows = _block_rows(E, rho)
    if not rows:
        return E
    bmax = max(r.B for r in rows)
    while True:
        moved = _bmax_last(rows, bmax)
        if trace is not None and moved != rows:
            trace.append(("reorder: B^max rows on top", moved))
        rows = moved
        top = [p for p, r in enumerate(rows) if r.B == bmax]
        if not top:
            break
        for i in top:
            hit = _try_union(rows, i)
            if hit is not None:
                rows, j, order, case = hit
                if trace is not None:
                    trace.append((f"union {case.tag} on rows {j + 1} < {i + 1} "
                                  f"(order {' < '.join(str(x + 1) for x in order)})", rows))
                break
        else:
            break
    return E.with_rows(rho, rows)


@dataclass(frozen=True)
class DerivativeRecord:
    removed: tuple
    result: ExtendedMultiSegment
    reduced: ExtendedMultiSegment


def derivative_step(E: ExtendedMultiSegment, rho: Optional[str] = None) -> DerivativeRecord:
    """Strip one layer B^max from pi(E): returns the removed exponents (ascending)
    and the extended multi-segment of the derivative."""
    rows = _block_rows(E, rho)
    if not rows:
        raise PreconditionError("empty block")
    bmax = max(r.B for r in rows)
    if bmax < 1:
        raise PreconditionError(f"B^max = {bmax}; need B^max >= 1")
    if not nonzero(E):
        raise PreconditionError("pi(E) = 0")
    star = algorithm_star(E, rho)
    rid = star.block(rho).rho.id
    removed = []
    new_rows = []
    for r in star.rows(rho):
        if r.B == bmax:
            removed.extend((rid, x) for x in r.seg.exponents())
            new_rows.append(r.with_(seg=r.seg.shifted(-1)))
        else:
            new_rows.append(r)
    removed.sort(key=lambda p: p[1])
    result = star.with_rows(rho, new_rows)
    assert nonzero(result), "derivative of a nonzero pi(E) came out zero"
    return DerivativeRecord(tuple(removed), result, star)
