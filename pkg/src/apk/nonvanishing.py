"""Deciding whether pi(E) is nonzero.

For blocks with all B >= 0 the decision runs over every admissible order:
the block is transported to that order by :func:`apk.orders.reorder_rows`
and the three necessary conditions are checked on each adjacent pair.
Negative B are handled by shifting, together with a per-row bound on B + l.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .ems import (ExtendedMultiSegment, ExtendedSegment, minimal_shift, needs_p_prime,
                  satisfies_p_prime, shift)
from .halfint import HalfInt, sign_pow
from .orders import enumerate_admissible_orders, reorder_rows

SHIFTED = "shifted(1)"
CONTAINED = "contained(2)"
CONTAINING = "containing(3)"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class NecVerdict:
    pair: tuple
    case_used: str
    passed: bool
    witness: str

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return f"rows {self.pair[1] + 1} < {self.pair[0] + 1}: {self.case_used} {status}: {self.witness}"


def _cases(lo: ExtendedSegment, hi: ExtendedSegment) -> list[str]:
    cases = []
    if hi.A >= lo.A and hi.B >= lo.B:
        cases.append(SHIFTED)
    if hi.A >= lo.A and hi.B <= lo.B:
        cases.append(CONTAINED)
    if hi.A <= lo.A and hi.B >= lo.B:
        cases.append(CONTAINING)
    return cases


def _check_case(case: str, lo: ExtendedSegment, hi: ExtendedSegment) -> tuple[bool, str]:
    same = hi.eta == sign_pow(lo.A - lo.B) * lo.eta
    rel = "same sign" if same else "opposite sign"
    if case == SHIFTED:
        if same:
            ok = hi.A - hi.l >= lo.A - lo.l and hi.B + hi.l >= lo.B + lo.l
            return ok, (f"{rel}: A_k-l_k={hi.A - hi.l} >= {lo.A - lo.l}, "
                        f"B_k+l_k={hi.B + hi.l} >= {lo.B + lo.l}")
        ok = hi.B + hi.l > lo.A - lo.l
        return ok, f"{rel}: B_k+l_k={hi.B + hi.l} > A_(k-1)-l_(k-1)={lo.A - lo.l}"
    if case == CONTAINED:
        if same:
            ok = 0 <= hi.l - lo.l <= hi.b - lo.b
            return ok, f"{rel}: 0 <= l_k-l_(k-1)={hi.l - lo.l} <= {hi.b - lo.b}"
        ok = hi.l + lo.l >= lo.b
        return ok, f"{rel}: l_k+l_(k-1)={hi.l + lo.l} >= b_(k-1)={lo.b}"
    if same:
        ok = 0 <= lo.l - hi.l <= lo.b - hi.b
        return ok, f"{rel}: 0 <= l_(k-1)-l_k={lo.l - hi.l} <= {lo.b - hi.b}"
    ok = hi.l + lo.l >= hi.b
    return ok, f"{rel}: l_k+l_(k-1)={hi.l + lo.l} >= b_k={hi.b}"


def nec_pair(lo: ExtendedSegment, hi: ExtendedSegment, cases: Optional[Sequence[str]] = None,
             pair=(1, 0)) -> NecVerdict:
    """Necessary conditions for adjacent rows lo < hi.

    Every applicable case is checked.  Rows with l = b/2 may use either eta.
    """
    applicable = _cases(lo, hi) if cases is None else [c for c in _cases(lo, hi) if c in cases]
    if not applicable and cases is None:
        raise PreconditionError(f"{lo.seg} dominates {hi.seg}; rows are not admissibly ordered")
    first_failure = None
    for rlo, rhi in product(lo.representatives(), hi.representatives()):
        for case in applicable:
            ok, witness = _check_case(case, rlo, rhi)
            if not ok:
                if first_failure is None:
                    first_failure = NecVerdict(pair, case, False, witness)
                break
        else:
            case = applicable[0] if applicable else "none"
            witness = _check_case(case, rlo, rhi)[1] if applicable else "no applicable case"
            return NecVerdict(pair, case, True, witness)
    return first_failure


def nec_adjacent(E: ExtendedMultiSegment, rho: Optional[str], k: int) -> NecVerdict:
    rows = E.rows(rho)
    if not 1 <= k < len(rows):
        raise IndexError(f"k = {k} does not name an adjacent pair")
    if any(r.B < 0 for r in rows):
        raise PreconditionError("necessary conditions are stated for B >= 0")
    return nec_pair(rows[k - 1], rows[k], pair=(k, k - 1))


def _is_ladder(rows) -> bool:
    return all(rows[k].A >= rows[k - 1].A and rows[k].B >= rows[k - 1].B for k in range(1, len(rows)))


def ladder_nonzero(E: ExtendedMultiSegment) -> bool:
    """Non-vanishing for ladder-shaped blocks: condition (1) on each adjacent pair."""
    for blk in E.blocks:
        rows = blk.rows
        if any(r.B < 0 for r in rows) or not _is_ladder(rows):
            raise PreconditionError(f"block {blk.rho.id} is not a non-negative ladder")
        for k in range(1, len(rows)):
            if not nec_pair(rows[k - 1], rows[k], cases=[SHIFTED]).passed:
                return False
    return True


def _block_failure(rows: Sequence[ExtendedSegment]):
    for order in enumerate_admissible_orders(rows):
        moved = reorder_rows(rows, order)
        for p in range(1, len(moved)):
            v = nec_pair(moved[p - 1], moved[p], pair=(order[p], order[p - 1]))
            if not v.passed:
                return order, moved, v
    return None


def _nonneg_failure(E: ExtendedMultiSegment):
    for blk in E.blocks:
        if any(r.B < 0 for r in blk.rows):
            raise PreconditionError("nonzero_nonneg needs all B >= 0; shift first")
        fail = _block_failure(blk.rows)
        if fail is not None:
            return (blk.rho.id,) + fail
    return None


def nonzero_nonneg(E: ExtendedMultiSegment) -> bool:
    """Every adjacent pair of every admissible order passes the necessary conditions."""
    return _nonneg_failure(E) is None


def beta_values(rows: Sequence[ExtendedSegment]) -> list[int]:
    """beta_i = sum over earlier rows of (A_j - B_j)."""
    out, acc = [], 0
    for r in rows:
        out.append(acc)
        acc += int(r.A - r.B)
    return out


def star_bound(row: ExtendedSegment, beta: int) -> HalfInt:
    """Lower bound on B + l for one row."""
    if row.B.is_integer():
        return HalfInt(0)
    eta_matches = (not row.is_full()) and row.eta == sign_pow(beta)
    return HalfInt.from_twice(-1 if eta_matches else 1)


def _star_failure(E: ExtendedMultiSegment):
    for blk in E.blocks:
        rows = blk.rows
        if needs_p_prime(rows) and not satisfies_p_prime(rows):
            raise PreconditionError(f"block {blk.rho.id}: negative B needs an order sorted by B")
        for i, (row, beta) in enumerate(zip(rows, beta_values(rows))):
            bound = star_bound(row, beta)
            if row.B + row.l < bound:
                return blk.rho.id, i, f"B+l = {row.B + row.l} < {bound}"
    return None


def star_condition(E: ExtendedMultiSegment) -> bool:
    return _star_failure(E) is None


def nonzero(E: ExtendedMultiSegment) -> bool:
    if not star_condition(E):
        return False
    return nonzero_nonneg(shift(E, minimal_shift(E)))


def explain(E: ExtendedMultiSegment) -> Optional[str]:
    """None when pi(E) is nonzero, else a line naming the failing check."""
    star = _star_failure(E)
    if star is not None:
        rho, i, msg = star
        return f"row {i + 1} of {rho} fails the lower bound on B+l: {msg}"
    t = minimal_shift(E)
    fail = _nonneg_failure(shift(E, t))
    if fail is None:
        return None
    rho, order, _, verdict = fail
    shown = " < ".join(str(i + 1) for i in order)
    return f"block {rho}, order {shown} (after shift by {t}): {verdict}"
