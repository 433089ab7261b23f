"""Characters, the Aubert dual, packet enumeration and separated Langlands data."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence

from .ems import (AParameter, Block, ExtendedMultiSegment, ExtendedSegment, SegmentError, Summand,
                  minimal_shift, needs_p_prime, normalize_row, satisfies_p_prime, shift,
                  sign_condition, to_parameter, validate_parameter)
from .halfint import HalfInt, sign_pow
from .nonvanishing import PreconditionError, nonzero
from .orders import reorder_rows

B_PARITY = "b-parity"
LITERAL = "literal"

# tied B values: reorder by A first, or read the rows as stored
TIES_SORTED = "sorted"
TIES_AS_GIVEN = "as-given"


def _sign_str(s: int) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class Character:
    """Signs on the summands of psi, listed in the order of ``summands``."""

    summands: tuple
    signs: tuple

    def value(self, i: int) -> int:
        return self.signs[i]

    def descends(self) -> bool:
        """Equal summands carry equal signs."""
        seen = {}
        for s, e in zip(self.summands, self.signs):
            key = (s.rho.id, s.a, s.b)
            if seen.setdefault(key, e) != e:
                return False
        return True

    def central_value(self) -> int:
        out = 1
        for e in self.signs:
            out *= e
        return out

    def permuted(self, perm: Sequence[int]) -> Character:
        return Character(tuple(self.summands[p] for p in perm), tuple(self.signs[p] for p in perm))

    def __str__(self):
        return "(" + ",".join(_sign_str(e) for e in self.signs) + ")"


def z_set(rows: Sequence[ExtendedSegment], i: int, parity_reading: str = B_PARITY) -> set[int]:
    """Indices j entering the character formula for row i.

    Midpoints are compared through A + B.  The default parity clause compares
    b_i with b_j; ``parity_reading=LITERAL`` compares b_i with #[A_j, B_i].
    """
    ri = rows[i]
    out = set()
    for j, rj in enumerate(rows):
        if j == i:
            continue
        if parity_reading == LITERAL:
            other = int(rj.A - ri.B) + 1
        elif parity_reading == B_PARITY:
            other = rj.b
        else:
            raise ValueError(f"unknown parity reading {parity_reading!r}")
        if (ri.b - other) % 2 == 0:
            continue
        mid_i, mid_j = ri.A + ri.B, rj.A + rj.B
        if j < i and mid_j > mid_i and rj.b > ri.b:
            out.add(j)
        elif j > i and mid_j < mid_i and rj.b < ri.b:
            out.add(j)
    return out


def _tie_sorted(rows: Sequence[ExtendedSegment]) -> tuple[list[ExtendedSegment], list[int]]:
    """Rows moved into (B, A) order by changes of order, with the position map back."""
    target = sorted(range(len(rows)), key=lambda i: (rows[i].B, rows[i].A, i))
    if target == list(range(len(rows))):
        return list(rows), target
    return reorder_rows(rows, target), target


def character_of(E: ExtendedMultiSegment, parity_reading: str = B_PARITY,
                 check: bool = True, ties: str = TIES_SORTED) -> Character:
    """eta_E on the summands of E, in block order then row order.

    The formula is not invariant when two rows with equal B trade places:
    both signs of the pair flip in some cases.  By default each block is first
    brought into (B, A) order, which makes the result a function of pi(E).
    ``ties=TIES_AS_GIVEN`` evaluates the formula on the stored order.
    """
    if ties not in (TIES_SORTED, TIES_AS_GIVEN):
        raise ValueError(f"unknown tie rule {ties!r}")
    if check and not nonzero(E):
        raise PreconditionError("pi(E) = 0 has no character")
    summands, signs = [], []
    for blk in E.blocks:
        rows = blk.rows
        if not satisfies_p_prime(rows):
            raise PreconditionError(f"block {blk.rho.id}: the character needs an order sorted by B")
        target = list(range(len(rows)))
        if ties == TIES_SORTED:
            rows, target = _tie_sorted(rows)
        local = [0] * len(rows)
        for i, row in enumerate(rows):
            z = len(z_set(rows, i, parity_reading))
            s = sign_pow(z + row.b // 2 + row.l)
            if row.b % 2:
                s *= row.eta
            local[target[i]] = (Summand(blk.rho, int(row.A + row.B) + 1, row.b), s)
        for summand, s in local:
            summands.append(summand)
            signs.append(s)
    return Character(tuple(summands), tuple(signs))


# ---------------------------------------------------------------- Aubert dual

def _dual_block(rows: Sequence[ExtendedSegment]) -> list[ExtendedSegment]:
    if not satisfies_p_prime(rows):
        raise PreconditionError("the dual formula needs an order sorted by B")
    beta_total = sum(r.b for r in rows)
    out = []
    for i, row in enumerate(rows):
        new_seg_b = int(row.A + row.B) + 1
        if row.B.is_integer():
            l_hat = row.l + int(row.B)
            eta_hat = sign_pow(beta_total - row.b) * row.eta
        else:
            alpha = sum(int(r.A + r.B) for r in rows[i + 1:])
            beta = sum(int(r.A - r.B) for r in rows[:i])
            eta = -sign_pow(beta) if row.is_full() else row.eta
            shift_half = HalfInt.from_twice(1 if eta == sign_pow(beta) else -1)
            l_hat = int(row.B + shift_half) + row.l
            eta_hat = sign_pow(alpha + beta + 1) * eta
        if not 0 <= l_hat <= new_seg_b // 2:
            raise SegmentError(f"row {i + 1}: dual l = {l_hat} outside [0, {new_seg_b // 2}]")
        out.append(normalize_row(ExtendedSegment.of(row.A, -row.B, l_hat, eta_hat)))
    out.reverse()
    return out


def aubert_dual(E: ExtendedMultiSegment) -> ExtendedMultiSegment:
    """The dual multi-segment: [A,B] goes to [A,-B] and each block's order is reversed."""
    return ExtendedMultiSegment(tuple(Block(blk.rho, tuple(_dual_block(blk.rows))) for blk in E.blocks),
                                E.group)


# ---------------------------------------------------------------- packets

@dataclass(frozen=True)
class PacketMember:
    E: ExtendedMultiSegment
    character: Character


def _row_options(seg_A: HalfInt, seg_B: HalfInt) -> list[ExtendedSegment]:
    b = int(seg_A - seg_B) + 1
    opts = []
    for l in range(b // 2 + 1):
        for eta in ((1,) if 2 * l == b else (1, -1)):
            opts.append(ExtendedSegment.of(seg_A, seg_B, l, eta))
    return opts


@dataclass(frozen=True)
class _Layout:
    """How the summands of psi are arranged into ordered blocks."""

    rhos: tuple
    order: tuple      # per block, the summand indices in (B, A) order
    group: object

    @classmethod
    def of(cls, psi: AParameter) -> _Layout:
        rhos = tuple(psi.rhos())
        order = []
        for rho in rhos:
            idx = [k for k, s in enumerate(psi.summands) if s.rho.id == rho.id]
            idx.sort(key=lambda k: (psi.summands[k].B, psi.summands[k].A))
            order.append(tuple(idx))
        return cls(rhos, tuple(order), psi.group)

    def flat(self) -> list[int]:
        return [k for blk in self.order for k in blk]

    def build(self, rows: Sequence[ExtendedSegment]) -> ExtendedMultiSegment:
        blocks, pos = [], 0
        for rho, idx in zip(self.rhos, self.order):
            blocks.append(Block(rho, tuple(rows[pos:pos + len(idx)])))
            pos += len(idx)
        return ExtendedMultiSegment(tuple(blocks), self.group)


def _options(psi: AParameter, layout: _Layout) -> list[list[ExtendedSegment]]:
    return [_row_options(psi.summands[k].A, psi.summands[k].B) for k in layout.flat()]


def _survivors(layout: _Layout, options, first: int) -> list[tuple]:
    """Index tuples of the candidates (with row 0 fixed to option ``first``) that survive."""
    out = []
    ranges = [range(len(o)) for o in options[1:]]
    for rest in product(*ranges):
        choice = (first,) + rest
        E = layout.build([options[p][c] for p, c in enumerate(choice)])
        if sign_condition(E) and nonzero(E):
            out.append(choice)
    return out


def _worker(args):
    layout, options, first = args
    return _survivors(layout, options, first)


def _thread_count(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("APK_THREADS", "1")))
    except ValueError:
        return 1


def _surviving_choices(psi: AParameter, strict: bool, workers: Optional[int]):
    report = validate_parameter(psi, strict)
    if not report.ok:
        raise ValueError(f"invalid parameter:\n{report}")
    layout = _Layout.of(psi)
    options = _options(psi, layout)
    if not options:
        return layout, options, [()]
    jobs = [(layout, options, f) for f in range(len(options[0]))]
    n = _thread_count(workers)
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(n, len(jobs))) as pool:
            parts = list(pool.map(_worker, jobs))
    else:
        parts = [_worker(j) for j in jobs]
    return layout, options, [c for part in parts for c in part]


def packet_enumerate(psi: AParameter, strict: bool = False, parity_reading: str = B_PARITY,
                     workers: Optional[int] = None) -> list[PacketMember]:
    """Every nonzero pi(E) over psi, each with its character.

    Rows are ordered by (B, A) inside each block.  Characters list their signs
    in the summand order of ``psi``.
    """
    layout, options, choices = _surviving_choices(psi, strict, workers)
    flat = layout.flat()
    back = sorted(range(len(flat)), key=lambda p: flat[p])
    out = []
    for choice in choices:
        E = layout.build([options[p][c] for p, c in enumerate(choice)])
        char = character_of(E, parity_reading, check=False).permuted(back)
        out.append(PacketMember(E, char))
    return out


def packet_count(psi: AParameter, strict: bool = False, workers: Optional[int] = None) -> int:
    return len(_surviving_choices(psi, strict, workers)[2])


# ---------------------------------------------------------------- Langlands data

@dataclass(frozen=True)
class LanglandsData:
    """Steinberg part as (rho id, x, y) for Delta[x, y] (x >= y), tempered part as
    (rho id, a, eps) for rho x S_a with sign eps."""

    steinberg: tuple
    tempered: tuple

    def __str__(self):
        parts = []
        for rid, x, y in self.steinberg:
            parts.append(f"{rid}|.|^{x}" if x == y else f"Delta_{rid}[{x},{y}]")
        temp = ",".join(f"{HalfInt.from_twice(a - 1)}{_sign_str(e)}" for _, a, e in self.tempered)
        return f"L({', '.join(parts)}; pi({temp}))"


def is_separated(rows: Sequence[ExtendedSegment]) -> bool:
    return all(rows[i].B > rows[j].A for i in range(len(rows)) for j in range(i))


def langlands_separated(E: ExtendedMultiSegment, check: bool = True) -> LanglandsData:
    for blk in E.blocks:
        if not is_separated(blk.rows):
            raise PreconditionError(f"block {blk.rho.id} is not separated")
    if check and not nonzero(E):
        raise PreconditionError("pi(E) = 0")
    t = minimal_shift(E)
    Et = shift(E, t)
    stein, temp = [], []
    for rho, _, row in Et.all_rows():
        for k in range(row.l):
            x, y = row.B + k - t, -(row.A - k) + t
            if x - y + 1 > 0:
                stein.append((rho.id, x, y))
        for k in range(row.b - 2 * row.l):
            a = int(2 * (row.B + row.l + k)) + 1 - 2 * t
            if a < 0:
                raise SegmentError(f"shift-back produced S_{a}")
            if a > 0:
                temp.append((rho.id, a, sign_pow(k) * row.eta))
    stein.sort(key=lambda s: (s[1] + s[2], s[1], s[0]))
    temp.sort(key=lambda s: (s[0], s[1]))
    return LanglandsData(tuple(stein), tuple(temp))
