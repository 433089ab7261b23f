"""Extended multi-segments: data model, validation and simple projections.

Rows inside a block are stored in the block's admissible order, ascending
(index 0 is the minimal element).  Nothing in this package reorders rows
silently; see :mod:`apk.orders` for explicit reordering.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Optional, Sequence

from .halfint import HalfInt, sign_pow

ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"
SO_ODD = "SO_odd"
SP = "Sp"


class SegmentError(ValueError):
    pass


@dataclass(frozen=True)
class RhoLabel:
    id: str
    dim: int = 1
    selfdual: str = ORTHOGONAL

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"rho {self.id!r}: dim must be positive")
        if self.selfdual not in (ORTHOGONAL, SYMPLECTIC):
            raise ValueError(f"rho {self.id!r}: selfdual must be orthogonal or symplectic")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in (SO_ODD, SP):
            raise ValueError(f"unknown group family {self.family!r}")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    @property
    def dual_dim(self) -> int:
        """Dimension N of the standard representation of the dual group."""
        return 2 * self.rank if self.family == SO_ODD else 2 * self.rank + 1

    def __str__(self):
        if self.family == SO_ODD:
            return f"SO_{2 * self.rank + 1}"
        return f"Sp_{2 * self.rank}"


def good_parity(rho: RhoLabel, group: GroupSpec, a: int, b: int) -> bool:
    odd = (a + b) % 2 == 1
    if rho.selfdual == ORTHOGONAL:
        return odd if group.family == SO_ODD else not odd
    return not odd if group.family == SO_ODD else odd


@dataclass(frozen=True)
class Segment:
    A: HalfInt
    B: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "A", HalfInt(self.A))
        object.__setattr__(self, "B", HalfInt(self.B))
        if not (self.A - self.B).is_integer():
            raise SegmentError(f"[{self.A},{self.B}]: A - B must be an integer")
        if self.A - self.B + 1 < 0:
            raise SegmentError(f"[{self.A},{self.B}]: negative length")

    @property
    def length(self) -> int:
        return int(self.A - self.B) + 1

    def exponents(self) -> list[HalfInt]:
        """B, B+1, ..., A."""
        return [self.B + k for k in range(self.length)]

    def shifted(self, t: int) -> Segment:
        return Segment(self.A + t, self.B + t)

    def __str__(self):
        return f"[{self.A},{self.B}]"


def seg_length(seg: Segment) -> int:
    return seg.length


def dominates(s1: Segment, s2: Segment) -> bool:
    """Strict dominance: A1 > A2 and B1 > B2."""
    return s1.A > s2.A and s1.B > s2.B


class ExtendedSegment:
    """A row ``([A,B], l, eta)``.

    Equality and hashing follow the equivalence of rows: ``eta`` is ignored
    when ``2l == b``.  The raw ``eta`` is still kept so validation can see
    exactly what was given.
    """

    __slots__ = ("seg", "l", "eta")

    def __init__(self, seg: Segment, l: int, eta: int):
        self.seg = seg
        self.l = l
        self.eta = eta

    @classmethod
    def of(cls, A, B, l: int, eta: int = 1) -> ExtendedSegment:
        return cls(Segment(HalfInt(A), HalfInt(B)), l, eta)

    @property
    def A(self) -> HalfInt:
        return self.seg.A

    @property
    def B(self) -> HalfInt:
        return self.seg.B

    @property
    def b(self) -> int:
        return self.seg.length

    def is_full(self) -> bool:
        """True when l = b/2, i.e. the row has no circles and eta is immaterial."""
        return 2 * self.l == self.b

    def key(self):
        eta = 1 if self.is_full() else self.eta
        return (self.seg.A.twice, self.seg.B.twice, self.l, eta)

    def __eq__(self, other):
        if not isinstance(other, ExtendedSegment):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def with_(self, **kw) -> ExtendedSegment:
        seg = kw.pop("seg", self.seg)
        return ExtendedSegment(seg, kw.pop("l", self.l), kw.pop("eta", self.eta))

    def representatives(self) -> list[ExtendedSegment]:
        """Both eta choices when the row is full, else just the row."""
        if self.is_full():
            return [self.with_(eta=1), self.with_(eta=-1)]
        return [self]

    def normalized(self) -> ExtendedSegment:
        return normalize_row(self)

    def __repr__(self):
        return f"([{self.A},{self.B}], {self.l}, {'+' if self.eta > 0 else '-'})"


def normalize_row(row: ExtendedSegment) -> ExtendedSegment:
    """Fold a raw ``l`` into ``[0, b/2]`` via (Z/bZ)/{+-1}; canonical eta at l = b/2."""
    b = row.b
    l = row.l
    if b == 0:
        if l != 0:
            raise SegmentError("empty segment with nonzero l")
        return row.with_(eta=1)
    l %= b
    if 2 * l > b:
        l = b - l
    eta = 1 if 2 * l == b else row.eta
    return row.with_(l=l, eta=eta)


def row_sign(row: ExtendedSegment) -> int:
    """(-1)^(floor(b/2) + l) * eta^b."""
    b = row.b
    s = sign_pow(b // 2 + row.l)
    if b % 2:
        s *= row.eta
    return s


@dataclass(frozen=True)
class Block:
    rho: RhoLabel
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


@dataclass(frozen=True)
class ExtendedMultiSegment:
    """A per-rho family of ordered rows, with an optional group context."""

    blocks: tuple
    group: Optional[GroupSpec] = None

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        ids = [blk.rho.id for blk in self.blocks]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate rho ids among blocks")

    @classmethod
    def single(cls, rows: Iterable[ExtendedSegment], rho: Optional[RhoLabel] = None,
               group: Optional[GroupSpec] = None) -> ExtendedMultiSegment:
        return cls((Block(rho or RhoLabel("rho"), tuple(rows)),), group)

    @property
    def rhos(self) -> list[RhoLabel]:
        return [blk.rho for blk in self.blocks]

    def block(self, rho_id: Optional[str] = None) -> Block:
        if rho_id is None:
            if len(self.blocks) != 1:
                raise KeyError("several blocks present; name the rho")
            return self.blocks[0]
        for blk in self.blocks:
            if blk.rho.id == rho_id:
                return blk
        raise KeyError(f"no block for rho {rho_id!r}")

    def rows(self, rho_id: Optional[str] = None) -> tuple:
        return self.block(rho_id).rows

    def with_rows(self, rho_id: Optional[str], rows: Sequence[ExtendedSegment]) -> ExtendedMultiSegment:
        target = self.block(rho_id).rho.id
        blocks = tuple(Block(blk.rho, tuple(rows)) if blk.rho.id == target else blk
                       for blk in self.blocks)
        return replace(self, blocks=blocks)

    def all_rows(self) -> Iterator[tuple[RhoLabel, int, ExtendedSegment]]:
        for blk in self.blocks:
            for i, row in enumerate(blk.rows):
                yield blk.rho, i, row

    def normalized(self) -> ExtendedMultiSegment:
        return replace(self, blocks=tuple(Block(blk.rho, tuple(normalize_row(r) for r in blk.rows))
                                          for blk in self.blocks))

    def __eq__(self, other):
        if not isinstance(other, ExtendedMultiSegment):
            return NotImplemented
        return self.group == other.group and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.group, self.blocks))


@dataclass(frozen=True)
class Summand:
    rho: RhoLabel
    a: int
    b: int

    @property
    def A(self) -> HalfInt:
        return HalfInt.from_twice(self.a + self.b - 2)

    @property
    def B(self) -> HalfInt:
        return HalfInt.from_twice(self.a - self.b)

    def segment(self) -> Segment:
        return Segment(self.A, self.B)

    def __str__(self):
        return f"{self.rho.id}⊠S_{self.a}⊠S_{self.b}"


@dataclass(frozen=True)
class AParameter:
    summands: tuple
    group: Optional[GroupSpec] = None

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    def rhos(self) -> list[RhoLabel]:
        seen = {}
        for s in self.summands:
            seen.setdefault(s.rho.id, s.rho)
        return list(seen.values())

    def dimension(self) -> int:
        return sum(s.rho.dim * s.a * s.b for s in self.summands)

    def multiset(self) -> Counter:
        return Counter((s.rho.id, s.a, s.b) for s in self.summands)

    def __str__(self):
        return " + ".join(str(s) for s in self.summands)


# ---------------------------------------------------------------- validation

@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    rho: Optional[str] = None
    row: Optional[int] = None

    def __str__(self):
        where = ""
        if self.rho is not None:
            where = f"rho {self.rho}"
            if self.row is not None:
                where += f", row {self.row + 1}"
            where = f" ({where})"
        return f"{self.kind}{where}: {self.message}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind, message, rho=None, row=None):
        self.violations.append(Violation(kind, message, rho, row))

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def admissibility_violations(rows: Sequence[ExtendedSegment]) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, where row i dominates the later row j."""
    bad = []
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if dominates(rows[i].seg, rows[j].seg):
                bad.append((i, j))
    return bad


def satisfies_p_prime(rows: Sequence[ExtendedSegment]) -> bool:
    """B_i > B_j implies i after j."""
    return all(rows[i].B <= rows[j].B for i in range(len(rows)) for j in range(i + 1, len(rows)))


def needs_p_prime(rows: Sequence[ExtendedSegment]) -> bool:
    return any(r.B < 0 for r in rows)


def sign_condition(E: ExtendedMultiSegment) -> bool:
    s = 1
    for _, _, row in E.all_rows():
        s *= row_sign(row)
    return s == 1


def validate(E: ExtendedMultiSegment, strict: bool = False) -> ValidationReport:
    report = ValidationReport()
    rows_ok = True
    for blk in E.blocks:
        rid = blk.rho.id
        cosets = set()
        for i, row in enumerate(blk.rows):
            b = row.b
            if b < 1:
                report.add("segment", f"{row.seg} is empty", rid, i)
                rows_ok = False
                continue
            if not 0 <= row.l <= b // 2:
                report.add("l-range", f"l = {row.l} outside [0, {b // 2}]", rid, i)
                rows_ok = False
            if row.eta not in (1, -1):
                report.add("eta", f"eta = {row.eta} is not +-1", rid, i)
                rows_ok = False
            if row.A + row.B < 0:
                report.add("A+B", f"A + B = {row.A + row.B} < 0", rid, i)
            cosets.add(row.B.is_integer())
        if len(cosets) > 1:
            report.add("coset", "B values lie in different cosets of Z", rid)
        for i, j in admissibility_violations(blk.rows):
            report.add("admissible", f"row {i + 1} {blk.rows[i].seg} dominates later row "
                       f"{j + 1} {blk.rows[j].seg}", rid, j)
        if needs_p_prime(blk.rows) and not satisfies_p_prime(blk.rows):
            report.add("P'", "negative B present but the order is not sorted by B", rid)
    if rows_ok and not sign_condition(E):
        report.add("sign", "product of (-1)^(floor(b/2)+l) eta^b is -1")
    if strict:
        if E.group is None:
            report.add("group", "strict validation needs a group")
        else:
            for rho, i, row in E.all_rows():
                if row.b < 1 or row.A + row.B < 0:
                    continue
                a, b = int(row.A + row.B) + 1, row.b
                if not good_parity(rho, E.group, a, b):
                    report.add("parity", f"{rho.id}⊠S_{a}⊠S_{b} is not of good parity for "
                               f"{E.group}", rho.id, i)
            dim = sum(rho.dim * (int(row.A + row.B) + 1) * row.b for rho, _, row in E.all_rows())
            if dim != E.group.dual_dim:
                report.add("dimension", f"dim psi = {dim} but {E.group} needs {E.group.dual_dim}")
    return report


def validate_parameter(psi: AParameter, strict: bool = False) -> ValidationReport:
    report = ValidationReport()
    for i, s in enumerate(psi.summands):
        if s.a < 1 or s.b < 1:
            report.add("summand", f"a, b must be positive in {s}", s.rho.id, i)
    cosets: dict = {}
    for s in psi.summands:
        cosets.setdefault(s.rho.id, set()).add((s.a - s.b) % 2)
    for rid, cs in cosets.items():
        if len(cs) > 1:
            report.add("coset", "B values lie in different cosets of Z", rid)
    if strict:
        if psi.group is None:
            report.add("group", "strict validation needs a group")
        else:
            for i, s in enumerate(psi.summands):
                if not good_parity(s.rho, psi.group, s.a, s.b):
                    report.add("parity", f"{s} is not of good parity for {psi.group}", s.rho.id, i)
            if psi.dimension() != psi.group.dual_dim:
                report.add("dimension", f"dim psi = {psi.dimension()} but {psi.group} needs "
                           f"{psi.group.dual_dim}")
    return report


# ---------------------------------------------------------------- projections

def support(E: ExtendedMultiSegment) -> Counter:
    """The support as a multiset of (rho id, Segment)."""
    return Counter((rho.id, row.seg) for rho, _, row in E.all_rows())


def exponent_multiset(E: ExtendedMultiSegment) -> Counter:
    """Every rho|.|^x occurring in the support, with multiplicity."""
    c = Counter()
    for rho, _, row in E.all_rows():
        for x in row.seg.exponents():
            c[(rho.id, x)] += 1
    return c


def to_parameter(E: ExtendedMultiSegment) -> AParameter:
    summands = []
    for rho, _, row in E.all_rows():
        a = int(row.A + row.B) + 1
        if a <= 0:
            raise SegmentError(f"{row.seg}: A + B < 0 gives a = {a}")
        summands.append(Summand(rho, a, row.b))
    return AParameter(tuple(summands), E.group)


def shift(E: ExtendedMultiSegment, t: int) -> ExtendedMultiSegment:
    """Move every segment [A,B] to [A+t, B+t]; (l, eta) and order are kept."""
    if t < 0:
        raise ValueError("shift amount must be non-negative")
    blocks = tuple(Block(blk.rho, tuple(r.with_(seg=r.seg.shifted(t)) for r in blk.rows))
                   for blk in E.blocks)
    return replace(E, blocks=blocks)


def minimal_shift(E: ExtendedMultiSegment) -> int:
    """Least t >= 0 with every B + t >= 0."""
    t = 0
    for _, _, row in E.all_rows():
        if row.B < 0:
            # ceil(-B)
            t = max(t, (-row.B.twice + 1) // 2)
    return t
