"""Exact elements of (1/2)Z.

A :class:`HalfInt` stores ``twice`` = 2x as a plain int, so every operation
is ordinary integer arithmetic.  Ints mix freely with HalfInts.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class HalfInt:
    __slots__ = ("twice",)

    def __init__(self, value=0):
        if isinstance(value, HalfInt):
            self.twice = value.twice
        elif isinstance(value, bool):
            raise TypeError("bool is not a half-integer")
        elif isinstance(value, int):
            self.twice = 2 * value
        else:
            frac = Fraction(value)
            doubled = 2 * frac
            if doubled.denominator != 1:
                raise ValueError(f"{value!r} is not in (1/2)Z")
            self.twice = int(doubled)

    @classmethod
    def from_twice(cls, twice: int) -> HalfInt:
        obj = cls.__new__(cls)
        obj.twice = twice
        return obj

    @classmethod
    def parse(cls, text) -> HalfInt:
        """Parse ``"k"``, ``"k/2"`` or an int."""
        if isinstance(text, HalfInt):
            return text
        if isinstance(text, bool) or not isinstance(text, (int, str)):
            raise ValueError(f"expected an integer or a 'k/2' string, got {text!r}")
        if isinstance(text, int):
            return cls(text)
        s = text.strip()
        if "/" in s:
            num, _, den = s.partition("/")
            try:
                k, d = int(num), int(den)
            except ValueError:
                raise ValueError(f"malformed half-integer {text!r}") from None
            if d == 1:
                return cls(k)
            if d != 2 or k % 2 == 0:
                raise ValueError(f"{text!r} is not of the form k or k/2 with k odd")
            return cls.from_twice(k)
        try:
            return cls(int(s))
        except ValueError:
            raise ValueError(f"malformed half-integer {text!r}") from None

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __int__(self) -> int:
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __index__(self) -> int:
        return int(self)

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def _coerce(self, other):
        if isinstance(other, HalfInt):
            return other.twice
        if isinstance(other, int) and not isinstance(other, bool):
            return 2 * other
        return None

    def __add__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return HalfInt.from_twice(self.twice + t)

    __radd__ = __add__

    def __sub__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return HalfInt.from_twice(self.twice - t)

    def __rsub__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return HalfInt.from_twice(t - self.twice)

    def __neg__(self):
        return HalfInt.from_twice(-self.twice)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt.from_twice(self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return self.twice == t

    def __lt__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return self.twice < t

    def __hash__(self):
        if self.twice % 2 == 0:
            return hash(self.twice // 2)
        return hash(("half", self.twice))

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({str(self)!r})"


def sign_pow(n) -> int:
    """(-1)**n for an integral int or HalfInt."""
    return -1 if int(n) % 2 else 1
