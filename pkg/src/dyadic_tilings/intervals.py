"""Outward-rounded interval arithmetic over dyadic rationals.

Endpoints are exact dyadic numbers m * 2^e with integer mantissa and
exponent. Every operation rounds the lower endpoint down and the upper
endpoint up to a configurable mantissa width, so a RatInterval computed from
enclosing inputs always encloses the exact real result. Nothing ever rounds
to nearest; enclosure is the whole point.

Mantissa widths are plain ints; 128 bits is a practical default for the
certificate searches in `genfun`, which escalate by doubling (capped at 8192)
when a comparison cannot be decided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ldexp
from typing import Union

DEFAULT_BITS = 128
MAX_BITS = 8192


class PrecisionError(ArithmeticError):
    """An interval operation or comparison is undecidable at this precision."""


def round_down(m: int, e: int, bits: int) -> tuple[int, int]:
    """Largest dyadic with a <= bits mantissa that is <= m * 2^e."""
    excess = m.bit_length() - bits
    if excess <= 0:
        return m, e
    return m >> excess, e + excess


def round_up(m: int, e: int, bits: int) -> tuple[int, int]:
    """Smallest dyadic with a <= bits mantissa that is >= m * 2^e."""
    excess = m.bit_length() - bits
    if excess <= 0:
        return m, e
    return -((-m) >> excess), e + excess


def _cmp(m1: int, e1: int, m2: int, e2: int) -> int:
    """Sign of m1*2^e1 - m2*2^e2."""
    if e1 >= e2:
        d = (m1 << (e1 - e2)) - m2
    else:
        d = m1 - (m2 << (e2 - e1))
    return (d > 0) - (d < 0)


def _cmp_fraction(m: int, e: int, x: Fraction) -> int:
    """Sign of m*2^e - x."""
    num, den = x.numerator, x.denominator
    if e >= 0:
        d = (m << e) * den - num
    else:
        d = m * den - (num << -e)
    return (d > 0) - (d < 0)


def _div_floor(nm: int, ne: int, dm: int, de: int, bits: int) -> tuple[int, int]:
    if nm == 0:
        return 0, 0
    shift = bits + dm.bit_length() - nm.bit_length() + 2
    if shift >= 0:
        q = (nm << shift) // dm
    else:
        q = nm // (dm << -shift)
    return q, ne - de - shift


def _div_ceil(nm: int, ne: int, dm: int, de: int, bits: int) -> tuple[int, int]:
    if nm == 0:
        return 0, 0
    shift = bits + dm.bit_length() - nm.bit_length() + 2
    if shift >= 0:
        q = -((-nm << shift) // dm)
    else:
        q = -((-nm) // (dm << -shift))
    return q, ne - de - shift


def _to_float(m: int, e: int) -> float:
    bl = m.bit_length()
    if bl > 1000:
        # keep ldexp out of overflow range; 53 mantissa bits suffice
        m >>= bl - 64
        e += bl - 64
    try:
        return ldexp(m, e)
    except OverflowError:
        return float("inf") if m > 0 else float("-inf")


Number = Union[int, Fraction, "RatInterval"]


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo_m * 2^lo_e, hi_m * 2^hi_e], outward rounded."""

    lo_m: int
    lo_e: int
    hi_m: int
    hi_e: int
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        if self.bits < 4:
            raise ValueError("mantissa width must be at least 4 bits")
        if _cmp(self.lo_m, self.lo_e, self.hi_m, self.hi_e) > 0:
            raise ValueError("interval endpoints are out of order")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_fraction(cls, x, bits: int = DEFAULT_BITS) -> "RatInterval":
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        if den == 1:
            return cls(*round_down(num, 0, bits), *round_up(num, 0, bits), bits)
        lo = _div_floor(num, 0, den, 0, bits)
        hi = _div_ceil(num, 0, den, 0, bits)
        return cls(*round_down(*lo, bits), *round_up(*hi, bits), bits)

    @classmethod
    def exact(cls, m: int, e: int, bits: int = DEFAULT_BITS) -> "RatInterval":
        return cls(m, e, m, e, bits)

    # -- accessors ---------------------------------------------------------

    @property
    def lo(self) -> Fraction:
        return (
            Fraction(self.lo_m) * Fraction(2) ** self.lo_e
            if self.lo_e < 0
            else Fraction(self.lo_m << self.lo_e)
        )

    @property
    def hi(self) -> Fraction:
        return (
            Fraction(self.hi_m) * Fraction(2) ** self.hi_e
            if self.hi_e < 0
            else Fraction(self.hi_m << self.hi_e)
        )

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def lo_float(self) -> float:
        return _to_float(self.lo_m, self.lo_e)

    def hi_float(self) -> float:
        return _to_float(self.hi_m, self.hi_e)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return _cmp_fraction(self.lo_m, self.lo_e, x) <= 0 <= _cmp_fraction(
            self.hi_m, self.hi_e, x
        )

    def encloses(self, other: "RatInterval") -> bool:
        return (
            _cmp(self.lo_m, self.lo_e, other.lo_m, other.lo_e) <= 0
            and _cmp(self.hi_m, self.hi_e, other.hi_m, other.hi_e) >= 0
        )

    # -- certain comparisons ----------------------------------------------

    def certainly_lt(self, other: Number) -> bool:
        """True only if every value here is below every value there."""
        if isinstance(other, RatInterval):
            return _cmp(self.hi_m, self.hi_e, other.lo_m, other.lo_e) < 0
        return _cmp_fraction(self.hi_m, self.hi_e, Fraction(other)) < 0

    def certainly_gt(self, other: Number) -> bool:
        if isinstance(other, RatInterval):
            return _cmp(self.lo_m, self.lo_e, other.hi_m, other.hi_e) > 0
        return _cmp_fraction(self.lo_m, self.lo_e, Fraction(other)) > 0

    def certainly_ge(self, other: Number) -> bool:
        if isinstance(other, RatInterval):
            return _cmp(self.lo_m, self.lo_e, other.hi_m, other.hi_e) >= 0
        return _cmp_fraction(self.lo_m, self.lo_e, Fraction(other)) >= 0

    def certainly_le(self, other: Number) -> bool:
        if isinstance(other, RatInterval):
            return _cmp(self.hi_m, self.hi_e, other.lo_m, other.lo_e) <= 0
        return _cmp_fraction(self.hi_m, self.hi_e, Fraction(other)) <= 0

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: Number) -> "RatInterval":
        if isinstance(other, RatInterval):
            return other
        return RatInterval.from_fraction(Fraction(other), self.bits)

    def __add__(self, other: Number) -> "RatInterval":
        o = self._coerce(other)
        bits = max(self.bits, o.bits)
        e1 = min(self.lo_e, o.lo_e)
        lo = (self.lo_m << (self.lo_e - e1)) + (o.lo_m << (o.lo_e - e1))
        e2 = min(self.hi_e, o.hi_e)
        hi = (self.hi_m << (self.hi_e - e2)) + (o.hi_m << (o.hi_e - e2))
        return RatInterval(*round_down(lo, e1, bits), *round_up(hi, e2, bits), bits)

    __radd__ = __add__

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi_m, self.hi_e, -self.lo_m, self.lo_e, self.bits)

    def __sub__(self, other: Number) -> "RatInterval":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> "RatInterval":
        return (-self) + self._coerce(other)

    def __mul__(self, other: Number) -> "RatInterval":
        o = self._coerce(other)
        bits = max(self.bits, o.bits)
        cands = [
            (self.lo_m * o.lo_m, self.lo_e + o.lo_e),
            (self.lo_m * o.hi_m, self.lo_e + o.hi_e),
            (self.hi_m * o.lo_m, self.hi_e + o.lo_e),
            (self.hi_m * o.hi_m, self.hi_e + o.hi_e),
        ]
        lo = cands[0]
        hi = cands[0]
        for c in cands[1:]:
            if _cmp(*c, *lo) < 0:
                lo = c
            if _cmp(*c, *hi) > 0:
                hi = c
        return RatInterval(*round_down(*lo, bits), *round_up(*hi, bits), bits)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "RatInterval":
        o = self._coerce(other)
        if o.lo_m <= 0 <= o.hi_m:
            raise PrecisionError("division by an interval containing zero")
        bits = max(self.bits, o.bits)
        pairs = [
            (self.lo_m, self.lo_e, o.lo_m, o.lo_e),
            (self.lo_m, self.lo_e, o.hi_m, o.hi_e),
            (self.hi_m, self.hi_e, o.lo_m, o.lo_e),
            (self.hi_m, self.hi_e, o.hi_m, o.hi_e),
        ]
        floors = [_div_floor(*p, bits) for p in pairs]
        ceils = [_div_ceil(*p, bits) for p in pairs]
        lo = floors[0]
        for c in floors[1:]:
            if _cmp(*c, *lo) < 0:
                lo = c
        hi = ceils[0]
        for c in ceils[1:]:
            if _cmp(*c, *hi) > 0:
                hi = c
        return RatInterval(*round_down(*lo, bits), *round_up(*hi, bits), bits)

    def __rtruediv__(self, other: Number) -> "RatInterval":
        return self._coerce(other) / self

    def square(self) -> "RatInterval":
        """Tighter than self * self when the interval straddles zero."""
        if self.lo_m >= 0:
            return self * self
        if self.hi_m <= 0:
            neg = -self
            return neg * neg
        # straddles zero: lower bound is 0, upper is the larger endpoint square
        c1 = (self.lo_m * self.lo_m, 2 * self.lo_e)
        c2 = (self.hi_m * self.hi_m, 2 * self.hi_e)
        m, e = round_up(*(c1 if _cmp(*c1, *c2) >= 0 else c2), self.bits)
        return RatInterval(0, 0, m, e, self.bits)

    def with_bits(self, bits: int) -> "RatInterval":
        return RatInterval(
            *round_down(self.lo_m, self.lo_e, bits),
            *round_up(self.hi_m, self.hi_e, bits),
            bits,
        )

    # -- serialization -------------------------------------------------------

    def to_hex(self) -> str:
        return f"{_hex_dyadic(self.lo_m, self.lo_e)} {_hex_dyadic(self.hi_m, self.hi_e)}"

    @classmethod
    def from_hex(cls, text: str, bits: int = DEFAULT_BITS) -> "RatInterval":
        lo_s, hi_s = text.split()
        lo = _parse_hex_dyadic(lo_s)
        hi = _parse_hex_dyadic(hi_s)
        return cls(*lo, *hi, bits)

    def __repr__(self) -> str:
        return (
            f"RatInterval[{self.lo_float():.17g}, {self.hi_float():.17g}]"
            f"@{self.bits}b"
        )


def _hex_dyadic(m: int, e: int) -> str:
    sign = "-" if m < 0 else ""
    return f"{sign}0x{abs(m):x}p{e:+d}"


def _parse_hex_dyadic(s: str) -> tuple[int, int]:
    s = s.strip()
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:]
    if not s.startswith("0x"):
        raise ValueError(f"expected 0x..p.. dyadic literal, got {s!r}")
    mant, exp = s[2:].split("p")
    return sign * int(mant, 16), int(exp)
