"""Certified interval arithmetic with exact rational endpoints.

``IntervalReal`` endpoints are ``fractions.Fraction``; all interval
operations here are outward-correct.  Enclosures of cos/sin/arccos come
from mpmath's interval context and are converted back to exact rationals
(binary floats are rationals, so the conversion loses nothing).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from .polynomials import (
    count_real_roots,
    poly_eval,
    poly_gcd,
    poly_to_str,
    refine_isolating_interval,
)

_ZERO = Fraction(0)


def _raw_mpf_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if man == 0 and exp != 0:
        raise OverflowError("non-finite interval endpoint")
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def _fraction_to_iv(fr: Fraction):
    # exact integer endpoints, then one certified division
    return iv.mpf(fr.numerator) / iv.mpf(fr.denominator)


@dataclass(frozen=True)
class IntervalReal:
    """Closed interval [lo, hi] guaranteed to contain the represented real."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @classmethod
    def exact(cls, v) -> "IntervalReal":
        v = Fraction(v)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, o):
        o = _coerce(o)
        return IntervalReal(self.lo + o.lo, self.hi + o.hi)

    def __sub__(self, o):
        o = _coerce(o)
        return IntervalReal(self.lo - o.hi, self.hi - o.lo)

    def __neg__(self):
        return IntervalReal(-self.hi, -self.lo)

    def __mul__(self, o):
        o = _coerce(o)
        vals = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return IntervalReal(min(vals), max(vals))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, o):
        return _coerce(o) - self

    def __truediv__(self, o):
        o = _coerce(o)
        if o.contains_zero():
            raise ZeroDivisionError("division by an interval containing 0")
        vals = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return IntervalReal(min(vals), max(vals))

    def contains(self, v) -> bool:
        v = Fraction(v)
        return self.lo <= v <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int:
        """+1 / -1 when the interval excludes zero, else 0 (undecided)."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def intersects(self, o: "IntervalReal") -> bool:
        return self.lo <= o.hi and o.lo <= self.hi

    def round_outward(self, bits: int) -> "IntervalReal":
        """Widen to dyadic endpoints with denominator 2^bits; caps the bit
        growth of long exact computations at a cost of 2^-bits per call."""
        scale = 1 << bits
        lo = self.lo * scale
        hi = self.hi * scale
        lo_n = lo.numerator // lo.denominator  # floor
        hi_n = -((-hi.numerator) // hi.denominator)  # ceil
        return IntervalReal(Fraction(lo_n, scale), Fraction(hi_n, scale))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _coerce(o) -> IntervalReal:
    if isinstance(o, IntervalReal):
        return o
    if isinstance(o, (int, Fraction)):
        return IntervalReal.exact(o)
    raise TypeError(f"cannot coerce {type(o)!r} to IntervalReal")


def _iv_to_interval(x) -> IntervalReal:
    a, b = x._mpi_
    return IntervalReal(_raw_mpf_to_fraction(a), _raw_mpf_to_fraction(b))


def cos_2pi(theta: Fraction, prec_bits: int = 64) -> IntervalReal:
    """Certified enclosure of cos(2*pi*theta)."""
    old = iv.prec
    try:
        iv.prec = prec_bits
        val = iv.cos(2 * iv.pi * _fraction_to_iv(Fraction(theta)))
    finally:
        iv.prec = old
    return _iv_to_interval(val)


def sin_2pi(theta: Fraction, prec_bits: int = 64) -> IntervalReal:
    """Certified enclosure of sin(2*pi*theta)."""
    old = iv.prec
    try:
        iv.prec = prec_bits
        val = iv.sin(2 * iv.pi * _fraction_to_iv(Fraction(theta)))
    finally:
        iv.prec = old
    return _iv_to_interval(val)


def angle_from_cos_half(x: IntervalReal, prec_bits: int = 64) -> IntervalReal:
    """Enclosure of arccos(x/2) / (2*pi) for an enclosure x of a value in
    (-2, 2); the result lies in (0, 1/2).

    mpmath's interval context has no acos, so we use
    acos(v) = atan2(sqrt(1 - v^2), v), which is certified elementwise.
    """
    lo = max(x.lo, Fraction(-2))
    hi = min(x.hi, Fraction(2))
    old = iv.prec
    try:
        iv.prec = prec_bits
        v = iv.mpf([_fraction_to_iv(lo).a, _fraction_to_iv(hi).b]) / 2
        s = 1 - v * v
        # outward rounding can push the lower endpoint of 1 - v^2 below 0
        s_lo, s_hi = (_raw_mpf_to_fraction(r) for r in s._mpi_)
        if s_lo < 0:
            s = iv.mpf([0, s.b])
        val = iv.atan2(iv.sqrt(s), v) / (2 * iv.pi)
    finally:
        iv.prec = old
    out = _iv_to_interval(val)
    # arccos/2pi maps into [0, 1/2]; trim rounding spill
    return IntervalReal(max(out.lo, _ZERO), min(out.hi, Fraction(1, 2)))


class AlgebraicAngle:
    """An angle theta in (0, 1) with x = 2*cos(2*pi*theta) algebraic.

    The angle is stored as a squarefree integer polynomial with a rational
    isolating interval for x in (-2, 2), plus a flag selecting theta (the
    branch in (0, 1/2)) or its conjugate 1 - theta.
    """

    __slots__ = ("poly", "x_lo", "x_hi", "upper")

    def __init__(self, poly, x_lo, x_hi, upper: bool = False):
        self.poly = tuple(poly)
        self.x_lo = Fraction(x_lo)
        self.x_hi = Fraction(x_hi)
        self.upper = bool(upper)

    def conjugate(self) -> "AlgebraicAngle":
        return AlgebraicAngle(self.poly, self.x_lo, self.x_hi, not self.upper)

    def refine_x(self, width: Fraction) -> None:
        self.x_lo, self.x_hi = refine_isolating_interval(
            self.poly, self.x_lo, self.x_hi, Fraction(width))

    def enclosure(self, prec_bits: int = 64) -> IntervalReal:
        """Certified enclosure of theta; sharpened by refine_x first."""
        base = angle_from_cos_half(
            IntervalReal(self.x_lo, self.x_hi), prec_bits)
        if self.upper:
            return IntervalReal(1 - base.hi, 1 - base.lo)
        return base

    def enclosure_to_width(self, width: Fraction,
                           prec_bits: int = 64) -> IntervalReal:
        width = Fraction(width)
        enc = self.enclosure(prec_bits)
        while enc.width > width:
            self.refine_x((self.x_hi - self.x_lo) / 16)
            prec_bits = min(prec_bits * 2, 1 << 16)
            enc = self.enclosure(prec_bits)
        return enc

    def same_angle(self, other: "AlgebraicAngle", max_iter: int = 128) -> bool:
        """Exact equality of the represented angles."""
        if self.upper != other.upper:
            return False
        g = poly_gcd(self.poly, other.poly)
        if len(g) <= 1:
            return False
        for _ in range(max_iter):
            lo = max(self.x_lo, other.x_lo)
            hi = min(self.x_hi, other.x_hi)
            if lo >= hi:
                return False
            if (count_real_roots(g, lo, hi) == 1
                    and count_real_roots(self.poly, lo, hi) == 1
                    and count_real_roots(other.poly, lo, hi) == 1
                    and poly_eval(self.poly, lo) != 0
                    and poly_eval(self.poly, hi) != 0
                    and poly_eval(other.poly, lo) != 0
                    and poly_eval(other.poly, hi) != 0):
                return True
            self.refine_x((self.x_hi - self.x_lo) / 4)
            other.refine_x((other.x_hi - other.x_lo) / 4)
        raise RuntimeError("angle comparison did not converge")

    def __repr__(self):
        branch = "1-acos" if self.upper else "acos"
        return (f"AlgebraicAngle({branch}(x/2)/2pi, {poly_to_str(self.poly)},"
                f" x in ({self.x_lo}, {self.x_hi}))")


def format_decimal(fr: Fraction, digits: int) -> str:
    """Deterministic fixed-point rendering of a rational."""
    fr = Fraction(fr)
    sign = "-" if fr < 0 else ""
    fr = abs(fr)
    scaled = fr * 10 ** digits
    n = scaled.numerator // scaled.denominator
    # round half away from zero, deterministically
    if 2 * (scaled - n) >= 1:
        n += 1
    whole, frac = divmod(n, 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{str(frac).zfill(digits)}"
