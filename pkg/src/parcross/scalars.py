"""Exact Gaussian rationals.

Real and imaginary parts are kept as ``int`` whenever possible and fall back
to :class:`fractions.Fraction` otherwise, so the common integer case stays on
Python's fast integer path.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ParseError

Real = Union[int, Fraction]


def _norm(x) -> Real:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


class GaussQ:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Real = 0, im: Real = 0):
        self.re = _norm(re)
        self.im = _norm(im)

    @classmethod
    def coerce(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot use {x!r} as an exact scalar")

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        if isinstance(other, GaussQ):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        if self.im == 0 and o.im == 0:
            return GaussQ(self.re * o.re, 0)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero scalar")
        num = self * o.conj()
        return GaussQ(Fraction(num.re) / d, Fraction(num.im) / d)

    def conj(self) -> "GaussQ":
        if self.im == 0:
            return self
        return GaussQ(self.re, -self.im)

    def abs2(self) -> Real:
        """Exact squared modulus."""
        return _norm(self.re * self.re + self.im * self.im)

    def denominator(self) -> int:
        return math.lcm(Fraction(self.re).denominator, Fraction(self.im).denominator)

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussQ({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussQ(0)
ONE = GaussQ(1)
I = GaussQ(0, 1)


def _as_gauss(x):
    if isinstance(x, GaussQ):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussQ(x, 0)
    return None


def _fmt_real(x: Real) -> str:
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(z: GaussQ) -> str:
    if z.im == 0:
        return _fmt_real(z.re)
    sign = "-" if z.im < 0 else "+"
    return f"{_fmt_real(z.re)}{sign}{_fmt_real(abs(z.im))}i"


_RAT = r"\d+(?:/\d+)?"
SCALAR_RE = re.compile(rf"([+-]?{_RAT})(?:([+-]{_RAT})i)?")


def _parse_rat(text: str) -> Real:
    return _norm(Fraction(text))


def parse_scalar(text: str) -> GaussQ:
    """Parse ``rational [('+'|'-') rational 'i']``, e.g. ``-3/2`` or ``1+1/2i``."""
    m = SCALAR_RE.fullmatch(text.strip())
    if not m:
        raise ParseError(f"bad scalar {text!r}")
    re_part = _parse_rat(m.group(1))
    im_part = _parse_rat(m.group(2)) if m.group(2) else 0
    return GaussQ(re_part, im_part)


def is_rational_square(q) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    return math.isqrt(q.numerator) ** 2 == q.numerator and math.isqrt(q.denominator) ** 2 == q.denominator


def rational_sqrt(q) -> Fraction:
    q = Fraction(q)
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))
