"""Exact scalars: rationals (``int``/``Fraction``) and Gaussian rationals.

Rational values are kept as plain ``int`` or ``Fraction``; a Gaussian
rational with zero imaginary part collapses back to its real part, so
equality and hashing agree across the two representations.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussianRational):
            return x.re, x.im
        if isinstance(x, (int, Rational)):
            return Fraction(x), Fraction(0)
        return NotImplemented

    def __add__(self, other):
        p = self._parts(other)
        if p is NotImplemented:
            return p
        return gaussian(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        p = self._parts(other)
        if p is NotImplemented:
            return p
        return gaussian(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is NotImplemented:
            return p
        return gaussian(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is NotImplemented:
            return p
        a, b = self.re, self.im
        c, d = p
        return gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is NotImplemented:
            return p
        c, d = p
        n = c * c + d * d
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(c / n, -d / n)

    def __rtruediv__(self, other):
        return GaussianRational(*self._parts(other)) / self

    def __eq__(self, other):
        p = self._parts(other)
        if p is NotImplemented:
            return False
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return gaussian(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


Scalar = Union[int, Fraction, GaussianRational]

I = GaussianRational(0, 1)


def gaussian(re, im=0) -> Scalar:
    """Build a Gaussian rational, collapsing to a rational when ``im == 0``."""
    im = Fraction(im)
    if not im:
        re = Fraction(re)
        return int(re) if re.denominator == 1 else re
    return GaussianRational(re, im)


def conj(x: Scalar) -> Scalar:
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def _frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def scalar_str(x: Scalar) -> str:
    """Canonical text form: ``p/q`` or ``p/q+r/s*i``."""
    if isinstance(x, GaussianRational) and x.im:
        sign = "+" if x.im >= 0 else "-"
        return f"{_frac_str(x.re)}{sign}{_frac_str(abs(x.im))}*i"
    if isinstance(x, GaussianRational):
        return _frac_str(x.re)
    return _frac_str(x)


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`scalar_str`; also accepts plain integers and ``p/q``."""
    text = text.strip()
    if not text.endswith("*i"):
        return gaussian(Fraction(text))
    body = text[:-2]
    # split at the sign separating real and imaginary parts
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] != "/":
            return gaussian(Fraction(body[:pos]), Fraction(body[pos:]))
    return gaussian(0, Fraction(body))
