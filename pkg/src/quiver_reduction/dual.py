"""Forward-mode dual numbers with vector tangents.

A :class:`Dual` carries a real value and the gradient of that value with
respect to a fixed set of seed variables.  The evaluators in this package
are written against plain arithmetic plus :func:`exp`, :func:`log` and
:func:`logaddexp`, so the same code runs on floats, numpy arrays,
``mpmath.mpf`` and duals.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np


class Dual:
    __slots__ = ("value", "tangent")

    def __init__(self, value, tangent):
        self.value = float(value)
        self.tangent = np.asarray(tangent, dtype=float)

    @classmethod
    def seed(cls, values) -> list["Dual"]:
        """One dual per entry of ``values``, seeded with the unit vectors."""
        n = len(values)
        eye = np.eye(n)
        return [cls(v, eye[i]) for i, v in enumerate(values)]

    def _lift(self, other) -> "Dual":
        if isinstance(other, Dual):
            return other
        return Dual(_real(other), np.zeros_like(self.tangent))

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.value + o.value, self.tangent + o.tangent)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Dual(self.value - o.value, self.tangent - o.tangent)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Dual(-self.value, -self.tangent)

    def __mul__(self, other):
        if not isinstance(other, Dual):
            c = _real(other)
            return Dual(self.value * c, self.tangent * c)
        return Dual(
            self.value * other.value,
            self.value * other.tangent + other.value * self.tangent,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Dual):
            c = _real(other)
            return Dual(self.value / c, self.tangent / c)
        q = self.value / other.value
        return Dual(q, (self.tangent - q * other.tangent) / other.value)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, exponent):
        if isinstance(exponent, Dual):
            return exp(exponent * log(self))
        e = _real(exponent)
        if e == 0:
            return Dual(1.0, np.zeros_like(self.tangent))
        return Dual(
            self.value**e, e * self.value ** (e - 1) * self.tangent
        )

    def __repr__(self) -> str:
        return f"Dual({self.value!r}, {self.tangent!r})"


def _real(x) -> float:
    if isinstance(x, Fraction):
        return x.numerator / x.denominator
    return float(x)


def _is_mp(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def exp(x):
    if isinstance(x, Dual):
        e = math.exp(x.value)
        return Dual(e, e * x.tangent)
    if _is_mp(x):
        return mpmath.exp(x)
    return np.exp(x)


def log(x):
    if isinstance(x, Dual):
        return Dual(math.log(x.value), x.tangent / x.value)
    if _is_mp(x):
        return mpmath.log(x)
    return np.log(x)


def logaddexp(a, b):
    """``log(exp(a) + exp(b))`` without overflow, for any supported scalar."""
    if isinstance(a, Dual) or isinstance(b, Dual):
        if not isinstance(a, Dual):
            a = b._lift(a)
        if not isinstance(b, Dual):
            b = a._lift(b)
        value = float(np.logaddexp(a.value, b.value))
        wa = math.exp(a.value - value)
        wb = math.exp(b.value - value)
        return Dual(value, wa * a.tangent + wb * b.tangent)
    if _is_mp(a) or _is_mp(b):
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        hi, lo = (a, b) if a >= b else (b, a)
        return hi + mpmath.log1p(mpmath.exp(lo - hi))
    return np.logaddexp(a, b)


def lincomb(coeffs, xs):
    """``sum(c * x)`` over nonzero rational coefficients.

    Coefficients enter as ``x * numerator / denominator`` so that mpmath
    values keep their working precision.
    """
    total = 0
    for c, x in zip(coeffs, xs):
        if c == 0:
            continue
        c = Fraction(c)
        term = x * c.numerator
        if c.denominator != 1:
            term = term / c.denominator
        total = term if isinstance(total, int) and total == 0 else total + term
    return total
