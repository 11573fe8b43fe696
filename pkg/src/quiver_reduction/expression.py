"""Small expression trees for subtraction-free rational-exponent formulas.

Leaves are monomials ``y_1^{a_1} ... y_r^{a_r}`` with rational exponents.
Inner nodes are sums, products and rational powers.  The smart
constructors :func:`power`, :func:`product` and :func:`add` fold the cheap
identities (monomial merging, nested powers, repeated bases) but make no
attempt at canonical simplification.  Subtrees may be shared; evaluation
memoises on node identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import dual


class Expr:
    def log_eval(self, logy, _cache=None):
        """Logarithm of the value at ``y = exp(logy)``; generic over scalar type."""
        cache = {} if _cache is None else _cache
        key = id(self)
        if key not in cache:
            cache[key] = self._log_eval(logy, cache)
        return cache[key]

    def evaluate(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        return np.exp(self.log_eval(list(np.log(y).T)))

    def _log_eval(self, logy, cache):  # pragma: no cover - abstract
        raise NotImplementedError

    def to_str(self, names) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_str(None)


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: int

    def _log_eval(self, logy, cache):
        return float(np.log(self.value))

    def to_str(self, names) -> str:
        return str(self.value)


@dataclass(frozen=True, eq=False)
class Monomial(Expr):
    exponents: tuple[Fraction, ...]

    def _log_eval(self, logy, cache):
        return dual.lincomb(self.exponents, logy)

    def is_one(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def to_str(self, names) -> str:
        names = names or [f"y{i + 1}" for i in range(len(self.exponents))]
        return format_monomial(self.exponents, names)


@dataclass(frozen=True, eq=False)
class Sum(Expr):
    terms: tuple[Expr, ...]

    def _log_eval(self, logy, cache):
        acc = None
        for t in self.terms:
            v = t.log_eval(logy, cache)
            acc = v if acc is None else dual.logaddexp(acc, v)
        return acc

    def to_str(self, names) -> str:
        return "(" + " + ".join(t.to_str(names) for t in self.terms) + ")"


@dataclass(frozen=True, eq=False)
class Power(Expr):
    base: Expr
    exponent: Fraction

    def _log_eval(self, logy, cache):
        v = self.base.log_eval(logy, cache)
        e = self.exponent
        out = v * e.numerator
        return out / e.denominator if e.denominator != 1 else out

    def to_str(self, names) -> str:
        return f"{self.base.to_str(names)}^{_fmt_exp(self.exponent)}"


@dataclass(frozen=True, eq=False)
class Product(Expr):
    factors: tuple[Expr, ...]

    def _log_eval(self, logy, cache):
        total = 0
        for f in self.factors:
            total = total + f.log_eval(logy, cache)
        return total

    def to_str(self, names) -> str:
        num, den = [], []
        for f in self.factors:
            if isinstance(f, Power) and f.exponent < 0:
                den.append(power(f.base, -f.exponent).to_str(names))
            elif isinstance(f, Monomial):
                pos = tuple(max(e, 0) for e in f.exponents)
                neg = tuple(max(-e, 0) for e in f.exponents)
                if any(pos):
                    num.append(Monomial(pos).to_str(names))
                if any(neg):
                    den.append(Monomial(neg).to_str(names))
            else:
                num.append(f.to_str(names))
        top = "*".join(num) if num else "1"
        if not den:
            return top
        bottom = den[0] if len(den) == 1 and "*" not in den[0] else "(" + "*".join(den) + ")"
        return f"{top}/{bottom}"


def _fmt_exp(e: Fraction) -> str:
    return str(e) if e.denominator == 1 and e >= 0 else f"({e})"


def format_monomial(exponents, names) -> str:
    """``u2*u4^(7/2)/(u3^(13/2)*u5)`` style rendering of a rational-exponent monomial."""
    num, den = [], []
    for name, e in zip(names, exponents):
        e = Fraction(e)
        if e == 0:
            continue
        target = num if e > 0 else den
        a = abs(e)
        target.append(name if a == 1 else f"{name}^{_fmt_exp(a)}")
    top = "*".join(num) if num else "1"
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
    return f"{top}/{bottom}"


ONE = Const(1)


def power(base: Expr, exponent) -> Expr:
    e = Fraction(exponent)
    if e == 0:
        return ONE
    if e == 1:
        return base
    if isinstance(base, Const) and base.value == 1:
        return ONE
    if isinstance(base, Monomial):
        return Monomial(tuple(e * x for x in base.exponents))
    if isinstance(base, Power):
        return power(base.base, base.exponent * e)
    if isinstance(base, Product):
        return product(power(f, e) for f in base.factors)
    return Power(base, e)


def product(factors) -> Expr:
    mono = None
    powers: dict[int, list] = {}
    order: list[int] = []
    for f in factors:
        stack = [f]
        while stack:
            g = stack.pop()
            if isinstance(g, Product):
                stack.extend(reversed(g.factors))
            elif isinstance(g, Const) and g.value == 1:
                continue
            elif isinstance(g, Monomial):
                if mono is None:
                    mono = g.exponents
                else:
                    mono = tuple(a + b for a, b in zip(mono, g.exponents))
            else:
                base, e = (g.base, g.exponent) if isinstance(g, Power) else (g, Fraction(1))
                key = id(base)
                if key in powers:
                    powers[key][1] += e
                else:
                    powers[key] = [base, e]
                    order.append(key)
    out: list[Expr] = []
    if mono is not None and any(mono):
        out.append(Monomial(mono))
    for key in order:
        base, e = powers[key]
        if e != 0:
            out.append(Power(base, e) if e != 1 else base)
    if not out:
        return ONE
    if len(out) == 1:
        return out[0]
    return Product(tuple(out))


def add(terms) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))
