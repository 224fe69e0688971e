"""Truncated Novikov series with exact rational exponents.

A series is a finite sum ``sum c_i T^{e_i}`` with complex coefficients and
``Fraction`` exponents, known modulo ``T^order`` (``order=None`` means the
finite sum is exact).
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Number

__all__ = [
    "NotAUnit",
    "NovikovSeries",
    "as_exponent",
    "format_number",
    "invert_unit",
    "unit_power",
    "valuation",
]


class NotAUnit(ArithmeticError):
    """Raised when an operation needs a valuation-0 series."""


def as_exponent(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Strings such as ``"3/2"`` or ``"2.5"`` are parsed exactly; floats go
    through their shortest repr so that ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _min_order(*orders):
    finite = [o for o in orders if o is not None]
    return min(finite) if finite else None


def format_number(c: complex, digits: int = 12) -> str:
    c = complex(c)
    re, im = c.real, c.imag
    if abs(im) <= 1e-15 * max(1.0, abs(re)):
        return f"{re:.{digits}g}"
    if abs(re) <= 1e-15 * max(1.0, abs(im)):
        return f"{im:.{digits}g}i"
    sign = "+" if im >= 0 else "-"
    return f"({re:.{digits}g}{sign}{abs(im):.{digits}g}i)"


def _exp_str(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"


class NovikovSeries:
    """Immutable truncated series ``sum c T^e``.

    Terms are kept sorted by exponent with zero coefficients dropped, and
    every exponent is strictly below ``order`` when the series is truncated.
    """

    __slots__ = ("_terms", "_order")

    def __init__(self, terms=(), order=None):
        if isinstance(terms, dict):
            terms = terms.items()
        order = None if order is None else as_exponent(order)
        acc: dict[Fraction, complex] = {}
        for e, c in terms:
            e = as_exponent(e)
            acc[e] = acc.get(e, 0j) + complex(c)
        self._order = order
        self._terms = tuple(
            (e, c) for e, c in sorted(acc.items())
            if c != 0 and (order is None or e < order)
        )

    @classmethod
    def constant(cls, c, order=None) -> NovikovSeries:
        return cls([(0, c)], order)

    @classmethod
    def monomial(cls, c, exp, order=None) -> NovikovSeries:
        return cls([(exp, c)], order)

    @classmethod
    def coerce(cls, x) -> NovikovSeries:
        if isinstance(x, NovikovSeries):
            return x
        if isinstance(x, Number):
            return cls.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to NovikovSeries")

    @property
    def terms(self) -> tuple:
        return self._terms

    @property
    def order(self):
        return self._order

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def valuation(self, tol: float = 0.0):
        """Smallest exponent whose coefficient exceeds ``tol`` in modulus."""
        for e, c in self._terms:
            if abs(c) > tol:
                return e
        return math.inf

    def norm(self) -> float:
        v = self.valuation()
        return 0.0 if v == math.inf else math.exp(-float(v))

    @property
    def leading_coefficient(self) -> complex:
        return self._terms[0][1] if self._terms else 0j

    def is_unit(self) -> bool:
        return bool(self._terms) and self._terms[0][0] == 0

    def coefficient(self, exp) -> complex:
        exp = as_exponent(exp)
        for e, c in self._terms:
            if e == exp:
                return c
        return 0j

    def exponents(self) -> list[Fraction]:
        return [e for e, _ in self._terms]

    def truncate(self, order) -> NovikovSeries:
        order = _min_order(as_exponent(order), self._order)
        return NovikovSeries(self._terms, order)

    def untruncated(self) -> NovikovSeries:
        return NovikovSeries(self._terms, None)

    def chop(self, tol: float) -> NovikovSeries:
        """Drop coefficients of modulus at most ``tol``."""
        return NovikovSeries([(e, c) for e, c in self._terms if abs(c) > tol], self._order)

    def shift(self, exp) -> NovikovSeries:
        """Multiply by ``T^exp``; ``exp`` may be negative."""
        exp = as_exponent(exp)
        order = None if self._order is None else self._order + exp
        return NovikovSeries([(e + exp, c) for e, c in self._terms], order)

    def leading_part(self) -> complex:
        """Coefficient of ``T^0``."""
        return self.coefficient(0)

    def map_coefficients(self, f) -> NovikovSeries:
        return NovikovSeries([(e, f(c)) for e, c in self._terms], self._order)

    def conjugate(self) -> NovikovSeries:
        return self.map_coefficients(lambda c: c.conjugate())

    def __add__(self, other):
        if isinstance(other, Number):
            other = NovikovSeries.constant(other)
        elif not isinstance(other, NovikovSeries):
            return NotImplemented
        return NovikovSeries(self._terms + other._terms, _min_order(self._order, other._order))

    __radd__ = __add__

    def __neg__(self):
        return NovikovSeries([(e, -c) for e, c in self._terms], self._order)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Number):
            other = NovikovSeries.constant(other)
        elif not isinstance(other, NovikovSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _mul_order(self, other):
        # a = A + O(T^oa), b = B + O(T^ob): the error of ab is
        # O(T^{oa + v(b)}) + O(T^{ob + v(a)}), with v capped by the order.
        va = self.valuation()
        vb = other.valuation()
        cands = []
        if self._order is not None:
            vb_eff = vb if other._order is None else min(vb, other._order)
            if vb_eff != math.inf:
                cands.append(self._order + vb_eff)
        if other._order is not None:
            va_eff = va if self._order is None else min(va, self._order)
            if va_eff != math.inf:
                cands.append(other._order + va_eff)
        return min(cands) if cands else None

    def __mul__(self, other):
        if isinstance(other, Number):
            c = complex(other)
            return NovikovSeries([(e, a * c) for e, a in self._terms], self._order)
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        order = self._mul_order(other)
        acc: dict[Fraction, complex] = {}
        for ea, ca in self._terms:
            for eb, cb in other._terms:
                e = ea + eb
                if order is not None and e >= order:
                    break
                acc[e] = acc.get(e, 0j) + ca * cb
        return NovikovSeries(acc, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self * (1 / complex(other))
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        if len(other._terms) == 1 and other._order is None:
            e, c = other._terms[0]
            return self.shift(-e) * (1 / c)
        order = other._order if other._order is not None else self._order
        if order is None:
            raise ValueError("division by a non-monomial exact series needs a truncation order")
        return self * invert_unit(other, order)

    def __rtruediv__(self, other):
        return NovikovSeries.coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) == 1 and self._order is None:
                e, c = self._terms[0]
                return NovikovSeries([(e * n, c ** n)])
            if self._order is None:
                raise ValueError("negative power of an exact non-monomial series needs a truncation order")
            return invert_unit(self, self._order) ** (-n)
        result = NovikovSeries.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Number):
            other = NovikovSeries.constant(other)
            return self._terms == other._terms
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        return self._terms == other._terms and self._order == other._order

    __hash__ = None

    def close(self, other, tol: float = 1e-12) -> bool:
        """Coefficientwise agreement up to ``tol`` below the common order."""
        other = NovikovSeries.coerce(other)
        diff = (self - other).chop(tol)
        return diff.is_zero()

    def __call__(self, t: float) -> complex:
        """Numeric value at a real ``T = t > 0``."""
        return sum(c * t ** float(e) for e, c in self._terms)

    def to_json(self) -> list[dict]:
        return [
            {"exp": _exp_str(e), "re": c.real, "im": c.imag} for e, c in self._terms
        ]

    @classmethod
    def from_json(cls, data, order=None) -> NovikovSeries:
        return cls([(Fraction(d["exp"]), complex(d["re"], d.get("im", 0.0))) for d in data], order)

    def __repr__(self):
        return f"NovikovSeries({[(str(e), c) for e, c in self._terms]!r}, order={self._order})"

    def __str__(self):
        if not self._terms:
            body = "0"
        else:
            parts = []
            for e, c in self._terms:
                if e == 0:
                    parts.append(format_number(c))
                    continue
                t = "T" if e == 1 else f"T^{{{_exp_str(e)}}}"
                if abs(c - 1) < 1e-15:
                    parts.append(t)
                elif abs(c + 1) < 1e-15:
                    parts.append("-" + t)
                else:
                    parts.append(format_number(c) + t)
            body = " + ".join(parts).replace("+ -", "- ")
        if self._order is not None:
            body += f" mod T^{{{_exp_str(self._order)}}}"
        return body


def valuation(s):
    return NovikovSeries.coerce(s).valuation()


def invert_unit(a, order) -> NovikovSeries:
    """Inverse of a unit modulo ``T^order`` by the geometric series."""
    a = NovikovSeries.coerce(a)
    if not a.is_unit():
        raise NotAUnit(f"series with valuation {a.valuation()} is not a unit")
    order = _min_order(as_exponent(order), a.order)
    lead = a.leading_coefficient
    x = (a * (1 / lead) - 1).truncate(order)
    result = NovikovSeries.constant(1, order)
    power = NovikovSeries.constant(1, order)
    while True:
        power = (power * -x).truncate(order)
        if power.is_zero():
            break
        result = result + power
    return result * (1 / lead)


def unit_power(a, r, order) -> NovikovSeries:
    """``a**r`` for a unit ``a`` and rational ``r`` modulo ``T^order``.

    Uses the principal branch for the leading coefficient and the binomial
    series for the rest.
    """
    a = NovikovSeries.coerce(a)
    if not a.is_unit():
        raise NotAUnit(f"series with valuation {a.valuation()} is not a unit")
    r = as_exponent(r)
    order = _min_order(as_exponent(order), a.order)
    lead = a.leading_coefficient
    x = (a * (1 / lead) - 1).truncate(order)
    result = NovikovSeries.constant(1, order)
    power = NovikovSeries.constant(1, order)
    binom = Fraction(1)
    k = 0
    while True:
        k += 1
        binom = binom * (r - k + 1) / k
        power = (power * x).truncate(order)
        if power.is_zero() or (binom == 0):
            break
        result = result + power * float(binom)
    lead_pow = cmath.exp(float(r) * cmath.log(lead))
    return result * lead_pow
