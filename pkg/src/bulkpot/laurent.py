"""Laurent polynomials in two fiber variables and optional bulk symbols.

A key is ``((e1, e2), bulk)`` where ``bulk`` is a tuple of integer exponents
of the multiplicative bulk symbols ``X_i = e^{a_i}``. Coefficients may be
ints, Fractions, complex numbers or :class:`NovikovSeries`; the ring is
whatever the coefficients are, mixing is allowed where Python arithmetic
allows it.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number

from .novikov import NovikovSeries, _exp_str, format_number

__all__ = [
    "ArityMismatch",
    "LaurentPoly",
    "ZeroBulkValue",
    "ZeroCoordinate",
    "render_bulk",
    "render_fiber",
]


class ArityMismatch(ValueError):
    """Operands carry different numbers of bulk symbols."""


class ZeroCoordinate(ZeroDivisionError):
    """A negative power of a zero coordinate was requested."""


class ZeroBulkValue(ZeroDivisionError):
    """A bulk symbol ``e^{a}`` was given the value zero."""


def _is_zero(c) -> bool:
    if isinstance(c, NovikovSeries):
        return c.is_zero()
    return c == 0


def _sort_key(key):
    (e1, e2), bulk = key
    return (e1 + e2, e1, e2, bulk)


def _power(cache: dict, x, k: int):
    if k in cache:
        return cache[k]
    if k < 0:
        if isinstance(x, NovikovSeries):
            val = x ** k
        else:
            if x == 0:
                raise ZeroCoordinate("negative power of a zero coordinate")
            val = x ** k
    else:
        val = x ** k
    cache[k] = val
    return val


class LaurentPoly:
    """Sparse Laurent polynomial; immutable by convention."""

    __slots__ = ("_terms", "nbulk")

    def __init__(self, terms=None, nbulk: int = 0):
        self.nbulk = nbulk
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for key, c in items:
            (e1, e2), bulk = key
            bulk = tuple(bulk)
            if len(bulk) != nbulk:
                raise ArityMismatch(f"bulk exponent {bulk} does not have arity {nbulk}")
            k = ((int(e1), int(e2)), bulk)
            acc[k] = acc[k] + c if k in acc else c
        self._terms = {k: acc[k] for k in sorted(acc, key=_sort_key) if not _is_zero(acc[k])}

    # construction

    @classmethod
    def monomial(cls, e1: int = 0, e2: int = 0, coeff=1, bulk=None, nbulk: int | None = None):
        bulk = tuple(bulk) if bulk is not None else ()
        nbulk = len(bulk) if nbulk is None else nbulk
        if not bulk:
            bulk = (0,) * nbulk
        return cls({((e1, e2), bulk): coeff}, nbulk)

    @classmethod
    def constant(cls, c, nbulk: int = 0):
        return cls.monomial(0, 0, c, nbulk=nbulk)

    @classmethod
    def variable(cls, i: int, nbulk: int = 0):
        """The fiber variable ``y_i`` (``i`` is 1 or 2)."""
        return cls.monomial(int(i == 1), int(i == 2), 1, nbulk=nbulk)

    @classmethod
    def bulk_symbol(cls, i: int, nbulk: int):
        """The bulk symbol ``X_i`` (0-based ``i``)."""
        bulk = tuple(int(j == i) for j in range(nbulk))
        return cls.monomial(0, 0, 1, bulk=bulk)

    # access

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, e1: int, e2: int, bulk=None):
        bulk = tuple(bulk) if bulk is not None else (0,) * self.nbulk
        return self._terms.get(((e1, e2), bulk), 0)

    def fiber_support(self) -> list[tuple[int, int]]:
        return sorted({f for f, _ in self._terms}, key=lambda f: (f[0] + f[1], f))

    def degree_bounds(self, var: int) -> tuple[int, int]:
        exps = [f[var - 1] for f, _ in self._terms]
        return (min(exps), max(exps)) if exps else (0, 0)

    def by_fiber(self) -> dict:
        """Group into ``{(e1, e2): LaurentPoly}`` with trivial fiber part."""
        out: dict = {}
        for (f, b), c in self._terms.items():
            out.setdefault(f, []).append((((0, 0), b), c))
        return {f: LaurentPoly(v, self.nbulk) for f, v in out.items()}

    def by_bulk(self) -> dict:
        """Group into ``{bulk: LaurentPoly}`` with ``nbulk = 0``."""
        out: dict = {}
        for (f, b), c in self._terms.items():
            out.setdefault(b, []).append(((f, ()), c))
        return {b: LaurentPoly(v, 0) for b, v in out.items()}

    # arithmetic

    def _check(self, other: LaurentPoly):
        if other.nbulk != self.nbulk:
            raise ArityMismatch(f"bulk arity {self.nbulk} vs {other.nbulk}")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (Number, NovikovSeries)):
            return LaurentPoly.constant(other, self.nbulk)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()), self.nbulk)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()}, self.nbulk)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Number, NovikovSeries)):
            return LaurentPoly({k: c * other for k, c in self._terms.items()}, self.nbulk)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        acc: dict = {}
        for ((a1, a2), ab), ca in self._terms.items():
            for ((b1, b2), bb), cb in other._terms.items():
                k = ((a1 + b1, a2 + b2), tuple(x + y for x, y in zip(ab, bb)))
                prod = ca * cb
                acc[k] = acc[k] + prod if k in acc else prod
        return LaurentPoly(acc, self.nbulk)

    def __rmul__(self, other):
        if isinstance(other, (Number, NovikovSeries)):
            return LaurentPoly({k: other * c for k, c in self._terms.items()}, self.nbulk)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e1, e2), b), c = next(iter(self._terms.items()))
            return LaurentPoly({((e1 * n, e2 * n), tuple(x * n for x in b)): c ** n}, self.nbulk)
        result = LaurentPoly.constant(1, self.nbulk)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (Number, NovikovSeries)):
            other = LaurentPoly.constant(other, self.nbulk)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nbulk == other.nbulk and self._terms == other._terms

    __hash__ = None

    def map_coefficients(self, f) -> LaurentPoly:
        return LaurentPoly({k: f(c) for k, c in self._terms.items()}, self.nbulk)

    def shift_fiber(self, d1: int, d2: int) -> LaurentPoly:
        """Multiply by ``y1^d1 y2^d2``."""
        return LaurentPoly(
            {((e1 + d1, e2 + d2), b): c for ((e1, e2), b), c in self._terms.items()}, self.nbulk
        )

    # calculus

    def partial_derivative(self, var: int) -> LaurentPoly:
        i = var - 1
        out = {}
        for (f, b), c in self._terms.items():
            if f[i] == 0:
                continue
            g = list(f)
            g[i] -= 1
            out[(tuple(g), b)] = c * f[i]
        return LaurentPoly(out, self.nbulk)

    def log_derivative(self, var: int) -> LaurentPoly:
        """``y_var * d/dy_var``."""
        i = var - 1
        return LaurentPoly(
            {(f, b): c * f[i] for (f, b), c in self._terms.items() if f[i] != 0}, self.nbulk
        )

    def bulk_log_derivative(self, i: int) -> LaurentPoly:
        """``X_i * d/dX_i``, i.e. the derivative in the additive symbol ``a_i``."""
        return LaurentPoly(
            {(f, b): c * b[i] for (f, b), c in self._terms.items() if b[i] != 0}, self.nbulk
        )

    # evaluation and substitution

    def evaluate(self, y1, y2, bulk=None):
        """Value at ``(y1, y2)``; bulk symbols need values unless ``nbulk == 0``."""
        if self.nbulk and bulk is None:
            raise ArityMismatch("bulk values required")
        if bulk is not None and len(bulk) != self.nbulk:
            raise ArityMismatch(f"expected {self.nbulk} bulk values, got {len(bulk)}")
        bulk = tuple(bulk or ())
        for v in bulk:
            if not isinstance(v, NovikovSeries) and v == 0:
                raise ZeroBulkValue("bulk values are exponentials and cannot vanish")
        caches = [{}, {}] + [{} for _ in bulk]
        values = (y1, y2) + bulk
        total = 0
        for (f, b), c in self._terms.items():
            term = c
            for slot, k in enumerate(f + b):
                if k:
                    term = term * _power(caches[slot], values[slot], k)
            total = total + term
        return total

    def __call__(self, y1, y2, bulk=None):
        return self.evaluate(y1, y2, bulk)

    def substitute_bulk(self, values) -> LaurentPoly:
        """Replace bulk symbols by values; ``None`` keeps a symbol.

        The result carries only the kept symbols, in their original order.
        """
        values = list(values)
        if len(values) != self.nbulk:
            raise ArityMismatch(f"expected {self.nbulk} bulk values, got {len(values)}")
        for v in values:
            if v is not None and v == 0:
                raise ZeroBulkValue("bulk values are exponentials and cannot vanish")
        keep = [i for i, v in enumerate(values) if v is None]
        caches = [{} for _ in values]
        out = []
        for (f, b), c in self._terms.items():
            term = c
            for i, k in enumerate(b):
                if k and values[i] is not None:
                    term = term * _power(caches[i], values[i], k)
            out.append(((f, tuple(b[i] for i in keep)), term))
        return LaurentPoly(out, len(keep))

    def bulk_as_fiber(self, y1, y2) -> LaurentPoly:
        """Evaluate the fiber part at ``(y1, y2)`` and promote the two bulk
        symbols to the fiber slots, giving a polynomial in ``(X, Y)``."""
        if self.nbulk != 2:
            raise ArityMismatch("bulk_as_fiber needs exactly two bulk symbols")
        caches = [{}, {}]
        out = []
        for ((e1, e2), b), c in self._terms.items():
            val = c
            if e1:
                val = val * _power(caches[0], y1, e1)
            if e2:
                val = val * _power(caches[1], y2, e2)
            out.append(((b, ()), val))
        return LaurentPoly(out, 0)

    def pin_fiber(self, var: int, value, promote_bulk: int | None = None) -> LaurentPoly:
        """Set ``y_var = value``; optionally move bulk symbol ``promote_bulk``
        into the freed fiber slot."""
        i = var - 1
        cache: dict = {}
        out = []
        for (f, b), c in self._terms.items():
            val = c * _power(cache, value, f[i]) if f[i] else c
            g = list(f)
            if promote_bulk is None:
                g[i] = 0
                nb = b
            else:
                g[i] = b[promote_bulk]
                nb = b[:promote_bulk] + b[promote_bulk + 1:]
            out.append(((tuple(g), nb), val))
        nbulk = self.nbulk if promote_bulk is None else self.nbulk - 1
        return LaurentPoly(out, nbulk)

    # Novikov-coefficient helpers

    def valuation(self):
        vals = [NovikovSeries.coerce(c).valuation() for c in self._terms.values()]
        return min(vals) if vals else math.inf

    def shift_T(self, exp) -> LaurentPoly:
        return self.map_coefficients(lambda c: NovikovSeries.coerce(c).shift(exp))

    def truncate(self, order) -> LaurentPoly:
        return self.map_coefficients(lambda c: NovikovSeries.coerce(c).truncate(order))

    def leading_part(self) -> tuple:
        """``(lam, p)``: minimal valuation and the complex polynomial of the
        ``T^lam`` coefficients."""
        lam = self.valuation()
        if lam == math.inf:
            return lam, LaurentPoly({}, self.nbulk)
        out = {k: NovikovSeries.coerce(c).coefficient(lam) for k, c in self._terms.items()}
        return lam, LaurentPoly(out, self.nbulk)

    def coefficient_part(self, exp) -> LaurentPoly:
        """Complex polynomial of the ``T^exp`` coefficients."""
        return LaurentPoly(
            {k: NovikovSeries.coerce(c).coefficient(exp) for k, c in self._terms.items()},
            self.nbulk,
        )

    def to_novikov(self, order=None) -> LaurentPoly:
        return self.map_coefficients(lambda c: NovikovSeries.constant(c, order))

    def chop(self, tol: float) -> LaurentPoly:
        def f(c):
            if isinstance(c, NovikovSeries):
                return c.chop(tol)
            return 0 if abs(c) <= tol else c
        return self.map_coefficients(f)

    def max_abs_coefficient(self) -> float:
        best = 0.0
        for c in self._terms.values():
            if isinstance(c, NovikovSeries):
                best = max([best] + [abs(a) for _, a in c])
            else:
                best = max(best, abs(c))
        return best

    # output

    def render(self, bulk_names=None) -> str:
        return render(self, bulk_names)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPoly({self.render()!r}, nbulk={self.nbulk})"

    def to_json(self, bulk_names=None) -> list[dict]:
        out = []
        for ((e1, e2), b), c in self._terms.items():
            d = {"y": [e1, e2]}
            if self.nbulk:
                d["bulk"] = list(b)
            if isinstance(c, NovikovSeries):
                d["coeff"] = c.to_json()
            elif isinstance(c, (int, Fraction)):
                d["coeff"] = str(c)
            else:
                d["coeff"] = {"re": complex(c).real, "im": complex(c).imag}
            out.append(d)
        return out


def render_fiber(e1: int, e2: int) -> str:
    parts = []
    for name, k in (("y1", e1), ("y2", e2)):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return " ".join(parts)


def render_bulk(b, names) -> str:
    if not any(b):
        return ""
    pieces = []
    for k, name in zip(b, names):
        if k == 0:
            continue
        sign = "-" if k < 0 else "+"
        mag = "" if abs(k) == 1 else str(abs(k))
        pieces.append(f"{sign}{mag}{name}")
    s = "".join(pieces).lstrip("+")
    return f"e^{{{s}}}"


def _render_coeff(c) -> str:
    if isinstance(c, (int, Fraction)):
        return str(c)
    return format_number(c)


def render(p: LaurentPoly, bulk_names=None) -> str:
    """Human-readable form, e.g. ``(e^{a4} + e^{a3-a4+a5}) y2^-1 T^{2}``.

    Terms sharing a fiber monomial and T-power are grouped.
    """
    names = list(bulk_names) if bulk_names else [f"a{i + 1}" for i in range(p.nbulk)]
    groups: dict = {}
    order_seen = []
    for (f, b), c in p.items():
        if isinstance(c, NovikovSeries):
            pieces = [(e, a) for e, a in c]
        else:
            pieces = [(None, c)]
        for e, a in pieces:
            key = (f, e)
            if key not in groups:
                groups[key] = []
                order_seen.append(key)
            groups[key].append((a, b))
    if not order_seen:
        return "0"
    out = []
    for key in order_seen:
        f, e = key
        mono = render_fiber(*f)
        tpow = "" if e is None or e == 0 else ("T" if e == 1 else f"T^{{{_exp_str(e)}}}")
        summands = []
        for a, b in groups[key]:
            bm = render_bulk(b, names)
            cs = _render_coeff(a)
            if bm:
                if cs == "1" or cs == "1.0":
                    cs = ""
                elif cs in ("-1", "-1.0"):
                    cs = "-"
                summands.append(f"{cs}{bm}")
            else:
                summands.append(cs)
        coef = " + ".join(summands).replace("+ -", "- ")
        if len(summands) > 1:
            coef = f"({coef})"
        tail = " ".join(x for x in (mono, tpow) if x)
        if tail:
            if coef in ("1", "1.0"):
                coef = ""
            elif coef in ("-1", "-1.0"):
                coef = "-"
            sep = " " if coef and coef != "-" else ""
            out.append(f"{coef}{sep}{tail}")
        else:
            out.append(coef)
    return " + ".join(out).replace("+ -", "- ")
