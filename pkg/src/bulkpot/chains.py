"""Admissible decorations of meridian disks along a -2 chain.

Chain positions are 1-based: ``D_1 .. D_n``. Centers ``0`` and ``n+1``
stand for the outer facets adjacent to the chain, which only ever carry the
zero decoration.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .laurent import LaurentPoly

__all__ = [
    "AdmissibleTuple",
    "DiskClass",
    "QUADRATIC_NAMES",
    "chain_intersection",
    "end_coefficient_polynomial",
    "end_intersections",
    "enumerate_admissible",
    "gradient_system_in_bulk",
    "intersection_vector",
    "is_admissible",
    "quadratic_coefficient_polys",
    "quadratic_coefficients",
]


@dataclass(frozen=True)
class AdmissibleTuple:
    entries: tuple[int, ...]
    center: int

    @property
    def n(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class DiskClass:
    """``beta_center + sum s_l D_l``; every class here has Maslov index 2."""

    center: int
    tuple: AdmissibleTuple
    maslov: int = 2


def is_admissible(s, center: int) -> bool:
    """Direct check of the unimodality and endpoint conditions."""
    n = len(s)
    if center in (0, n + 1):
        return all(x == 0 for x in s)
    if any(x < 0 for x in s) or s[0] > 1 or s[-1] > 1:
        return False
    for l in range(1, n):
        a, b = s[l - 1], s[l]
        if l < center:
            if not a <= b <= a + 1:
                return False
        elif not a - 1 <= b <= a:
            return False
    return True


@lru_cache(maxsize=None)
def _enumerate(n: int, center: int) -> tuple[AdmissibleTuple, ...]:
    if not 0 <= center <= n + 1:
        raise ValueError(f"center {center} outside 0..{n + 1}")
    if center in (0, n + 1):
        return (AdmissibleTuple((0,) * n, center),)
    found = set()
    # ascent up to the center, descent after it; endpoint bounds filter
    for s1 in (0, 1):
        for ups in product((0, 1), repeat=center - 1):
            for downs in product((0, -1), repeat=n - center):
                s = [s1]
                for d in ups + downs:
                    s.append(s[-1] + d)
                if s[-1] > 1 or min(s) < 0:
                    continue
                found.add(tuple(s))
    return tuple(AdmissibleTuple(s, center) for s in sorted(found))


def enumerate_admissible(n: int, center: int) -> list[AdmissibleTuple]:
    return list(_enumerate(n, center))


def chain_intersection(l: int, i: int) -> int:
    """``D_l . D_i`` inside a chain (1-based positions)."""
    if l == i:
        return -2
    return 1 if abs(l - i) == 1 else 0


def intersection_vector(c, n: int | None = None, outer: bool = False) -> tuple[int, ...]:
    """``(beta.D_1, ..., beta.D_n)``.

    With ``outer=True`` the vector is extended by the two outer neighbours
    ``D_0`` and ``D_{n+1}`` (first and last entries).
    """
    t = c.tuple if isinstance(c, DiskClass) else c
    center = c.center
    s = t.entries
    n = len(s) if n is None else n
    vec = []
    for i in range(1, n + 1):
        v = 1 if center == i else 0
        v += sum(s[l - 1] * chain_intersection(l, i) for l in range(1, n + 1))
        vec.append(v)
    if outer:
        first = (1 if center == 0 else 0) + (s[0] if n else 0)
        last = (1 if center == n + 1 else 0) + (s[-1] if n else 0)
        return (first, *vec, last)
    return tuple(vec)


def end_intersections(t: AdmissibleTuple, n: int | None = None, center: int | None = None) -> tuple[int, int]:
    """``(beta.D_1, beta.D_n)`` for ``n >= 2``."""
    s = t.entries
    n = len(s) if n is None else n
    center = t.center if center is None else center
    if n < 2:
        raise ValueError("end intersections need a chain of length >= 2")
    d1 = (1 if center == 1 else 0) - 2 * s[0] + s[1]
    dn = (1 if center == n else 0) - 2 * s[n - 1] + s[n - 2]
    return d1, dn


def end_coefficient_polynomial(n: int, k: int) -> LaurentPoly:
    """``P_k(X, Y) = sum X^{d1} Y^{dn}`` over tuples with center ``k``.

    Returned as a LaurentPoly whose fiber slots hold ``(X, Y)``.
    """
    if n < 2 or not 1 <= k <= n:
        raise ValueError("need n >= 2 and 1 <= k <= n")
    terms = [((end_intersections(t, n, k), ()), 1) for t in _enumerate(n, k)]
    return LaurentPoly(terms, 0)


def _leading(n: int) -> LaurentPoly:
    from .potential import chain_leading_potential

    return chain_leading_potential(n)


QUADRATIC_NAMES = {
    (2, 2): "A", (2, 1): "B", (2, 0): "C",
    (1, 2): "D", (1, 1): "E", (1, 0): "F",
    (0, 2): "G", (0, 1): "H", (0, 0): "I",
}


def gradient_system_in_bulk(n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """``(-XY dPO/dy1, XY dPO/dy2)`` for the chain-end potential.

    Multiplying by ``XY`` clears the negative bulk powers, leaving
    polynomials of degree <= 2 in each of X and Y.
    """
    po = _leading(n)
    xy = LaurentPoly.monomial(0, 0, 1, bulk=(1, 1))
    return -xy * po.partial_derivative(1), xy * po.partial_derivative(2)


@lru_cache(maxsize=None)
def quadratic_coefficient_polys(n: int) -> dict[str, LaurentPoly]:
    """The 18 coefficients ``A..I`` and ``A'..I'`` as integer Laurent
    polynomials in ``(y1, y2)``, keyed ``"A"`` and ``"A'"`` etc."""
    out = {}
    for eq, suffix in zip(gradient_system_in_bulk(n), ("", "'")):
        groups = eq.by_bulk()
        for b in groups:
            if b not in QUADRATIC_NAMES:
                raise AssertionError(f"unexpected bulk degree {b}")
        for b, name in QUADRATIC_NAMES.items():
            out[name + suffix] = groups.get(b, LaurentPoly({}, 0))
    return out


def quadratic_coefficients(n: int, y1: complex, y2: complex) -> dict[str, complex]:
    return {k: complex(p.evaluate(y1, y2)) for k, p in quadratic_coefficient_polys(n).items()}
