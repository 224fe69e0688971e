"""Lifting complex critical points to solutions over the Novikov ring.

Simple roots lift by Newton iteration, which doubles the residual valuation
per step. Multiple roots of a univariate equation lift by Newton-Puiseux:
shift to the leading root, read the root valuation off the Newton polygon,
rescale and recurse.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .laurent import LaurentPoly
from .novikov import NovikovSeries, as_exponent, invert_unit
from .solver import univariate_roots

__all__ = [
    "CHOP_TOL",
    "NoUnitRoot",
    "OrderNotReached",
    "SingularJacobian",
    "certify_degenerate",
    "lift_pinned",
    "newton_lift",
    "residual_valuation",
    "unit_root_univariate",
]

# coefficients below this are treated as floating-point noise
CHOP_TOL = 1e-9
MAX_STEPS = 64


class SingularJacobian(ArithmeticError):
    """The leading Jacobian at the seed is not invertible."""


class OrderNotReached(ArithmeticError):
    pass


class NoUnitRoot(ArithmeticError):
    pass


def _series(x, order=None) -> NovikovSeries:
    s = NovikovSeries.coerce(x)
    return s if order is None else s.truncate(order)


def _as_novikov(p: LaurentPoly) -> LaurentPoly:
    return p.map_coefficients(NovikovSeries.coerce)


def _capped_valuation(s: NovikovSeries, tol: float = CHOP_TOL):
    v = s.chop(tol).valuation()
    return v if s.order is None else min(v, s.order)


def residual_valuation(system, y, tol: float = CHOP_TOL):
    """Guaranteed valuation of ``system`` at ``y``: the smallest exponent
    with a non-negligible coefficient, capped by the truncation order."""
    vals = [_capped_valuation(_series(f.evaluate(*y)), tol) for f in system]
    return min(vals)


# univariate

def _horner(coeffs, x):
    acc = NovikovSeries.constant(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _taylor_shift(coeffs, z: complex):
    """Coefficients of ``f(z + Z)`` in ``Z``."""
    b = list(coeffs)
    n = len(b)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            b[j] = b[j] + b[j + 1] * z
    return b


def _refine(reduced: np.ndarray, z: complex, m: int) -> complex:
    """Polish a root of multiplicity ``m`` as a simple root of the
    ``(m-1)``-th derivative."""
    p = np.polynomial.Polynomial(reduced).deriv(m - 1)
    dp = p.deriv()
    for _ in range(50):
        d = dp(z)
        if d == 0:
            break
        step = p(z) / d
        z -= step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return complex(z)


def unit_root_univariate(coeffs, order, near=None) -> NovikovSeries:
    """A valuation-0 root of ``sum coeffs[j] X^j`` modulo ``T^order``.

    The leading root is the one closest to ``near`` or, without a hint, the
    simple root with the largest real part (then imaginary part), falling
    back to multiple roots. The result's truncation order records how much
    precision the coefficients supported.
    """
    order = as_exponent(order)
    a = [_series(c) for c in coeffs]
    while a and a[-1].chop(CHOP_TOL).is_zero():
        a.pop()
    if len(a) < 2:
        raise NoUnitRoot("polynomial has no positive degree")
    v = min(c.valuation() for c in a if not c.is_zero())
    a = [c.shift(-v) for c in a]
    reduced = np.array([c.coefficient(0) for c in a], dtype=complex)
    roots = [(z, m) for z, m in univariate_roots(reduced) if abs(z) > 1e-8]
    if not roots:
        raise NoUnitRoot("leading polynomial has no nonzero root")
    if near is not None:
        roots.sort(key=lambda r: abs(r[0] - complex(near)))
    else:
        roots.sort(key=lambda r: (r[1], -round(r[0].real, 9), -round(r[0].imag, 9)))
    z, m = roots[0]
    if m == 1:
        return _hensel(a, z, order)
    z = _refine(reduced, z, m)
    return _puiseux_step(a, z, m, order)


def _hensel(a, z: complex, order) -> NovikovSeries:
    da = [c * j for j, c in enumerate(a)][1:]
    x = NovikovSeries.constant(z, order)
    last = None
    for _ in range(MAX_STEPS):
        r = _horner(a, x).truncate(order)
        v = _capped_valuation(r)
        if v >= order:
            return x.chop(1e-14)
        if r.order is not None and v >= r.order:
            # the coefficients are exhausted; the root is good to r.order
            return x.truncate(r.order).chop(1e-14)
        if last is not None and v <= last:
            raise NoUnitRoot(f"Newton stalled at valuation {v}")
        last = v
        d = _horner(da, x).truncate(order)
        x = (x - r * invert_unit(d.chop(1e-14), order)).truncate(order).chop(1e-14)
    raise NoUnitRoot("Newton did not converge")


def _puiseux_step(a, z: complex, m: int, order) -> NovikovSeries:
    b = _taylor_shift(a, z)
    # the T^0 parts of b_0..b_{m-1} vanish at a root of multiplicity m
    for j in range(m):
        c0 = b[j].coefficient(0)
        if abs(c0) > 1e-6 * max(1.0, max(abs(x.coefficient(0)) for x in b)):
            raise NoUnitRoot(f"leading root {z} does not have multiplicity {m}")
        b[j] = b[j] - NovikovSeries.constant(c0)
    vals = [_capped_valuation(b[j]) for j in range(m)]
    if all(val == math.inf for val in vals):
        return NovikovSeries.constant(z, order)
    gamma = min(Fraction(val) / (m - j) for j, val in enumerate(vals) if val != math.inf)
    if gamma >= order:
        return NovikovSeries.constant(z, order)
    if gamma <= 0:
        raise NoUnitRoot("no root branch with positive valuation")
    # Z = T^gamma W; divide by T^{m gamma} so W has a unit leading equation
    c = [bj.chop(CHOP_TOL).shift(j * gamma - m * gamma) for j, bj in enumerate(b)]
    w = unit_root_univariate(c, order - gamma)
    return NovikovSeries.constant(z, order) + w.shift(gamma)


# two unknowns

def _jacobian(system):
    return [[f.partial_derivative(1), f.partial_derivative(2)] for f in system]


def newton_lift(system, seed, order, max_steps: int = MAX_STEPS):
    """Lift a simple root of the leading part of ``system`` modulo ``T^order``.

    ``system`` is a pair of Laurent polynomials with Novikov coefficients.
    Each equation is normalized by its valuation; the leading Jacobian at
    ``seed`` must be invertible.
    """
    order = as_exponent(order)
    system = [_as_novikov(f) for f in system]
    shifts = [f.valuation() for f in system]
    if any(s == math.inf for s in shifts):
        raise ValueError("zero equation in system")
    norm = [f.shift_T(-s) for f, s in zip(system, shifts)]
    target = order - min(min(shifts), 0)
    y0 = tuple(complex(c) for c in seed)
    lead = [f.coefficient_part(0) for f in norm]
    jl = _jacobian(lead)
    m = np.array([[complex(g.evaluate(*y0)) for g in row] for row in jl])
    scale = max(np.max(np.abs(m)), 1e-300)
    if abs(np.linalg.det(m)) <= 1e-8 * scale ** 2:
        raise SingularJacobian(f"leading Jacobian is singular at {y0}")
    jac = _jacobian(norm)
    y = [NovikovSeries.constant(c, target) for c in y0]
    last = None
    stall = 0
    for _ in range(max_steps):
        r = [_series(f.evaluate(*y)).truncate(target).chop(CHOP_TOL) for f in norm]
        v = min(_capped_valuation(x) for x in r)
        if v >= target:
            break
        if last is not None and v <= last:
            stall += 1
            if stall >= 3:
                raise OrderNotReached(f"residual stuck at valuation {v}")
        else:
            stall = 0
        last = v
        j = [[_series(g.evaluate(*y)).truncate(target) for g in row] for row in jac]
        det = j[0][0] * j[1][1] - j[0][1] * j[1][0]
        inv = invert_unit(det.chop(1e-14), target)
        d1 = (j[1][1] * r[0] - j[0][1] * r[1]) * inv
        d2 = (j[0][0] * r[1] - j[1][0] * r[0]) * inv
        y = [(y[0] - d1).truncate(target).chop(1e-14), (y[1] - d2).truncate(target).chop(1e-14)]
    else:
        raise OrderNotReached(f"no convergence in {max_steps} steps")
    if residual_valuation(system, y) < order:
        raise OrderNotReached("residual check after lifting failed")
    return tuple(y)


def _univariate_coeffs(p: LaurentPoly, var: int):
    """Coefficient list of ``p`` times the power of ``y_var`` clearing
    negative exponents; ``p`` must only involve ``y_var``."""
    other = 2 if var == 1 else 1
    if p.degree_bounds(other) != (0, 0):
        raise ValueError("polynomial involves both unknowns")
    lo, hi = p.degree_bounds(var)
    coeffs = [NovikovSeries.constant(0)] * (hi - lo + 1)
    for ((e1, e2), _), c in p:
        e = e1 if var == 1 else e2
        coeffs[e - lo] = coeffs[e - lo] + _series(c)
    return coeffs


def lift_pinned(system, order, near=(None, None), pads=(0, 1, 2, 4, 8)):
    """Solve a triangular pair: one equation involves a single unknown.

    That unknown is found first, substituted, and the other is solved from
    the remaining equation. The working order is padded until substitution
    confirms residual valuation ``>= order``; Puiseux branches spend
    precision, which the padding buys back.
    """
    order = as_exponent(order)
    system = [_as_novikov(f) for f in system]
    free = None
    for i, f in enumerate(system):
        for var in (1, 2):
            other = 2 if var == 1 else 1
            if f.degree_bounds(other) == (0, 0) and f.degree_bounds(var) != (0, 0):
                free = (i, var)
                break
        if free:
            break
    if free is None:
        raise ValueError("no equation involves a single unknown")
    i, var = free
    other = 2 if var == 1 else 1
    best = None
    for pad in pads:
        work = order + pad
        first = unit_root_univariate(_univariate_coeffs(system[i], var), work, near[var - 1])
        rest = system[1 - i].pin_fiber(var, first)
        second = unit_root_univariate(_univariate_coeffs(rest, other), work, near[other - 1])
        y = (first, second) if var == 1 else (second, first)
        v = residual_valuation(system, y)
        best = (y, v)
        if v >= order:
            return y
    raise OrderNotReached(f"residual valuation {best[1]} < {order} after padding")


# degenerate leading roots

def _det(m):
    """Laplace expansion; entries only need ring operations."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0] * 0


def _coeffs_in(p: LaurentPoly, var: int):
    """``p`` as a list of Laurent polynomials in the other variable,
    indexed by the power of ``y_var`` after clearing negative powers."""
    lo, hi = p.degree_bounds(var)
    out = [LaurentPoly({}, 0) for _ in range(hi - lo + 1)]
    for ((e1, e2), _), c in p:
        if var == 2:
            out[e2 - lo] = out[e2 - lo] + LaurentPoly.monomial(e1, 0, c)
        else:
            out[e1 - lo] = out[e1 - lo] + LaurentPoly.monomial(0, e2, c)
    return out


def novikov_resultant(p: LaurentPoly, q: LaurentPoly, eliminate: int = 2) -> LaurentPoly:
    """Sylvester resultant over Novikov coefficients, as a polynomial in
    the kept variable."""
    a, b = _coeffs_in(_as_novikov(p), eliminate), _coeffs_in(_as_novikov(q), eliminate)
    m, n = len(a) - 1, len(b) - 1
    zero = LaurentPoly({}, 0)
    size = m + n
    if size == 0:
        raise ValueError("neither equation involves the eliminated variable")
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return _det(rows)


def certify_degenerate(system, seed, order):
    """Solutions modulo ``T^order`` near a multiple leading root.

    Eliminates the second unknown with a Novikov resultant, takes the
    Puiseux root near ``seed[0]``, then solves each equation for the second
    unknown near ``seed[1]`` and keeps the first pair whose residual
    valuation reaches ``order``. Needs an exact (finite) tail.
    """
    order = as_exponent(order)
    system = [_as_novikov(f) for f in system]
    res = novikov_resultant(system[0], system[1], eliminate=2)
    coeffs = _univariate_coeffs(res, 1)
    best = -math.inf
    for pad in (0, 1, 2, 4, 8):
        work = order + pad
        x = unit_root_univariate(coeffs, work, near=seed[0])
        for f in system:
            g = f.pin_fiber(1, x)
            try:
                cs = _univariate_coeffs(g, 2)
                if len(cs) < 2:
                    continue
                y = unit_root_univariate(cs, work, near=seed[1])
            except NoUnitRoot:
                continue
            v = residual_valuation(system, (x, y))
            best = max(best, v)
            if v >= order:
                return x, y
    raise OrderNotReached(f"best residual valuation {best} < {order}")
