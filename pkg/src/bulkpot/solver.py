"""Critical points of Laurent potentials over the complex numbers.

Systems are solved by clearing monomial denominators, eliminating one
variable with a Sylvester resultant (sampled on roots of unity and
interpolated by FFT), taking companion-matrix roots, back-substituting, and
polishing with a damped Newton iteration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .laurent import LaurentPoly, ZeroCoordinate
from .novikov import NovikovSeries, format_number

__all__ = [
    "CLUSTER_TOL",
    "CriticalPoint",
    "DegenerateSystem",
    "HESSIAN_TOL",
    "eliminant",
    "gradient",
    "hessian_det",
    "hessian_log_det",
    "is_nondegenerate",
    "log_hessian",
    "polynomial_array",
    "solve_complex_system",
    "sylvester_resultant",
    "univariate_roots",
]

CLUSTER_TOL = 1e-8
HESSIAN_TOL = 1e-8
POLISH_TOL = 1e-12
POLISH_MAXITER = 50
ROOT_MERGE_TOL = 1e-5
RESIDUAL_TOL = 1e-9


class DegenerateSystem(ArithmeticError):
    """The system has a positive-dimensional solution set."""


@dataclass
class CriticalPoint:
    y: tuple
    multiplicity: int = 1
    hessian_log_det: complex | NovikovSeries | None = None
    nondegenerate: bool | None = None
    residual: float = 0.0
    lifted: tuple | None = None
    residual_valuation: object = None

    def to_json(self) -> dict:
        d = {
            "y": [[complex(c).real, complex(c).imag] for c in self.y],
            "multiplicity": self.multiplicity,
            "residual": self.residual,
        }
        if self.hessian_log_det is not None:
            h = complex(self.hessian_log_det)
            d["hessian_log_det"] = [h.real, h.imag]
        if self.nondegenerate is not None:
            d["nondegenerate"] = self.nondegenerate
        if self.lifted is not None:
            d["lifted"] = [s.to_json() for s in self.lifted]
            d["residual_valuation"] = str(self.residual_valuation)
        return d

    def __str__(self):
        ys = ", ".join(format_number(c, 10) for c in self.y)
        s = f"({ys})"
        if self.multiplicity != 1:
            s += f" x{self.multiplicity}"
        if self.hessian_log_det is not None:
            s += f"  logHess={format_number(self.hessian_log_det, 8)}"
        if self.nondegenerate is not None:
            s += "  nondegenerate" if self.nondegenerate else "  DEGENERATE"
        return s


def gradient(p) -> tuple[LaurentPoly, LaurentPoly]:
    """``(dp/dy1, dp/dy2)``; accepts an assembled potential or a polynomial."""
    poly = getattr(p, "full", p)
    return poly.partial_derivative(1), poly.partial_derivative(2)


# Hessians

def log_hessian(p, pt) -> list[list]:
    """``[[y_i d_i (y_j d_j p)]]`` at ``pt``."""
    poly = getattr(p, "full", p)
    y1, y2 = pt
    if _is_zero(y1) or _is_zero(y2):
        raise ZeroCoordinate("log-Hessian needs nonzero coordinates")
    d1 = poly.log_derivative(1)
    d2 = poly.log_derivative(2)
    m11 = d1.log_derivative(1).evaluate(y1, y2)
    m12 = d1.log_derivative(2).evaluate(y1, y2)
    m22 = d2.log_derivative(2).evaluate(y1, y2)
    return [[m11, m12], [m12, m22]]


def hessian_log_det(p, pt):
    m = log_hessian(p, pt)
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def hessian_det(p, pt):
    """Determinant of the ordinary Hessian ``[[d_i d_j p]]``."""
    poly = getattr(p, "full", p)
    y1, y2 = pt
    a = poly.partial_derivative(1)
    b = poly.partial_derivative(2)
    h11 = a.partial_derivative(1).evaluate(y1, y2)
    h12 = a.partial_derivative(2).evaluate(y1, y2)
    h22 = b.partial_derivative(2).evaluate(y1, y2)
    return h11 * h22 - h12 * h12


def is_nondegenerate(p, pt, tol: float = HESSIAN_TOL) -> tuple[bool, complex]:
    m = log_hessian(p, pt)
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    scale = max(abs(complex(x)) for row in m for x in row)
    return abs(det) > tol * max(scale, 1e-300) ** 2, det


def _is_zero(x) -> bool:
    if isinstance(x, NovikovSeries):
        return x.is_zero()
    return x == 0


# dense polynomial arrays

def polynomial_array(p: LaurentPoly) -> np.ndarray:
    """Dense ``a[i, j]`` = coefficient of ``y1^i y2^j`` after dividing by the
    largest monomial that divides ``p``; the monomial factor only adds
    solutions with a zero coordinate."""
    if p.nbulk:
        raise ValueError("substitute bulk symbols before solving")
    if p.is_zero():
        return np.zeros((1, 1), dtype=complex)
    lo1, hi1 = p.degree_bounds(1)
    lo2, hi2 = p.degree_bounds(2)
    a = np.zeros((hi1 - lo1 + 1, hi2 - lo2 + 1), dtype=complex)
    for ((e1, e2), _), c in p:
        a[e1 - lo1, e2 - lo2] += complex(c)
    return a


def _trim(c: np.ndarray, rel: float) -> np.ndarray:
    """Strip leading coefficients below ``rel * max``."""
    if c.size == 0:
        return c
    m = np.max(np.abs(c))
    if m == 0:
        return c[:0]
    keep = np.nonzero(np.abs(c) > rel * m)[0]
    return c[: keep[-1] + 1]


# resultant coefficients within this factor of the noise estimate are zero
NOISE_FACTOR = 1e3


def _resultant_vanishes(r: np.ndarray, noise: float) -> bool:
    return np.max(np.abs(r)) <= NOISE_FACTOR * noise


def _clean(r: np.ndarray, noise: float) -> np.ndarray:
    """Zero out interpolation noise in resultant coefficients."""
    tol = max(1e-10 * np.max(np.abs(r)), NOISE_FACTOR * noise)
    r = np.where(np.abs(r) > tol, r, 0)
    nz = np.nonzero(r)[0]
    return r[: nz[-1] + 1] if len(nz) else r[:0]


def _eval_rows(a: np.ndarray, x: complex) -> np.ndarray:
    """Coefficients in the second variable of ``a(x, .)``."""
    powers = x ** np.arange(a.shape[0])
    return powers @ a


def _sylvester(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Sylvester matrix of two polynomials given low-to-high."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    s = np.zeros((size, size), dtype=complex)
    for i in range(n):
        s[i, i: i + m + 1] = p[::-1]
    for i in range(m):
        s[n + i, i: i + n + 1] = q[::-1]
    return s


def sylvester_resultant(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Resultant in the second variable, as low-to-high coefficients in the
    first, plus an estimate of the floating-point noise in each coefficient.

    The noise of a computed determinant is about ``eps * s_1 * s_1...s_{k-1}``
    in terms of the singular values; the worst sample bounds the noise of
    the interpolated coefficients.

    ``a`` and ``b`` are dense arrays indexed ``[deg1, deg2]``.
    """
    m, n = a.shape[1] - 1, b.shape[1] - 1
    if m + n == 0:
        raise ValueError("both polynomials are free of the eliminated variable")
    bound = m * (b.shape[0] - 1) + n * (a.shape[0] - 1)
    npts = bound + 1
    xs = np.exp(2j * np.pi * np.arange(npts) / npts)
    vals = np.empty(npts, dtype=complex)
    noise = 0.0
    eps = np.finfo(float).eps
    for k, x in enumerate(xs):
        s = _sylvester(_eval_rows(a, x), _eval_rows(b, x))
        vals[k] = np.linalg.det(s)
        sv = np.linalg.svd(s, compute_uv=False)
        noise = max(noise, float(eps * sv[0] * np.prod(sv[:-1])))
    coeffs = np.fft.fft(vals) / npts
    # fft gives sum_k v_k w^{-jk}; our samples are at w^{+k}
    return coeffs, noise


def _single_linkage(values, tol: float) -> list[list[complex]]:
    groups: list[list[complex]] = []
    for r in values:
        hits = [g for g in groups if any(abs(r - x) <= tol * max(1.0, abs(x)) for x in g)]
        merged = [r]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def _is_multiple(poly, z: complex, k: int, tol: float = 1e-8) -> bool:
    """Derivatives of order ``< k`` vanish at ``z`` relative to the size of
    their terms."""
    d = poly
    for j in range(k):
        if j:
            d = d.deriv()
        c = d.coef
        size = np.sum(np.abs(c) * abs(z) ** np.arange(len(c)))
        if abs(d(z)) > tol * max(size, 1e-300):
            return False
    return True


def univariate_roots(c: np.ndarray, merge_tol: float = ROOT_MERGE_TOL) -> list[tuple[complex, int]]:
    """Nonzero roots of a low-to-high coefficient vector with multiplicities.

    A multiple root shows up as a ring of companion-matrix eigenvalues whose
    radius grows like ``noise^(1/k)``. Roots are grouped at decreasing
    radii down to ``merge_tol``; a group of size ``k`` is accepted when the
    derivatives below order ``k`` vanish at its centroid, otherwise it is
    regrouped more tightly.
    """
    c = np.asarray(c, dtype=complex)
    nz = np.nonzero(np.abs(c) > 0)[0]
    if len(nz) == 0:
        raise DegenerateSystem("zero polynomial")
    c = c[nz[0]: nz[-1] + 1]
    if len(c) <= 1:
        return []
    poly = np.polynomial.Polynomial(c)
    out = []
    pending = [list(np.roots(c[::-1]))]
    for tol in (1e-2, 1e-3, 1e-4, merge_tol):
        regroup = []
        for pool in pending:
            for g in _single_linkage(pool, tol):
                ctr = complex(np.mean(g))
                if len(g) == 1:
                    out.append((ctr, 1))
                elif _is_multiple(poly, ctr, len(g)):
                    out.append((ctr, len(g)))
                else:
                    regroup.append(g)
        pending = regroup
    for pool in pending:
        out.extend((complex(r), 1) for r in pool)
    out.sort(key=lambda t: (round(t[0].real, 8), round(t[0].imag, 8)))
    return out


def eliminant(p: LaurentPoly, q: LaurentPoly, keep: int = 1) -> np.ndarray:
    """Resultant eliminating the other variable, with trailing noise and
    powers of the kept variable removed; normalized to unit max coefficient.
    Low-to-high coefficients in ``y_keep``."""
    a, b = polynomial_array(p), polynomial_array(q)
    if keep == 2:
        a, b = a.T, b.T
    r, noise = sylvester_resultant(a, b)
    if _resultant_vanishes(r, noise):
        raise DegenerateSystem("resultant vanishes identically")
    r = _clean(r, noise)
    nz = np.nonzero(np.abs(r) > 1e-10 * np.max(np.abs(r)))[0]
    r = r[nz[0]:]
    return r / r[np.argmax(np.abs(r))]


# Newton polishing

class _System:
    def __init__(self, p: LaurentPoly, q: LaurentPoly):
        self.f = (p, q)
        self.j = ((p.partial_derivative(1), p.partial_derivative(2)),
                  (q.partial_derivative(1), q.partial_derivative(2)))
        self.scale = max(p.max_abs_coefficient(), q.max_abs_coefficient(), 1e-300)

    def residual(self, y) -> float:
        try:
            return max(abs(complex(f.evaluate(*y))) for f in self.f)
        except ZeroCoordinate:
            return math.inf

    def relative_residual(self, y) -> float:
        """Residual over the sum of term magnitudes; rejects approximate
        zeros near infinity where large terms cancel."""
        worst = 0.0
        for f in self.f:
            total, size = 0j, 0.0
            for ((e1, e2), _), c in f:
                t = complex(c) * y[0] ** e1 * y[1] ** e2
                total += t
                size += abs(t)
            worst = max(worst, abs(total) / size if size else 0.0)
        return worst

    def jacobian(self, y) -> np.ndarray:
        return np.array([[complex(g.evaluate(*y)) for g in row] for row in self.j])

    def polish(self, y, rng=None):
        y = np.array(y, dtype=complex)
        if rng is not None:
            y = y * (1 + 1e-10 * (rng.standard_normal(2) + 1j * rng.standard_normal(2)))
        r = self.residual(y)
        for _ in range(POLISH_MAXITER):
            if r <= POLISH_TOL * self.scale:
                break
            jm = self.jacobian(y)
            if abs(np.linalg.det(jm)) <= 1e-14 * max(np.max(np.abs(jm)), 1e-300) ** 2:
                break
            f = np.array([complex(g.evaluate(*y)) for g in self.f])
            step = np.linalg.solve(jm, f)
            t = 1.0
            while t > 1e-4:
                cand = y - t * step
                rc = self.residual(cand)
                if rc < r:
                    y, r = cand, rc
                    break
                t /= 2
            else:
                break
        return tuple(complex(v) for v in y), r

    def jacobian_singular(self, y, tol: float = 1e-8) -> bool:
        jm = self.jacobian(y)
        return abs(np.linalg.det(jm)) <= tol * max(np.max(np.abs(jm)), 1e-300) ** 2


def _candidates(a: np.ndarray, b: np.ndarray, x: complex) -> list[complex]:
    """Second coordinates above ``x`` for the dense pair ``a, b``."""
    ca = _trim(_eval_rows(a, x), 1e-9)
    cb = _trim(_eval_rows(b, x), 1e-9)
    na = np.max(np.abs(_eval_rows(a, x))) if a.size else 0
    nb = np.max(np.abs(_eval_rows(b, x))) if b.size else 0
    ref_a = np.sum(np.abs(a)) * max(1.0, abs(x)) ** a.shape[0]
    ref_b = np.sum(np.abs(b)) * max(1.0, abs(x)) ** b.shape[0]
    zero_a = na <= 1e-9 * ref_a
    zero_b = nb <= 1e-9 * ref_b
    if zero_a and zero_b:
        raise DegenerateSystem(f"both equations vanish on the line y = {x}")
    polys = []
    if not zero_a and len(ca) > 1:
        polys.append(ca)
    if not zero_b and len(cb) > 1:
        polys.append(cb)
    if not polys:
        return []
    polys.sort(key=len)
    return [z for z, _ in univariate_roots(polys[0]) if abs(z) > CLUSTER_TOL]


def _solve_once(p, q, keep, rng):
    sys_ = _System(p, q)
    a, b = polynomial_array(p), polynomial_array(q)
    if keep == 2:
        a, b = a.T, b.T
    if a.shape[1] == 1 and b.shape[1] == 1:
        # neither involves the eliminated variable: common roots are lines
        ra = univariate_roots(a[:, 0]) if a.shape[0] > 1 else []
        for x, _ in ra:
            if abs(np.polynomial.polynomial.polyval(x, b[:, 0])) <= 1e-9 * np.sum(np.abs(b)) * max(1, abs(x)) ** b.shape[0]:
                raise DegenerateSystem("common factor in one variable")
        return []
    r, noise = sylvester_resultant(a, b)
    if _resultant_vanishes(r, noise):
        raise DegenerateSystem("resultant vanishes identically")
    r = _clean(r, noise)
    roots = univariate_roots(r)
    found = []
    for x, mult in roots:
        if abs(x) <= CLUSTER_TOL:
            continue
        for z in _candidates(a, b, x):
            y0 = (x, z) if keep == 1 else (z, x)
            if sys_.jacobian_singular(y0, 1e-6):
                # Newton only drifts at a multiple point; centroids are better
                y, res = y0, sys_.residual(y0)
            else:
                y, res = sys_.polish(y0, rng)
            if res > RESIDUAL_TOL * sys_.scale or sys_.relative_residual(y) > 1e-10:
                continue
            # polishing refines; a long walk means it chased a zero at infinity
            if max(abs(y[i] - y0[i]) / max(1.0, abs(y0[i])) for i in (0, 1)) > 1e-3:
                continue
            if min(abs(y[0]), abs(y[1])) <= CLUSTER_TOL:
                continue
            found.append((y, res, x, mult))
    # merge duplicates; multiple points are only known to about 1e-5
    points: list[list] = []
    for y, res, x, mult in found:
        tol = ROOT_MERGE_TOL if sys_.jacobian_singular(y, 1e-6) else 1e-6
        for pt in points:
            if max(abs(y[0] - pt[0][0]), abs(y[1] - pt[0][1])) <= tol * max(1.0, abs(y[0]), abs(y[1])):
                if res < pt[1]:
                    pt[0], pt[1] = y, res
                break
        else:
            points.append([y, res, x, mult])
    out = []
    for y, res, x, mult in points:
        m = 1 if not sys_.jacobian_singular(y) else _projected_multiplicity(a, b, y, keep)
        if m is None:
            # projection did not resolve the point; share the eliminant root
            sharing = sum(1 for other in points if other[2] == x)
            m = max(1, mult // sharing)
        out.append(CriticalPoint(y=y, multiplicity=m, residual=res))
    return out


# a fixed generic slope for the projection y1 + c*y2
_SHEAR = complex(0.5772156649, 0.3183098862)


def _shear(a: np.ndarray, c: complex) -> np.ndarray:
    """Coefficients of ``a(x - c*y, y)`` indexed ``[deg_x, deg_y]``."""
    d1, d2 = a.shape
    out = np.zeros((d1, d1 + d2 - 1), dtype=complex)
    for i in range(d1):
        for j in range(d2):
            if a[i, j] == 0:
                continue
            for k in range(i + 1):
                out[k, j + i - k] += a[i, j] * math.comb(i, k) * (-c) ** (i - k)
    cols = np.nonzero(np.any(out != 0, axis=0))[0]
    return out[:, : cols[-1] + 1]


def _projected_multiplicity(a, b, y, keep) -> int | None:
    """Intersection multiplicity at ``y`` as the multiplicity of the root
    ``y1 + c*y2`` of the resultant after a generic shear; the arrays are in
    ``keep`` orientation. None when no root matches."""
    if keep == 2:
        a, b = a.T, b.T
    r, noise = sylvester_resultant(_shear(a, _SHEAR), _shear(b, _SHEAR))
    if _resultant_vanishes(r, noise):
        return None
    roots = univariate_roots(_clean(r, noise))
    x0 = y[0] + _SHEAR * y[1]
    if not roots:
        return None
    z, m = min(roots, key=lambda t: abs(t[0] - x0))
    return m if abs(z - x0) <= 1e-4 * max(1.0, abs(x0)) else None


def solve_complex_system(p: LaurentPoly, q: LaurentPoly, eliminate: int = 2, seed=None) -> list[CriticalPoint]:
    """All common zeros of ``p`` and ``q`` in ``(C*)^2``.

    ``eliminate`` names the variable removed by the resultant. ``seed``
    jitters the Newton starting points, which must not change the answer.
    Raises :class:`DegenerateSystem` for positive-dimensional zero sets.
    """
    if p.nbulk or q.nbulk:
        raise ValueError("substitute bulk symbols before solving")
    if p.is_zero() or q.is_zero():
        raise DegenerateSystem("an equation vanishes identically")
    rng = None if seed is None else np.random.default_rng(seed)
    keep = 1 if eliminate == 2 else 2
    pts = _solve_once(p, q, keep, rng)
    # a point hiding behind a shared projection is caught from the other side
    other = _solve_once(p, q, 3 - keep, rng)
    for cand in other:
        if not any(_close(cand.y, pt.y, ROOT_MERGE_TOL if cand.multiplicity > 1 else 1e-6) for pt in pts):
            pts.append(cand)
        else:
            for pt in pts:
                if _close(cand.y, pt.y, ROOT_MERGE_TOL) and pt.multiplicity != cand.multiplicity:
                    pt.multiplicity = max(pt.multiplicity, cand.multiplicity)
    pts.sort(key=lambda c: (round(c.y[0].real, 6), round(c.y[0].imag, 6), round(c.y[1].real, 6), round(c.y[1].imag, 6)))
    return pts


def _close(a, b, tol=1e-6) -> bool:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1])) <= tol * max(1.0, abs(a[0]), abs(a[1]))
