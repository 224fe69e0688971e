"""Bulk parameters ``(e^v, e^w)`` solving the chain-end critical system.

For a chain of length ``n >= 2`` the fiber coordinates are fixed at a
generic sample and the gradient equations, cleared by ``XY``, become two
quadratics in ``X = e^v`` with coefficients quadratic in ``Y = e^w``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .chains import gradient_system_in_bulk, quadratic_coefficients
from .potential import chain_leading_potential
from .solver import CriticalPoint, DegenerateSystem, solve_complex_system, sylvester_resultant

__all__ = [
    "ChainSolution",
    "GenericityFailure",
    "chain_bulk_solve",
    "leading_coefficient_check",
    "sample_annulus",
    "squared_eliminant",
]

MAX_RETRIES = 8


class GenericityFailure(ArithmeticError):
    """Every sampled fiber point was non-generic."""


@dataclass
class ChainSolution:
    n: int
    seed: int
    y: tuple[complex, complex]
    roots: list[CriticalPoint]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "y": [[c.real, c.imag] for c in self.y],
            "roots": [r.to_json() for r in self.roots],
        }


def sample_annulus(seed: int) -> tuple[complex, complex]:
    """Two points with ``0.5 < |y| < 2`` from a fixed-seed generator."""
    rng = np.random.default_rng(seed)
    r = np.exp(rng.uniform(math.log(0.5), math.log(2.0), 2))
    theta = rng.uniform(0, 2 * math.pi, 2)
    return tuple(complex(ri * cmath.exp(1j * t)) for ri, t in zip(r, theta))


def _dense(coeffs: dict[str, complex], suffix: str) -> np.ndarray:
    """``[deg_Y, deg_X]`` array of one quadratic system equation."""
    names = (("I", "H", "G"), ("F", "E", "D"), ("C", "B", "A"))
    a = np.zeros((3, 3), dtype=complex)
    for dx, row in enumerate(names):
        for dy, name in enumerate(row):
            a[dy, dx] = coeffs[name + suffix]
    return a


def squared_eliminant(n: int, y1: complex, y2: complex) -> np.ndarray:
    """Polynomial in ``Y`` from substituting the quadratic-formula root for
    ``X`` into the second equation and squaring away the square root.

    Returned low-to-high, degree 12; equals ``16 a(Y)^2`` times the
    resultant, where ``a`` is the ``X^2`` coefficient of the first equation.
    """
    c = quadratic_coefficients(n, y1, y2)
    P = np.polynomial.Polynomial
    a, b, cc = P([c["C"], c["B"], c["A"]]), P([c["F"], c["E"], c["D"]]), P([c["I"], c["H"], c["G"]])
    a2, b2, c2 = P([c["C'"], c["B'"], c["A'"]]), P([c["F'"], c["E'"], c["D'"]]), P([c["I'"], c["H'"], c["G'"]])
    disc = b * b - 4 * a * cc
    lhs = (b * b + disc) * a2 - 2 * b * b2 * a + 4 * c2 * a * a
    rhs = b2 * a - b * a2
    sq = lhs * lhs - 4 * disc * rhs * rhs
    return sq.coef


def leading_coefficient_check(n: int, y1: complex, y2: complex) -> dict[str, complex]:
    """Leading ``Y`` coefficients computed three ways at a sample point.

    ``resultant``: Sylvester resultant eliminating ``X``;
    ``squared``: :func:`squared_eliminant`;
    ``formula``: ``16 A^2 (D A' - D' A)^2``.
    """
    c = quadratic_coefficients(n, y1, y2)
    res, _ = sylvester_resultant(_dense(c, ""), _dense(c, "'"))
    sq = squared_eliminant(n, y1, y2)
    A, D, A2, D2 = c["A"], c["D"], c["A'"], c["D'"]
    return {
        "resultant": complex(res[8]) if len(res) > 8 else 0j,
        "resultant_formula": (D * A2 - D2 * A) ** 2,
        "squared": complex(sq[12]) if len(sq) > 12 else 0j,
        "formula": 16 * A * A * (D * A2 - D2 * A) ** 2,
    }


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def chain_bulk_solve(n: int, seed: int = 0, retries: int = MAX_RETRIES) -> ChainSolution:
    """Nonzero isolated ``(X, Y)`` solving the leading chain system.

    ``n = 1`` fixes ``y = (1, 1)`` in the fiber-sphere potential.
    ``n >= 2`` samples ``y`` on an annulus and resamples with the next seed
    when the sample is not generic (no nonzero root, a positive-dimensional
    solution set, or a vanishing leading coefficient).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        po = chain_leading_potential(1)
        p = po.partial_derivative(1).bulk_as_fiber(1, 1)
        q = po.partial_derivative(2).bulk_as_fiber(1, 1)
        return ChainSolution(1, seed, (1 + 0j, 1 + 0j), solve_complex_system(p, q, seed=seed))
    f, g = gradient_system_in_bulk(n)
    for attempt in range(retries):
        s = seed + attempt
        y = sample_annulus(s)
        # for n < 4 the top Y-degree coefficient vanishes identically
        if n >= 4:
            lead = leading_coefficient_check(n, *y)
            if abs(lead["resultant"]) <= 1e-10 * max(1.0, abs(lead["formula"])):
                continue
        try:
            roots = solve_complex_system(f.bulk_as_fiber(*y), g.bulk_as_fiber(*y), seed=s)
        except DegenerateSystem:
            continue
        if roots:
            return ChainSolution(n, s, y, roots)
    raise GenericityFailure(f"no generic sample among seeds {seed}..{seed + retries - 1}")
