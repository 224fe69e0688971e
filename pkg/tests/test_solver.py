import cmath
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bulkpot import BulkSpec, LaurentPoly, assemble_smoothing, catalog_lookup, milnor_potential, parse_bulk
from bulkpot.catalog import APPENDIX_SURFACES
from bulkpot.solver import (
    RESIDUAL_TOL,
    DegenerateSystem,
    eliminant,
    gradient,
    hessian_det,
    hessian_log_det,
    is_nondegenerate,
    solve_complex_system,
    univariate_roots,
)


def _lead(name, bulk=None, u=None):
    e = catalog_lookup(name)
    bulk = e.bulk_spec() if bulk is None else bulk
    return assemble_smoothing(e.spec, u or e.monotone_point, bulk).leading()


def x2(bulk_text):
    return _lead("X2", parse_bulk(bulk_text, 5))


def test_gradient_examples():
    _, g2 = gradient(x2("a4=pair:3"))
    want = 1 - LaurentPoly.monomial(-1, -2) - 3 * LaurentPoly.monomial(0, -2) - LaurentPoly.monomial(1, -2)
    diff = g2 - want
    assert all(abs(c) < 1e-12 for _, c in diff)
    zero = gradient(LaurentPoly.constant(4))
    assert zero[0].is_zero() and zero[1].is_zero()


@pytest.mark.parametrize("n", range(1, 11))
def test_milnor_gradient_vanishes_exactly_on_antidiagonal(n):
    g1, g2 = gradient(milnor_potential(n, (1, 1)).leading().map_coefficients(lambda c: int(c.real)))
    for y1 in (F(1), F(-3, 7), F(5, 2), F(11, 13)):
        assert g1.evaluate(y1, -y1) == 0 and g2.evaluate(y1, -y1) == 0


@given(st.integers(1, 10), st.floats(0, 2 * cmath.pi))
def test_milnor_gradient_on_unit_circle(n, theta):
    g1, g2 = gradient(milnor_potential(n, (1, 1)).leading())
    y1 = cmath.exp(1j * theta)
    assert abs(g1(y1, -y1)) < 1e-12 and abs(g2(y1, -y1)) < 1e-12


def test_x2_with_bulk_has_five_simple_roots():
    lead = x2("a4=pair:3")
    pts = solve_complex_system(*gradient(lead))
    assert len(pts) == 5
    g1, g2 = gradient(lead)
    for p in pts:
        assert p.multiplicity == 1
        assert min(abs(p.y[0]), abs(p.y[1])) > 1e-3
        assert max(abs(g1(*p.y)), abs(g2(*p.y))) < RESIDUAL_TOL
        assert is_nondegenerate(lead, p.y)[0]


def test_x2_zero_bulk_eliminant_and_roots():
    lead = x2("zero")
    r = eliminant(*gradient(lead), keep=1)
    want = np.polynomial.polynomial.polymul([1, 2, 1], [-1, 2, -1, 1])
    r = r / r[np.argmax(np.abs(r))] * want[np.argmax(np.abs(want))]
    assert len(r) == len(want) and np.max(np.abs(r - want)) < 1e-9
    pts = solve_complex_system(*gradient(lead))
    assert len(pts) == 3
    cubic = np.polynomial.Polynomial([-1, 2, -1, 1])
    for p in pts:
        assert abs(cubic(p.y[0])) < 1e-9
        assert abs(p.y[0] + 1) > 1e-3


def test_y1_minus_one_gives_no_second_coordinate():
    g1, _ = gradient(x2("zero"))
    # the first equation collapses to the nonzero constant 1
    assert g1.pin_fiber(1, -1) == LaurentPoly.constant(1)


def test_a1_double_root():
    y1, y2 = LaurentPoly.variable(1), LaurentPoly.variable(2)
    pts = solve_complex_system(y1 - y2, 1 + y1 * y2 + 2 * y2)
    assert len(pts) == 1
    assert abs(pts[0].y[0] + 1) < 1e-6 and abs(pts[0].y[1] + 1) < 1e-6
    assert pts[0].multiplicity == 2


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_milnor_system_is_degenerate(n):
    with pytest.raises(DegenerateSystem):
        solve_complex_system(*gradient(milnor_potential(n, (1, 1)).leading()))


def test_milnor_log_hessian_vanishes_on_locus():
    for n in (1, 3, 6):
        lead = milnor_potential(n, (1, 1)).leading()
        for y1 in (1, 0.7 - 0.2j, -2.5):
            assert abs(hessian_log_det(lead, (y1, -y1))) < 1e-9
    assert hessian_log_det(milnor_potential(1, (1, 1)).leading(), (1, -1)) == 0


def test_x2_hessian_closed_form():
    for s in (3, 2.2, 4 + 1j):
        lead = x2(f"a4=pair:{s}")
        for p in solve_complex_system(*gradient(lead)):
            y1, y2 = p.y
            closed = (3 * y1 ** -4 + 4 * s * y1 ** -3 + 6 * y1 ** -2 - 1) * y2 ** -4
            assert abs(hessian_det(lead, p.y) - closed) <= 1e-8 * abs(closed)
            log_det = hessian_log_det(lead, p.y)
            assert abs(log_det - (y1 * y2) ** 2 * closed) <= 1e-8 * abs(log_det)


def _count(lead, **kw):
    return sum(p.multiplicity for p in solve_complex_system(*gradient(lead), **kw))


CASES = [(n, "bulk") for n in APPENDIX_SURFACES] + [(n, "zero") for n in APPENDIX_SURFACES[:6]]


@pytest.mark.parametrize("name,kind", CASES)
def test_root_count_independent_of_elimination_and_seed(name, kind):
    e = catalog_lookup(name)
    lead = _lead(name, e.bulk_spec() if kind == "bulk" else e.zero_bulk())
    counts = {_count(lead, eliminate=el) for el in (1, 2)}
    counts |= {_count(lead, seed=s) for s in range(5)}
    assert len(counts) == 1


@pytest.mark.parametrize("name", ["X8", "X9", "X10"])
def test_zero_bulk_degenerate_cases(name):
    with pytest.raises(DegenerateSystem):
        solve_complex_system(*gradient(_lead(name, catalog_lookup(name).zero_bulk())))


def _match(a, b, tol=1e-6):
    return len(a) == len(b) and all(min(abs(p.y[0] - q.y[0]) + abs(p.y[1] - q.y[1]) for q in b) < tol for p in a)


@pytest.mark.parametrize("c", [2.5, -1j, 1e-3 + 0.5j])
def test_scaling_keeps_roots_and_scales_hessian(c):
    lead = _lead("X5")
    scaled = lead * c
    base, new = solve_complex_system(*gradient(lead)), solve_complex_system(*gradient(scaled))
    assert _match(base, new)
    for p in base:
        d0, d1 = hessian_log_det(lead, p.y), hessian_log_det(scaled, p.y)
        assert abs(d1 - c * c * d0) <= 1e-9 * abs(d1)
        assert is_nondegenerate(lead, p.y)[0] == is_nondegenerate(scaled, p.y)[0]


def test_energy_shift_keeps_roots():
    e = catalog_lookup("X4")
    pot = assemble_smoothing(e.spec, e.monotone_point, e.bulk_spec())
    shifted = pot.full.shift_T(F(7, 3))
    assert _match(solve_complex_system(*gradient(pot.leading())),
                  solve_complex_system(*gradient(shifted.leading_part()[1])))


def test_univariate_root_multiplicities():
    roots = univariate_roots(np.polynomial.polynomial.polymul([1, 2, 1], [-1, 2, -1, 1]))
    mults = sorted(m for _, m in roots)
    assert mults == [1, 1, 1, 2]


def test_solutions_are_sorted_and_serializable():
    pts = solve_complex_system(*gradient(x2("a4=pair:3")))
    keys = [tuple(round(v, 6) for c in p.y for v in (c.real, c.imag)) for p in pts]
    assert keys == sorted(keys)
    doc = pts[0].to_json()
    assert {"y", "multiplicity"} <= set(doc)
