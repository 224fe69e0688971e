from itertools import product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bulkpot import (
    AdmissibleTuple,
    DiskClass,
    LaurentPoly,
    end_coefficient_polynomial,
    end_intersections,
    enumerate_admissible,
    intersection_vector,
    quadratic_coefficient_polys,
)
from bulkpot.chains import is_admissible

NINE = set(product((-1, 0, 1), repeat=2))


def _poly(terms):
    return LaurentPoly([((e, ()), c) for e, c in terms.items()], 0)


def _entries(n, k):
    return {t.entries for t in enumerate_admissible(n, k)}


def test_small_enumerations():
    assert _entries(2, 1) == {(0, 0), (1, 0), (1, 1)}
    assert _entries(1, 1) == {(0,), (1,)}
    assert [len(enumerate_admissible(3, k)) for k in range(5)] == [1, 4, 6, 4, 1]


@pytest.mark.parametrize("n", range(1, 13))
def test_counts_are_binomial(n):
    assert [len(enumerate_admissible(n, k)) for k in range(n + 2)] == [comb(n + 1, k) for k in range(n + 2)]


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_matches_direct_check(n):
    for k in range(n + 2):
        brute = {s for s in product(range(4), repeat=n) if is_admissible(s, k)}
        assert brute == _entries(n, k)


def _drop_center(t):
    return (0,) + t


def _raise_first(s):
    return tuple(1 + x - s[0] for x in s) + (1 - s[0],)


@pytest.mark.parametrize("n", range(1, 10))
def test_pascal_recursion_by_explicit_injection(n):
    for k in range(1, n + 1):
        left = {_drop_center(t) for t in _entries(n, k - 1)}
        right = {_raise_first(s) for s in _entries(n, k)}
        assert len(left) == comb(n + 1, k - 1) and len(right) == comb(n + 1, k)
        assert not left & right
        assert left | right == _entries(n + 1, k)


def test_intersection_vector_examples():
    a1 = AdmissibleTuple((1,), 1)
    assert intersection_vector(a1) == (-1,)
    assert intersection_vector(a1, outer=True) == (1, -1, 1)
    a2 = AdmissibleTuple((1, 1), 2)
    assert intersection_vector(DiskClass(2, a2)) == (-1, 0)
    assert intersection_vector(a2, outer=True) == (1, -1, 0, 1)
    for j in range(1, 6):
        delta = tuple(int(i == j) for i in range(1, 6))
        assert intersection_vector(AdmissibleTuple((0,) * 5, j)) == delta


def test_end_intersection_examples():
    assert end_intersections(AdmissibleTuple((0, 0, 0), 1)) == (1, 0)
    assert end_intersections(AdmissibleTuple((1, 1, 0, 0), 3))[0] == -1


@pytest.mark.parametrize("n", range(2, 9))
def test_end_intersections_match_full_vector(n):
    for k in range(n + 2):
        for t in enumerate_admissible(n, k):
            v = intersection_vector(t)
            assert end_intersections(t) == (v[0], v[-1])


@given(st.integers(2, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))), st.data())
def test_end_intersections_on_random_tuples(nk, data):
    n, k = nk
    t = data.draw(st.sampled_from(enumerate_admissible(n, k)))
    v = intersection_vector(t)
    assert end_intersections(t) == (v[0], v[-1])


@pytest.mark.parametrize("n", range(2, 11))
def test_end_polynomials_shape_and_symmetry(n):
    for k in range(1, n + 1):
        p = end_coefficient_polynomial(n, k)
        assert set(p.fiber_support()) <= NINE
        assert all(isinstance(c, int) and c > 0 for _, c in p)
        assert p.evaluate(1, 1) == comb(n + 1, k)
        swapped = _poly({(e[1], e[0]): c for (e, _), c in end_coefficient_polynomial(n, n + 1 - k)})
        assert p == swapped


@pytest.mark.parametrize("n", range(4, 11))
def test_first_end_polynomial(n):
    want = _poly({(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1, (0, 0): n - 3})
    assert end_coefficient_polynomial(n, 1) == want


def test_first_end_polynomial_short_chain():
    assert end_coefficient_polynomial(2, 1) == _poly({(1, 0): 1, (-1, 1): 1, (0, -1): 1})


@pytest.mark.parametrize("n", range(4, 11))
def test_xy_coefficient_is_binomial(n):
    for k in range(2, n):
        assert end_coefficient_polynomial(n, k).coefficient(1, 1) == comb(n - 3, k - 2)


def test_y_coefficient_formula_example():
    assert end_coefficient_polynomial(5, 3).coefficient(0, 1) == comb(2, 0) + comb(3, 2) - comb(2, 1) == 2


@pytest.mark.parametrize("n", range(4, 11))
def test_quadratic_coefficient_identities(n):
    c = quadratic_coefficient_polys(n)
    assert c["A"] == c["G"]
    assert c["A'"] == c["G'"]
    a = LaurentPoly(
        [(((-k, k), ()), comb(n - 3, k - 2) * (k - 1)) for k in range(2, n)], 0
    )
    assert c["A"] == a
