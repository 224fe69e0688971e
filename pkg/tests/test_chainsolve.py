import pytest

from bulkpot.chains import gradient_system_in_bulk
from bulkpot.chainsolve import (
    GenericityFailure,
    chain_bulk_solve,
    leading_coefficient_check,
    sample_annulus,
    squared_eliminant,
)


def test_a1_fixed_fiber():
    sol = chain_bulk_solve(1)
    assert len(sol.roots) == 1
    root = sol.roots[0]
    assert abs(root.y[0] + 1) < 1e-6 and abs(root.y[1] + 1) < 1e-6
    assert root.multiplicity == 2


@pytest.mark.parametrize("n", range(2, 9))
def test_nonzero_isolated_solutions(n):
    sol = chain_bulk_solve(n, seed=n)
    assert sol.roots
    f, g = gradient_system_in_bulk(n)
    f, g = f.bulk_as_fiber(*sol.y), g.bulk_as_fiber(*sol.y)
    for r in sol.roots:
        assert min(abs(r.y[0]), abs(r.y[1])) > 1e-6
        scale = max(1.0, f.max_abs_coefficient(), g.max_abs_coefficient())
        assert max(abs(f(*r.y)), abs(g(*r.y))) < 1e-9 * scale


def test_same_seed_same_answer():
    a, b = chain_bulk_solve(5, seed=11), chain_bulk_solve(5, seed=11)
    assert a.y == b.y and [r.y for r in a.roots] == [r.y for r in b.roots]


def test_annulus_samples():
    for s in range(50):
        for y in sample_annulus(s):
            assert 0.5 < abs(y) < 2


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_leading_coefficient_agreement(n, seed):
    c = leading_coefficient_check(n, *sample_annulus(seed))
    assert abs(c["resultant"] - c["resultant_formula"]) <= 1e-8 * abs(c["resultant_formula"])
    assert abs(c["squared"] - c["formula"]) <= 1e-8 * abs(c["formula"])
    assert len(squared_eliminant(n, *sample_annulus(seed))) == 13


def test_retries_exhausted():
    with pytest.raises(GenericityFailure):
        chain_bulk_solve(4, retries=0)
    with pytest.raises(ValueError):
        chain_bulk_solve(0)
