"""One check per acceptance criterion; each prints a PASS/FAIL line."""
from fractions import Fraction as F
from math import comb

import numpy as np

from bulkpot import (
    BulkSpec,
    LaurentPoly,
    NovikovSeries,
    assemble_smoothing,
    catalog_lookup,
    end_coefficient_polynomial,
    enumerate_admissible,
    invert_unit,
    ks_images,
    milnor_potential,
    parse_bulk,
    quadratic_coefficient_polys,
    unit_power,
)
from bulkpot.catalog import APPENDIX_SURFACES
from bulkpot.chainsolve import chain_bulk_solve, leading_coefficient_check, sample_annulus
from bulkpot.lifting import lift_pinned, residual_valuation
from bulkpot.report import verify_appendix
from bulkpot.solver import (
    DegenerateSystem,
    eliminant,
    gradient,
    hessian_log_det,
    is_nondegenerate,
    solve_complex_system,
)

from conftest import ACCEPTANCE_LINES


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def x2_lead(bulk):
    return assemble_smoothing(catalog_lookup("X2").spec, (2, 2), parse_bulk(bulk, 5)).leading()


def test_criterion_01_x2_five_points():
    lead = x2_lead("a4=pair:3")
    g1, g2 = gradient(lead)
    pts = solve_complex_system(g1, g2)
    res = max(max(abs(g1(*p.y)), abs(g2(*p.y))) for p in pts)
    distinct = min(abs(p.y[0] - q.y[0]) + abs(p.y[1] - q.y[1]) for i, p in enumerate(pts) for q in pts[i + 1:])
    nonzero = all(min(map(abs, p.y)) > 1e-8 for p in pts)
    dets = [abs(hessian_log_det(lead, p.y)) for p in pts]
    ok = len(pts) == 5 and res < 1e-9 and nonzero and min(dets) > 1e-8 and distinct > 1e-6
    report(1, ok, f"{len(pts)} points, max residual {res:.1e}, min |logHess| {min(dets):.3g}")


def test_criterion_02_x2_zero_bulk():
    lead = x2_lead("zero")
    g1, g2 = gradient(lead)
    pts = solve_complex_system(g1, g2)
    nondeg = all(is_nondegenerate(lead, p.y)[0] and p.multiplicity == 1 for p in pts)
    r = eliminant(g1, g2, keep=1)
    want = np.polynomial.polynomial.polymul([1, 2, 1], [-1, 2, -1, 1])
    i = int(np.argmax(np.abs(want)))
    err = np.max(np.abs(r / r[i] * want[i] - want)) if len(r) == len(want) else np.inf
    no_y2 = g1.pin_fiber(1, -1) == LaurentPoly.constant(1)
    ok = len(pts) == 3 and nondeg and err < 1e-9 and no_y2
    report(2, ok, f"{len(pts)} points, eliminant error {err:.1e}, y1=-1 leaves g1 = 1")


def test_criterion_03_appendix_counts():
    rows = {r.case: r for r in verify_appendix()}
    want = {"X3": 6, "X4": 6, "X5": 6, "X6": 7, "X7": 7, "X8": 8, "X9": 8, "X10": 8}
    got = {n: rows[f"{n} bulk"].observed for n in want}
    ok = all(rows[f"{n} bulk"].ok and catalog_lookup(n).expected_count == c for n, c in want.items())
    report(3, ok, ", ".join(f"{n}:{o.split()[0]}" for n, o in got.items()))


def test_criterion_04_printed_potentials():
    errors, flagged = {}, []
    for name in ("X3", "X5", "X6", "X7", "X8", "X9", "X10"):
        e = catalog_lookup(name)
        lead = assemble_smoothing(e.spec, e.monotone_point, e.bulk_spec()).leading()
        got = {f: c for (f, _), c in lead}
        want = e.printed_poly()
        keys = set(got) | set(want)
        errors[name] = max(abs(got.get(k, 0) - want.get(k, 0)) for k in keys)
    x4 = catalog_lookup("X4")
    if x4.printed_duplicates():
        flagged.append("X4 repeats y2^-1")
    if any("printed monotone form" in n for n in catalog_lookup("X3").notes):
        flagged.append("X3 monotone form")
    worst = max(errors.values())
    ok = worst < 1e-12 and len(flagged) == 2
    report(4, ok, f"max coefficient error {worst:.1e}; flagged: {'; '.join(flagged)}")


def test_criterion_05_admissible_counts():
    ok = all(len(enumerate_admissible(n, k)) == comb(n + 1, k) for n in range(1, 13) for k in range(n + 2))
    rows = [[len(enumerate_admissible(n, k)) for k in range(n + 2)] for n in (3, 4)]
    ok = ok and rows == [[1, 4, 6, 4, 1], [1, 5, 10, 10, 5, 1]]
    report(5, ok, f"binomial counts for n<=12; rows {rows[0]} and {rows[1]}")


def test_criterion_06_first_end_polynomial():
    def p1(n):
        return LaurentPoly([(((1, 0), ()), 1), (((-1, 0), ()), 1), (((0, 1), ()), 1), (((0, -1), ()), 1),
                            (((0, 0), ()), n - 3)], 0)

    formula = all(end_coefficient_polynomial(n, 1) == p1(n) for n in range(4, 11))
    at_one = all(end_coefficient_polynomial(n, k).evaluate(1, 1) == comb(n + 1, k)
                 for n in range(2, 11) for k in range(1, n + 1))
    report(6, formula and at_one, "P_1 = X+1/X+Y+1/Y+(n-3) for 4<=n<=10; P_k(1,1) = C(n+1,k) for n<=10")


def test_criterion_07_quadratic_identities():
    symbolic = all(
        (c := quadratic_coefficient_polys(n))["A"] == c["G"] and c["A'"] == c["G'"] for n in range(4, 11)
    )
    worst = 0.0
    for n in (4, 5, 6):
        c = leading_coefficient_check(n, *sample_annulus(n))
        worst = max(worst, abs(c["squared"] - c["formula"]) / abs(c["formula"]),
                    abs(c["resultant"] - c["resultant_formula"]) / abs(c["resultant_formula"]))
    report(7, symbolic and worst < 1e-8, f"A=G, A'=G' for 4<=n<=10; leading coefficient rel. error {worst:.1e}")


def test_criterion_08_milnor_locus():
    exact = True
    degenerate = True
    hess = 0.0
    for n in range(1, 11):
        lead = milnor_potential(n, (1, 1)).leading()
        g1, g2 = gradient(lead.map_coefficients(lambda c: int(c.real)))
        for y1 in (F(1), F(-2, 3), F(7, 5)):
            exact = exact and g1.evaluate(y1, -y1) == 0 and g2.evaluate(y1, -y1) == 0
        try:
            solve_complex_system(*gradient(lead))
            degenerate = False
        except DegenerateSystem:
            pass
        hess = max(hess, abs(hessian_log_det(lead, (0.8 + 0.3j, -0.8 - 0.3j))))
    ok = exact and degenerate and hess < 1e-9
    report(8, ok, f"gradient zero on y2=-y1 exactly, DegenerateSystem raised, |logHess| <= {hess:.1e}")


def test_criterion_09_chain_systems():
    y1, y2 = LaurentPoly.variable(1), LaurentPoly.variable(2)
    pts = solve_complex_system(y1 - y2, 1 + y1 * y2 + 2 * y2)
    a1 = len(pts) == 1 and abs(pts[0].y[0] + 1) < 1e-6 and abs(pts[0].y[1] + 1) < 1e-6 and pts[0].multiplicity == 2
    counts = {}
    for n in range(2, 9):
        sol = chain_bulk_solve(n, seed=n)
        counts[n] = sum(1 for r in sol.roots if min(map(abs, r.y)) > 1e-6)
    ok = a1 and all(counts.values())
    report(9, ok, f"A1 root (-1,-1) x2; nonzero roots for n=2..8: {counts}")


def _segment_system(u2):
    g = assemble_smoothing(catalog_lookup("X2").spec, (2, u2), BulkSpec.divisor(5, {4: None})).normalized()
    return [g.partial_derivative(v).pin_fiber(2, 1, promote_bulk=0) for v in (1, 2)]


def _random_unit(rng):
    lead = complex(*rng.uniform(-2, 2, 2))
    while abs(lead) < 0.5:
        lead = complex(*rng.uniform(-2, 2, 2))
    k = rng.integers(1, 4)
    exps = [F(int(rng.integers(1, 12)), int(rng.integers(1, 5))) for _ in range(k)]
    cs = rng.normal(size=k) + 1j * rng.normal(size=k)
    cs *= 0.5 * abs(lead) / max(np.sum(np.abs(cs)), 1e-12)
    return NovikovSeries([(0, lead)] + list(zip(exps, cs)))


def test_criterion_10_lifting():
    vals = {}
    for u2 in (F(9, 4), F(5, 2)):
        for order in (2, 5):
            s = _segment_system(u2)
            vals[(u2, order)] = residual_valuation(s, lift_pinned(s, order, near=(1, None)))
    lifts = all(v >= order for (_, order), v in vals.items())
    rng = np.random.default_rng(20240601)
    order = 3
    one = NovikovSeries.constant(1)
    worst = F(10)
    for _ in range(100):
        a = _random_unit(rng)
        inv = (a * invert_unit(a, order) - one).chop(1e-9)
        m = int(rng.integers(2, 5))
        root = unit_power(a, F(1, m), order)
        back = one
        for _ in range(m):
            back = back * root
        pw = (back - a).truncate(order).chop(1e-9)
        r = F(int(rng.integers(-5, 6)), 3)
        prod = (unit_power(a, r, order) * unit_power(a, -r, order) - one).chop(1e-9)
        worst = min(worst, *(min(x.valuation(), F(10)) for x in (inv, pw, prod)))
    ok = lifts and worst >= order
    shown = ", ".join(f"u2={u}/E={e}: {v}" for (u, e), v in vals.items())
    report(10, ok, f"segment residual valuations {shown}; 100 units round-trip to valuation >= {order}")


def test_criterion_11_kodaira_spencer():
    ks = ks_images(catalog_lookup("X2").spec, BulkSpec.symbolic(5))
    T = NovikovSeries.monomial

    def key(**e):
        return tuple(e.get(f"a{i}", 0) for i in range(1, 6))

    printed = [
        {((1, 0), key(a1=1)): T(1, 0)},
        {((0, 1), key(a2=1)): T(1, 0)},
        {((-1, -1), key(a3=1)): T(1, 6), ((0, -1), key(a3=1, a4=-1, a5=1)): T(1, 4)},
        {((0, -1), key(a4=1)): T(1, 4), ((0, -1), key(a3=1, a4=-1, a5=1)): T(-1, 4)},
        {((0, -1), key(a3=1, a4=-1, a5=1)): T(1, 4), ((1, -1), key(a5=1)): T(1, 2)},
    ]
    match = all(got == LaurentPoly(w, 5) for got, w in zip(ks, printed))
    bulk = catalog_lookup("X2").bulk_spec().values
    gap = bulk[3] - bulk[2] / bulk[3] * bulk[4]
    report(11, match and abs(gap) > 1e-8, f"five images match; e^a4 - e^(a3-a4+a5) = {gap:.6g} at the chosen bulk")
