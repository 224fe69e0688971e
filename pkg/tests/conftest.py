from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bulkpot import LaurentPoly, NovikovSeries

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


exponents = st.fractions(min_value=0, max_value=4, max_denominator=6)
small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def series(draw, max_terms=4, integer=True):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    coeff = small_ints if integer else st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
    return NovikovSeries([(draw(exponents), draw(coeff)) for _ in range(n)])


@st.composite
def units(draw, max_terms=4):
    """Units whose tail is at most half the leading coefficient, so float
    round-off in the binomial and geometric series stays bounded."""
    lead = draw(st.complex_numbers(min_magnitude=0.5, max_magnitude=2, allow_nan=False, allow_infinity=False))
    rest = draw(series(max_terms=max_terms, integer=False))
    total = sum(abs(c) for _, c in rest)
    scale = 0.5 * abs(lead) / total if total > 0.5 * abs(lead) else 1.0
    tail = NovikovSeries([(e + Fraction(1, 6), c * scale) for e, c in rest])
    return NovikovSeries.constant(lead) + tail


@st.composite
def laurent(draw, nbulk=0, max_terms=5, max_exp=3):
    e = st.integers(min_value=-max_exp, max_value=max_exp)
    b = st.integers(min_value=-2, max_value=2)
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = [
        (((draw(e), draw(e)), tuple(draw(b) for _ in range(nbulk))), draw(small_ints))
        for _ in range(n)
    ]
    return LaurentPoly(terms, nbulk)
