import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from legendre_hp.poly import UniPoly

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "stress", deadline=None, max_examples=600, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_ints = st.integers(min_value=-6, max_value=6)
small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, max_degree=6, coeffs=small_fracs, nonzero=False):
    cs = draw(st.lists(coeffs, min_size=1, max_size=max_degree + 1))
    p = UniPoly(cs)
    if nonzero and p.is_zero():
        p = UniPoly((1,))
    return p


@st.composite
def rooted_polys(draw, max_degree=6):
    """Products of linear factors with small rational roots."""
    roots = draw(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=1, max_size=max_degree))
    lead = draw(st.sampled_from([1, -2, Fraction(1, 3)]))
    return UniPoly.from_roots(roots) * lead


@pytest.fixture
def x():
    return UniPoly((0, 1))


# Acceptance criteria append (number, ok, detail) here; printed at session end.
ACCEPTANCE_RESULTS: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}")
