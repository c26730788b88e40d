import warnings
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from poisson_super.supercore import SuperAlgebra

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _quiet_default_diagonals():
    # tables built in tests leave odd diagonals implicit on purpose
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="odd diagonal brackets defaulted")
        yield


MIXED = SuperAlgebra.of(("x1", "even"), ("x2", "even"), ("y1", "odd"), ("y2", "odd"))

small_rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def monomials(draw, algebra=MIXED, max_even=2):
    return tuple(
        draw(st.integers(0, 1 if g.parity else max_even)) for g in algebra.generators
    )


@st.composite
def polynomials(draw, algebra=MIXED, max_terms=3, max_even=2):
    terms = draw(st.dictionaries(monomials(algebra, max_even), small_rationals, max_size=max_terms))
    from poisson_super.supercore import SuperPolynomial

    return SuperPolynomial(algebra, terms)


@st.composite
def homogeneous(draw, algebra=MIXED, max_terms=3, max_even=2):
    """Polynomial of a single parity (possibly zero)."""
    from poisson_super.supercore import SuperPolynomial

    par = draw(st.integers(0, 1))
    monos = draw(st.lists(monomials(algebra, max_even), max_size=max_terms))
    monos = [m for m in monos if algebra.monomial_parity(m) == par]
    coeffs = draw(st.lists(small_rationals, min_size=len(monos), max_size=len(monos)))
    return SuperPolynomial(algebra, dict(zip(monos, coeffs)))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
