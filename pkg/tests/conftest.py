import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from hilbinter.ring import QQ, Ideal, Ring, monomials

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")


def evaluate(f, point):
    """Value of a polynomial at a point with exact arithmetic (brute-force oracle)."""
    total = Fraction(0)
    for u, c in f.terms.items():
        term = Fraction(c)
        for a, x in zip(u, point):
            term *= Fraction(x) ** a
        total += term
    return total


def exponent_vectors(n, max_degree=4):
    return st.lists(st.integers(0, max_degree), min_size=n, max_size=n).map(tuple)


@st.composite
def monomial_gens(draw, n=3, max_gens=4, min_degree=1, max_degree=4):
    k = draw(st.integers(1, max_gens))
    out = []
    for _ in range(k):
        d = draw(st.integers(min_degree, max_degree))
        out.append(draw(st.sampled_from(monomials(n, d))))
    return out


@st.composite
def forms(draw, ring, degree, height=5):
    coeffs = draw(st.lists(st.integers(-height, height), min_size=len(monomials(ring.n, degree)),
                           max_size=len(monomials(ring.n, degree))))
    from hilbinter.ring import Polynomial

    return Polynomial(ring, dict(zip(monomials(ring.n, degree), coeffs)))


@pytest.fixture
def R3():
    return Ring(3, QQ)


@pytest.fixture
def rng():
    return random.Random(12345)


def monomial_ideal(ring, gens):
    return Ideal.from_monomials(ring, gens)


# acceptance report: one PASS/FAIL line per criterion, repeated in the terminal summary

def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def criterion(request):
    lines = request.config._acceptance_lines

    def report(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}" + (f" [{detail}]" if detail else "")
        print(line)
        lines.append(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
