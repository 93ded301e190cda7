import random

import pytest
from gmpy2 import mpq
from hypothesis import settings

from cliffck.algebra import CliffordElement
from cliffck.polynomial import CliffordPolynomial

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("ci")

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, label = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {label}")


@pytest.fixture
def rng():
    return random.Random(1234)


def rand_element(rng, m, nterms=3):
    return CliffordElement(m, {rng.randrange(1 << m): mpq(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(nterms)})


def rand_poly(rng, m, degree, nterms=4):
    terms = {}
    for _ in range(nterms):
        exps = [0] * (m + 1)
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(m + 1)] += 1
        terms[tuple(exps)] = rand_element(rng, m, 2)
    return CliffordPolynomial(m, terms)
