import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from uqsl3.scalars import LaurentPoly, Scalar

DENOMINATORS = (
    None,
    LaurentPoly({(3, 0): 1, (0, 3): -1}),  # r - s
    LaurentPoly({(3, 0): 1, (0, 3): 1}),  # r + s
    LaurentPoly({(1, 1): 1, (0, 0): 2}),  # uv + 2
    LaurentPoly({(2, 0): 1, (0, 1): Fraction(-1, 3)}),
)


def random_poly(rng: random.Random, n_terms: int = 3, span: int = 4) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        e = (rng.randint(-span, span), rng.randint(-span, span))
        terms[e] = terms.get(e, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return LaurentPoly(terms)


def random_scalar(rng: random.Random) -> Scalar:
    num = random_poly(rng)
    den = rng.choice(DENOMINATORS)
    return Scalar(num) if den is None else Scalar(num, den)


def scalars():
    return st.integers(0, 2**32).map(lambda seed: random_scalar(random.Random(seed)))


@pytest.fixture
def rng():
    return random.Random(20261016)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
