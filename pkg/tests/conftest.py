import random

import pytest
from hypothesis import strategies as st

from arrowlab.colorings import dense_from_function
from arrowlab.ordinal import Ordinal, ZERO

ACCEPTANCE_LINES = []


def pentagon_coloring():
    # color 0 on the 5-cycle, color 1 on the pentagram
    return dense_from_function(5, 2, lambda i, j: 0 if (j - i) % 5 in (1, 4) else 1)


@pytest.fixture
def pentagon():
    return pentagon_coloring()


@pytest.fixture
def rng():
    return random.Random(20240611)


def ordinals(max_depth=2, max_terms=3, max_coef=5):
    """Hypothesis strategy for CNF ordinals of bounded shape."""
    if max_depth == 0:
        return st.integers(0, max_coef).map(Ordinal.from_int)

    def build(parts):
        exps = sorted({e for e, _ in parts}, reverse=True)
        coef = {e: c for e, c in parts}
        return Ordinal([(e, coef[e]) for e in exps])

    term = st.tuples(ordinals(max_depth - 1, max_terms, max_coef), st.integers(1, max_coef))
    return st.lists(term, max_size=max_terms).map(build)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
