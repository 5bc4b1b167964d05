import os
import sys
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from paircomp.core import ComparisonArray, Outcome, WeakOrder  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

VALUES = [Fraction(v) for v in (-1, 0, 1)] + [Fraction(-1, 2), Fraction(1, 2)]


@st.composite
def arrays(draw, n_min=2, n_max=5, m_max=2, skew=False, values=VALUES):
    n = draw(st.integers(n_min, n_max))
    m = draw(st.integers(1, m_max))
    outs = []
    for p in range(m):
        for i in range(n):
            for j in range(i + 1, n):
                if draw(st.booleans()):
                    a = draw(st.sampled_from(values))
                    b = -a if skew else draw(st.sampled_from(values))
                    outs.append(Outcome(p, i, j, a, b))
    return ComparisonArray(n, m, -1, 1, tuple(outs))


@st.composite
def weak_orders(draw, n):
    ranks = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    used = sorted(set(ranks))
    return WeakOrder.from_ranks([used.index(r) for r in ranks])


@pytest.fixture
def fig1():
    from paircomp.fixtures import make_fixture

    return make_fixture("fig1")


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
