import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from quiver_reduction.quiver import fomin6  # noqa: E402

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}

EX51 = (2, 13, 5, 7)
EX52 = (1, 1, 2, 3)
EX53 = (2, 6, 2, 4)
EX53_SCALE = Fraction(-1, 2)
EX53_T = [[-3, -1], [1, 0]]


@pytest.fixture
def ex51():
    return fomin6(*EX51)


@pytest.fixture
def ex52():
    return fomin6(*EX52)


@pytest.fixture
def ex53():
    return fomin6(*EX53)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@st.composite
def skew_matrices(draw, min_n=1, max_n=8, bound=5):
    n = draw(st.integers(min_n, max_n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b = draw(st.integers(-bound, bound))
            rows[i][j], rows[j][i] = b, -b
    return rows


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number:2d}: {title} {detail}".rstrip())
