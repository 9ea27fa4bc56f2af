import numpy as np
import pytest
from hypothesis import strategies as st

from floatloc import Instance


def random_instance(rng, length=(100.0, 1e4), bumps=(0, 6), floating=(1, 10), lower=0.0):
    ls = float(rng.uniform(*length))
    k = int(rng.integers(bumps[0], bumps[1] + 1))
    n = int(rng.integers(floating[0], floating[1] + 1))
    return Instance(lower, lower + ls, (lower + rng.uniform(0, ls, k)).tolist(), n)


@st.composite
def instances(draw, max_bumps=6, max_floating=10, min_floating=1):
    lower = draw(st.floats(-1000, 1000, allow_nan=False))
    length = draw(st.floats(1.0, 1e4, allow_nan=False))
    fracs = draw(st.lists(st.floats(1e-6, 1 - 1e-6), max_size=max_bumps))
    n = draw(st.integers(min_floating, max_floating))
    return Instance(lower, lower + length, [lower + f * length for f in fracs], n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
