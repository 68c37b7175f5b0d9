import numpy as np
import pytest

from penthull.complex.tiling import make_supertile


@pytest.fixture(scope="session")
def K():
    """``K(n)``: the cached level-``n`` supertile."""
    return make_supertile


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
