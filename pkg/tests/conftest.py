import numpy as np
import pytest

from gslab.graph import Multigraph


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def path_graph(n):
    return Multigraph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves):
    return Multigraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(n):
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
