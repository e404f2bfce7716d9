import itertools

import pytest

from cubik.grid import component_count, new_grid
from cubik.invariants import StandardDiagramParams, standard_diagram


def all_grids(n, knots_only=False):
    for x in itertools.permutations(range(n)):
        for o in itertools.permutations(range(n)):
            if any(a == b for a, b in zip(x, o)):
                continue
            G = new_grid(n, x, o)
            if knots_only and component_count(G) != 1:
                continue
            yield G


def standard(p, j):
    return standard_diagram(StandardDiagramParams(p, j, p - j))


@pytest.fixture
def unknot2():
    return new_grid(2, [0, 1], [1, 0])


@pytest.fixture
def left_trefoil():
    return new_grid(5, [3, 4, 0, 1, 2], [0, 1, 2, 3, 4])


@pytest.fixture
def shifted_trefoil():
    return new_grid(5, [0, 1, 2, 3, 4], [2, 3, 4, 0, 1])


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
