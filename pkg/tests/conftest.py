import math
import os
from pathlib import Path

import numpy as np
import pytest

from sbm_gof.netgraph import Graph, from_edges

DATA_DIR = Path(os.environ.get("SBM_GOF_DATA", Path(__file__).resolve().parent.parent / "data"))

# filled by tests/test_acceptance.py, printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def trace_cube_loops(m) -> float:
    """sum_{i,j,k} m_ij m_jk m_ki with plain Python loops."""
    m = np.asarray(m, dtype=float).tolist()
    n = len(m)
    total = 0.0
    for i in range(n):
        mi = m[i]
        for j in range(n):
            mij = mi[j]
            if mij == 0.0:
                continue
            mj = m[j]
            s = 0.0
            for k in range(n):
                s += mj[k] * m[k][i]
            total += mij * s
    return total


def lss_loops(m) -> float:
    return trace_cube_loops(m) / math.sqrt(6.0)


@pytest.fixture
def triangle():
    return from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star4():
    return from_edges(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def two_cliques():
    a = np.zeros((20, 20), dtype=int)
    a[:10, :10] = 1
    a[10:, 10:] = 1
    np.fill_diagonal(a, 0)
    return Graph(a)
