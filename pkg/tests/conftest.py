from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from shkit.algebra import CoverRelation, FiniteAlgebra, Lattice
from shkit.paper import builtin


def chain(n: int) -> Lattice:
    labels = tuple(str(i) for i in range(n))
    return Lattice.from_covers(CoverRelation(labels, tuple((str(i), str(i + 1)) for i in range(n - 1))))


def brute_force_arrows_of(lat) -> set[bytes]:
    """Every n x n table checked directly against SH1-SH3."""
    n = lat.size
    m = np.array(lat.meet)
    out = set()
    for cells in product(range(n), repeat=n * n):
        a = np.array(cells).reshape(n, n)
        if (a[np.arange(n), np.arange(n)] != lat.top).any():
            continue
        if (m[np.arange(n)[:, None], a] != m).any():  # x /\ (x -> y) = x /\ y
            continue
        x, y, z = np.indices((n, n, n))
        if (m[x, a[y, z]] != m[x, a[m[x, y], m[x, z]]]).any():
            continue
        out.add(a.astype(np.int8).tobytes())
    return out


@pytest.fixture
def trivial() -> FiniteAlgebra:
    return FiniteAlgebra.from_covers(CoverRelation(("0",), ()), [["0"]], ["0"])


@pytest.fixture
def boolean2() -> FiniteAlgebra:
    """Two-element Boolean algebra with ' the complement."""
    return FiniteAlgebra.from_lattice(chain(2), [["1", "1"], ["0", "1"]], ["1", "0"])


@pytest.fixture(params=["fig1", "fig2", "fig3", "ex15"])
def example(request) -> FiniteAlgebra:
    return builtin(request.param)


@pytest.fixture
def fig1() -> FiniteAlgebra:
    return builtin("fig1")


@pytest.fixture
def fig2() -> FiniteAlgebra:
    return builtin("fig2")


@pytest.fixture
def fig3() -> FiniteAlgebra:
    return builtin("fig3")


@pytest.fixture
def ex15() -> FiniteAlgebra:
    return builtin("ex15")


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
