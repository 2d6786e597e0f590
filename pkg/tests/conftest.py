from functools import lru_cache

import numpy as np
import pytest
from hypothesis import strategies as st

from loopkit import validate
from loopkit.corpus import groups, l5, moufang12
from loopkit.search import enumerate_loops


@lru_cache(maxsize=None)
def small_loops(max_order: int = 5):
    return tuple(L for n in range(1, max_order + 1) for L in enumerate_loops(n))


@st.composite
def loops(draw, max_order: int = 5, relabel: bool = True):
    """A loop of order <= max_order, optionally with relabeled elements (identity not at 0)."""
    pool = small_loops(max_order)
    L = pool[draw(st.integers(0, len(pool) - 1))]
    if relabel and L.order > 1:
        perm = draw(st.permutations(range(L.order)))
        L = L.relabel(perm)
    return L


def naive_loop_ops(L):
    """Division and inverses by search over the table, independent of the package's tables."""
    T = [[int(v) for v in row] for row in L.table]
    n = len(T)
    e = next(a for a in range(n) if all(T[a][x] == x == T[x][a] for x in range(n)))
    mul = lambda a, b: T[a][b]  # noqa: E731
    ldiv = lambda a, b: next(z for z in range(n) if T[a][z] == b)  # noqa: E731
    rdiv = lambda a, b: next(z for z in range(n) if T[z][b] == a)  # noqa: E731
    lin = lambda a: next(z for z in range(n) if T[z][a] == e)  # noqa: E731
    rin = lambda a: next(z for z in range(n) if T[a][z] == e)  # noqa: E731
    return e, mul, ldiv, rdiv, lin, rin


@pytest.fixture(scope="session")
def all_groups():
    return groups()


@pytest.fixture(scope="session")
def L5():
    return l5()


@pytest.fixture(scope="session")
def M12():
    return moufang12()


@pytest.fixture
def z4():
    return validate([[(i + j) % 4 for j in range(4)] for i in range(4)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- acceptance summary ------------------------------------------------------

CRITERIA: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
