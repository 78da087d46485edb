from __future__ import annotations

from functools import lru_cache

import numpy as np
import pytest

from groupds import gen
from groupds.builder import build_auto
from groupds.core import CayleyGroup


@lru_cache(maxsize=None)
def corpus_tables() -> dict[str, np.ndarray]:
    return gen.corpus()


@lru_cache(maxsize=None)
def group(name: str) -> CayleyGroup:
    return CayleyGroup(corpus_tables()[name])


@lru_cache(maxsize=None)
def built(name: str):
    """``(ds, report)`` for a corpus group, built once per session."""
    return build_auto(group(name))


def relabel(table: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """The same group with element ``g`` renamed ``perm[g]``."""
    inv = np.argsort(perm)
    return perm[table[np.ix_(inv, inv)]]


@pytest.fixture(scope="session")
def corpus():
    return corpus_tables()


@pytest.fixture
def S3():
    return group("S3")


@pytest.fixture
def S4():
    return group("S4")


@pytest.fixture
def A5():
    return group("A5")


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
