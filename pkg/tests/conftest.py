from __future__ import annotations

from pathlib import Path

import pytest

from wreathfusion import IntervalRing, dual_group_ring, load_ring, symmetric_cayley, trivial_ring
from wreathfusion.rings import cyclic_cayley

RINGS_DIR = Path(__file__).resolve().parents[1] / "rings"


@pytest.fixture(scope="session")
def rings_dir() -> Path:
    return RINGS_DIR


@pytest.fixture(scope="session")
def z2():
    return load_ring(RINGS_DIR / "dual_z2.json")


@pytest.fixture(scope="session")
def z3():
    return dual_group_ring(cyclic_cayley(3))


@pytest.fixture(scope="session")
def s3():
    return dual_group_ring(symmetric_cayley(3))


@pytest.fixture(scope="session")
def interval1():
    return IntervalRing(1, 8)


@pytest.fixture(scope="session")
def interval2():
    return IntervalRing(2, 5)


@pytest.fixture(scope="session")
def trivial():
    return trivial_ring()


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig) -> list:
    return pytestconfig.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
