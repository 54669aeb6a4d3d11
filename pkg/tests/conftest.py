from __future__ import annotations

from pathlib import Path

import pytest

from semiprim.library import alternating, cyclic, dihedral, symmetric
from semiprim.perm import parse_cycles

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


def perm(text: str, n: int):
    return parse_cycles(text, n).raw


@pytest.fixture(scope="session")
def sym3():
    return symmetric(3)


@pytest.fixture(scope="session")
def alt5():
    return alternating(5)


@pytest.fixture(scope="session")
def d30():
    return dihedral(15)


@pytest.fixture(scope="session")
def c5():
    return cyclic(5)
