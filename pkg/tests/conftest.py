import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mapperforge.complex import SimplicialComplex  # noqa: E402


@pytest.fixture
def path3():
    return SimplicialComplex.graph([0, 1, 2], [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return SimplicialComplex.from_faces([[0, 1, 2]])


@pytest.fixture
def cycle4():
    return SimplicialComplex.graph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def claw():
    return SimplicialComplex.graph(range(4), [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def path4():
    return SimplicialComplex.graph(range(4), [(0, 1), (1, 2), (2, 3)])
