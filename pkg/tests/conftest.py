import json

import pytest
from hypothesis import HealthCheck, settings

from toric4.models.pair import CharacteristicPair, IntVec2

settings.register_profile(
    "toric4",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("toric4")


def make_pair(*vectors) -> CharacteristicPair:
    return CharacteristicPair(vectors=tuple(IntVec2(a, b) for a, b in vectors))


@pytest.fixture
def cp2():
    return make_pair((1, 1), (1, 0), (0, 1))


@pytest.fixture
def torsion_triangle():
    return make_pair((1, 2), (1, 0), (-1, 2))


@pytest.fixture
def example_square():
    """The quadrilateral with Lambda = (2 -3 1 0; 1 -2 0 1)."""
    return make_pair((2, 1), (-3, -2), (1, 0), (0, 1))


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, payload: dict) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return write
