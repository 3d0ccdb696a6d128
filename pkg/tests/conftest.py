import pytest

from src.crypto import SeededRandom
from src.session_graph import run_session
from src.session_state import SessionMode
from src.world import World, provision_world

SUPI = "imsi-001010000000001"
OTHER_SUPI = "imsi-001010000000002"


@pytest.fixture
def rng() -> SeededRandom:
    return SeededRandom(0)


@pytest.fixture
def world(rng: SeededRandom) -> World:
    return provision_world(rng)


@pytest.fixture
def two_ue_world(rng: SeededRandom) -> World:
    return provision_world(rng, supis=(SUPI, OTHER_SUPI))


@pytest.fixture
def guti_world(world: World, rng: SeededRandom) -> World:
    """A world whose UE finished one SUPI session and holds a GUTI"""
    result = run_session(world, SessionMode.SUPI, rng=rng, label="setup")
    assert result.outcome.completed
    return world
