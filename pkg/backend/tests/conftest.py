import pytest

from geometry_service.projective_space import get_index
from settings import get_settings
from spectrum_service.families import elliptic_solids, hyperoval_solids


@pytest.fixture(autouse=True)
def quiet_settings(monkeypatch):
    monkeypatch.setenv("GEOM_PROGRESS", "false")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def pg2():
    return get_index(2)


@pytest.fixture(scope="session")
def pg4():
    return get_index(4)


@pytest.fixture(scope="session")
def pg8():
    return get_index(8)


@pytest.fixture(scope="session")
def elliptic4(pg4):
    return elliptic_solids(pg4)


@pytest.fixture(scope="session")
def hyperoval4(pg4):
    return hyperoval_solids(pg4)
