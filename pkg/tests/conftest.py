import pytest

from ecrep.numerics import make_context


@pytest.fixture(scope="session")
def ctx128():
    return make_context(128)


@pytest.fixture(scope="session")
def ctx192():
    return make_context(192)


@pytest.fixture(scope="session")
def ctx256():
    return make_context(256)
