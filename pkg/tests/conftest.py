import pytest

from trichar.field import make_tower


@pytest.fixture(scope="session")
def gf4():
    return make_tower(2, 1)


@pytest.fixture(scope="session")
def gf9():
    return make_tower(3, 1)


@pytest.fixture(scope="session")
def gf16():
    return make_tower(2, 2)


@pytest.fixture(scope="session")
def gf25():
    return make_tower(5, 1)
