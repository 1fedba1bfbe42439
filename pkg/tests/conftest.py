import pytest

from simplecryst.catalog import catalog
from simplecryst.complex import realize


@pytest.fixture(scope="session")
def cp2():
    return catalog("cp2")


@pytest.fixture(scope="session")
def s4():
    return catalog("s4")


@pytest.fixture(scope="session")
def s2xs2():
    return catalog("s2xs2")


@pytest.fixture(scope="session")
def cp2_complex(cp2):
    return realize(cp2)


@pytest.fixture(scope="session")
def s4_complex(s4):
    return realize(s4)
