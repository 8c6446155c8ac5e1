import pytest

from gallai import load_base14, pentagon_coloring


@pytest.fixture(scope="session")
def pentagon():
    return pentagon_coloring()


@pytest.fixture(scope="session")
def base14():
    return load_base14()
