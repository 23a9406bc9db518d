import pytest

from solvgraph import liealg


@pytest.fixture(scope="session")
def sl2_2():
    return liealg.make_sl(2, 2)


@pytest.fixture(scope="session")
def sl2_3():
    return liealg.make_sl(2, 3)


@pytest.fixture(scope="session")
def sl2_5():
    return liealg.make_sl(2, 5)


@pytest.fixture(scope="session")
def gl2_2():
    return liealg.make_gl(2, 2)


@pytest.fixture(scope="session")
def gl2_3():
    return liealg.make_gl(2, 3)


@pytest.fixture(scope="session")
def t2_3():
    return liealg.make_t(2, 3)


@pytest.fixture(scope="session")
def w3():
    return liealg.make_w3(2)
