import pytest

from mvmodal.algebra.presets import boolean2, godel, lukasiewicz, mtl6, product, wnm5


@pytest.fixture(scope="session")
def l3():
    return lukasiewicz(3)


@pytest.fixture(scope="session")
def l3c():
    return lukasiewicz(3).with_constants()


@pytest.fixture(scope="session")
def g3():
    return godel(3)


@pytest.fixture(scope="session")
def wnm():
    return wnm5()


@pytest.fixture(scope="session")
def mtl():
    return mtl6()


@pytest.fixture(scope="session")
def b2xl3():
    return product(boolean2(), lukasiewicz(3))


@pytest.fixture(scope="session")
def b2xb2():
    return product(boolean2(), boolean2())


@pytest.fixture
def data_dir():
    from mvmodal.scenarios import DATA_DIR

    return DATA_DIR
