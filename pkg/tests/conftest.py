import pytest

from exatlas import algebras, jordan, lie


@pytest.fixture(scope="session")
def octonion_algebra():
    return algebras.octonions()


@pytest.fixture(scope="session")
def j3o():
    return jordan.jordan_algebra(algebras.octonions())


@pytest.fixture(scope="session")
def der_h():
    return lie.named_derivation_algebra("quaternions")


@pytest.fixture(scope="session")
def der_o():
    return lie.named_derivation_algebra("octonions")


@pytest.fixture(scope="session")
def der_j3o():
    return lie.named_derivation_algebra("j3o")
