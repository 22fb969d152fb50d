import pytest

from charform.catalog import all_algebras, si_algebras, standard_corpus


@pytest.fixture(scope="session")
def all8():
    return all_algebras(8)


@pytest.fixture(scope="session")
def all6():
    return all_algebras(6)


@pytest.fixture(scope="session")
def si6():
    return si_algebras(6)


@pytest.fixture(scope="session")
def corpus10():
    return standard_corpus(10)
