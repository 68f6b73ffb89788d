import pytest

from combcert import BipartiteInstance, load_table


@pytest.fixture(scope="session")
def table1():
    return load_table(1)


@pytest.fixture(scope="session")
def table2():
    return load_table(2, "corrected")


@pytest.fixture(scope="session")
def table2_printed():
    return load_table(2, "printed")


@pytest.fixture(scope="session")
def k33():
    return BipartiteInstance.complete(3)


@pytest.fixture(scope="session")
def k44():
    return BipartiteInstance.complete(4)
