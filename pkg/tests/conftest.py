import pytest

from coxhom.graphs import parse_graph
from coxhom.groups import build_group


def group_of(code: str):
    return build_group(parse_graph(code))


@pytest.fixture(scope="session")
def a2():
    return group_of("A2")


@pytest.fixture(scope="session")
def a3():
    return group_of("A3")


@pytest.fixture(scope="session")
def b3():
    return group_of("B3")


@pytest.fixture(scope="session")
def h3():
    return group_of("H3")


@pytest.fixture(scope="session")
def f4():
    return group_of("F4")


@pytest.fixture(scope="session")
def i2_8():
    return group_of("I2:8")


@pytest.fixture(scope="session")
def e7_t1_63():
    """Census restricted to the size-63 class; the one default-run E7 job."""
    from coxhom.pipelines import e7_table1

    return e7_table1(class_size=63)
