# tests/conftest.py
import pytest

from tests.strategies import arcs, graph


@pytest.fixture
def k2():
    return graph("a b", "a-b")


@pytest.fixture
def k3():
    return graph("a b c", "a-b b-c a-c")


@pytest.fixture
def p3():
    return graph("a b c", "a-b b-c")


@pytest.fixture
def p4():
    return graph("a b c d", "a-b b-c c-d")


@pytest.fixture
def c4():
    return graph("1 2 3 4", "1-2 2-3 3-4 4-1")


@pytest.fixture
def c5():
    return graph("1 2 3 4 5", "1-2 2-3 3-4 4-5 5-1")


@pytest.fixture
def c5_ring():
    return arcs("1.0 5.1 2.0 1.1 3.0 2.1 4.0 3.1 5.0 4.1")


@pytest.fixture
def p4_overlaps():
    """Every adjacent pair of P4 strictly overlapping; three pairs break normalization."""
    return arcs("a.0 b.0 a.1 c.0 b.1 d.0 c.1 d.1")


@pytest.fixture
def edgeless3():
    return graph("a b c")
