import pytest

from orichrome import OrientedGraph


@pytest.fixture
def hub_hexagon() -> OrientedGraph:
    """Directed 6-cycle with every rim vertex also aiming at a central hub."""
    arcs = [(i, (i + 1) % 6) for i in range(6)] + [(i, 6) for i in range(6)]
    return OrientedGraph(7, arcs)


@pytest.fixture
def path3() -> OrientedGraph:
    return OrientedGraph(3, [(0, 1), (1, 2)])
