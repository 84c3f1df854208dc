import itertools

import pytest

from packcover.core import make_graph, make_sib_instance


@pytest.fixture
def k4():
    return make_graph(4, itertools.combinations(range(4), 2))


@pytest.fixture
def k6():
    return make_graph(6, itertools.combinations(range(6), 2))


@pytest.fixture
def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_graph(10, outer + spokes + inner)


@pytest.fixture
def pqrs():
    """Four genotyped individuals on two loci; the worked feasibility example."""
    return make_sib_instance(
        [
            [(1, 2), (5, 5)],
            [(3, 4), (5, 5)],
            [(1, 1), (5, 5)],
            [(5, 5), (5, 5)],
        ]
    )
