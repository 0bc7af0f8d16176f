import random

import pytest

from girthforge.family import build_cycle, build_member
from girthforge.graphs import Graph


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_connected_graph(n: int, rng: random.Random) -> Graph:
    """Random spanning tree plus a few extra edges; no isolated vertices."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[rng.randrange(i)]
        v = order[i]
        edges.add((min(u, v), max(u, v)))
    extra = rng.randrange(n)
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


@pytest.fixture
def c6() -> Graph:
    return cycle_graph(6)


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture(scope="session")
def g3_member():
    """30-vertex degree-3 member: five hexagons joined along matchings."""
    return build_member((6, 5), seed=1)


@pytest.fixture(scope="session")
def c6_member():
    return build_cycle(6)
