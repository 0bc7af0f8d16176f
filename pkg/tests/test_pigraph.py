import json
import random

import pytest

from girthforge.errors import BadSize, NotBijection, RetriesExhausted
from girthforge.family import PiGraph, build_pi_graph, make_pi_graph
from girthforge.graphs import check_regular_bipartite, girth


def shift_pi(n, k):
    return tuple((i + k) % n for i in range(n))


def expected_edges(pi):
    n = len(pi)
    out = set()
    for i in range(n):
        a = 2 * i + 1
        for b in (2 * i, 2 * ((i + 1) % n), 2 * pi[i]):
            out.add((min(a, b), max(a, b)))
    return tuple(sorted(out))


def test_make_pi_graph_layout():
    pg = make_pi_graph(shift_pi(7, 3))
    assert pg.half == 7
    assert pg.graph.n == 14
    assert pg.graph.edges == expected_edges(shift_pi(7, 3))
    check_regular_bipartite(pg.graph, 3)
    assert pg.girth == girth(pg.graph)
    assert not pg.surgery


def test_make_pi_graph_factor_edges():
    pi = shift_pi(9, 4)
    pg = make_pi_graph(pi)
    assert set(pg.factor_edges()) == {
        (min(2 * i + 1, 2 * pi[i]), max(2 * i + 1, 2 * pi[i]))
        for i in range(9)}


def test_make_pi_graph_rejects_near_identity():
    with pytest.raises(BadSize):
        make_pi_graph(shift_pi(7, 0))  # chord would double an existing edge
    with pytest.raises(BadSize):
        make_pi_graph(shift_pi(7, 1))
    with pytest.raises(NotBijection):
        make_pi_graph((2, 2, 4, 5, 6, 0, 3))


def test_build_pi_graph_meets_girth_target():
    pg = build_pi_graph(4, 64, seed=0)
    assert pg.girth > 4
    assert girth(pg.graph) == pg.girth
    check_regular_bipartite(pg.graph, 3)
    pg6 = build_pi_graph(6, 512, seed=1)
    assert pg6.girth > 6


def test_build_pi_graph_deterministic():
    a = build_pi_graph(4, 64, seed=5)
    b = build_pi_graph(4, 64, seed=5)
    assert a.pi == b.pi and a.graph == b.graph


def test_build_pi_graph_retries_exhausted():
    with pytest.raises(RetriesExhausted):
        build_pi_graph(9, 20, seed=0)


def test_build_pi_graph_input_guards():
    with pytest.raises(BadSize):
        build_pi_graph(3, 64, seed=0)
    with pytest.raises(RetriesExhausted):
        build_pi_graph(6, 5, seed=0)  # far too few chord positions


@pytest.mark.parametrize("target,n,seed", [(4, 36, 15), (4, 44, 6),
                                           (5, 104, 12)])
def test_surgery_path_keeps_invariants(target, n, seed):
    pg = build_pi_graph(target, n, seed=seed)
    assert pg.surgery
    assert pg.half >= n  # splices may add positions
    check_regular_bipartite(pg.graph, 3)
    assert pg.graph.edges == expected_edges(pg.pi)
    assert 3 * pg.girth > target
    assert girth(pg.graph) == pg.girth


def test_pigraph_json_round_trip():
    pg = build_pi_graph(4, 40, seed=2)
    text = pg.to_json()
    again = PiGraph.from_json(text, pg.graph)
    assert again.pi == pg.pi
    assert again.girth == pg.girth
    assert again.surgery == pg.surgery
    assert again.to_json() == text
    bare = PiGraph.from_json(text)
    assert bare.graph == pg.graph


def test_pigraph_json_rejects_mismatched_graph():
    pg = build_pi_graph(4, 40, seed=2)
    other = make_pi_graph(shift_pi(40, 11)).graph
    doc = json.loads(pg.to_json())
    assert doc["girth"] == pg.girth
    with pytest.raises(NotBijection):
        PiGraph.from_json(pg.to_json(), other)


def test_random_seeds_scan_small():
    rng = random.Random(33)
    for _ in range(6):
        seed = rng.randrange(10 ** 6)
        pg = build_pi_graph(4, 48, seed=seed)
        assert pg.girth > 4 or (pg.surgery and 3 * pg.girth > 4)
        check_regular_bipartite(pg.graph, 3)
