import random
from dataclasses import replace

import pytest

from girthforge.bounds import (
    SIZE_CAP,
    entropy_bound,
    entropy_set_bound,
    multipartite_cover_bound,
    star_cover_bound,
    stinson_upper,
    verify_cover,
)
from girthforge.errors import BadSize, LoadMismatch, SizeLimit, UncoveredEdge
from girthforge.graphs import Graph
from girthforge.rational import R

from conftest import complete_graph, cycle_graph, random_connected_graph


def test_entropy_bound_known_graphs(c6, k4):
    assert entropy_bound(c6) == R(3, 2)
    assert entropy_bound(cycle_graph(4)) == 1
    assert entropy_bound(cycle_graph(5)) == R(3, 2)
    assert entropy_bound(k4) == 1
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert entropy_bound(p4) == R(3, 2)


def test_entropy_bound_single_edge():
    assert entropy_bound(Graph(2, [(0, 1)])) == 1


def test_entropy_sum_objective(c6):
    assert entropy_bound(c6, objective="sum") == 9
    assert entropy_bound(cycle_graph(5), objective="sum") == R(15, 2)


def test_entropy_set_bound(c6):
    assert entropy_set_bound(c6, (2, 3)) == 3
    assert entropy_set_bound(cycle_graph(5), (1, 3)) == 2
    assert entropy_set_bound(c6, ()) == 0
    with pytest.raises(BadSize):
        entropy_set_bound(c6, (0, 9))


def test_entropy_singleton_query_is_one(c6):
    # exactly 1, not the 3/2 minmax value: pricing a single vertex lets
    # the LP shift load elsewhere. Upper witness: the three stars
    # centered at 0, 2, 4 give vertex 0 one unit; lower: f(01) >= f(1)+1
    # and f(0)+f(1) >= f(01) force f(0) >= 1.
    assert entropy_set_bound(c6, (0,)) == 1
    assert entropy_bound(c6, objective="minmax") == R(3, 2)


def test_entropy_bad_objective(c6):
    with pytest.raises(BadSize):
        entropy_bound(c6, objective="max")


def test_full_families_agrees_on_small_graphs():
    rng = random.Random(5150)
    for _ in range(6):
        g = random_connected_graph(rng.randrange(3, 6), rng)
        assert entropy_bound(g, full_families=True) == entropy_bound(g)


def test_entropy_size_cap():
    big = cycle_graph(2 * (SIZE_CAP + 2))
    with pytest.raises(SizeLimit):
        entropy_bound(big)


def test_star_cover_known_values(c6, k4):
    sol = star_cover_bound(c6)
    assert sol.value == R(3, 2)
    assert sol.kind == "star"
    assert verify_cover(c6, sol)
    assert star_cover_bound(k4).value == 2
    assert star_cover_bound(cycle_graph(4)).value == R(3, 2)


def test_star_cover_loads_attain_value(c6):
    sol = star_cover_bound(c6)
    assert max(sol.loads) == sol.value
    assert all(load <= sol.value for load in sol.loads)


def test_star_cover_pieces_cover_every_edge(c6):
    sol = star_cover_bound(c6)
    covered = {}
    for piece in sol.pieces:
        for e in piece.covered_edges():
            covered[e] = covered.get(e, 0) + piece.weight
    assert set(covered) == set(c6.edges)
    assert all(w >= 1 for w in covered.values())


def test_multipartite_cover_known_values(c6, k4):
    assert multipartite_cover_bound(c6).value == R(3, 2)
    assert multipartite_cover_bound(cycle_graph(5)).value == R(3, 2)
    # complete multipartite graphs are covered by one free piece
    k22 = cycle_graph(4)
    sol = multipartite_cover_bound(k22)
    assert sol.value == 1
    assert len(sol.pieces) == 1
    assert multipartite_cover_bound(k4).value == 1


def test_verify_cover_rejects_tampering(c6):
    sol = star_cover_bound(c6)
    half = replace(sol.pieces[0], weight=sol.pieces[0].weight / 2)
    with pytest.raises(UncoveredEdge):
        verify_cover(c6, replace(sol, pieces=(half,) + sol.pieces[1:]))
    with pytest.raises(LoadMismatch):
        verify_cover(c6, replace(sol, value=sol.value / 2))
    with pytest.raises(UncoveredEdge):
        verify_cover(c6, replace(sol, pieces=sol.pieces[1:]))
    with pytest.raises(BadSize):
        bad = replace(sol.pieces[0], weight=-sol.pieces[0].weight)
        verify_cover(c6, replace(sol, pieces=(bad,) + sol.pieces[1:]))


def test_stinson_upper_values():
    assert stinson_upper(2) == R(3, 2)
    assert stinson_upper(3) == 2
    assert stinson_upper(6) == R(7, 2)


def test_bound_chain_on_random_graphs():
    rng = random.Random(424242)
    for _ in range(8):
        g = random_connected_graph(rng.randrange(4, 8), rng)
        ent = entropy_bound(g)
        multi = multipartite_cover_bound(g).value
        star = star_cover_bound(g).value
        max_deg = max(g.degree(v) for v in range(g.n))
        assert ent <= multi <= star <= stinson_upper(max_deg)


def test_triangle_bounds():
    tri = complete_graph(3)
    assert entropy_bound(tri) == 1
    assert multipartite_cover_bound(tri).value == 1
    assert star_cover_bound(tri).value == R(3, 2)
