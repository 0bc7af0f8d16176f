import random

import networkx as nx
import pytest

from girthforge.errors import (
    BadSize,
    IsolatedVertex,
    NotBipartite,
    NotRegular,
    SizeLimit,
)
from girthforge.graphs import (
    INFINITE,
    Graph,
    OneFactor,
    check_homomorphism,
    check_regular_bipartite,
    distance,
    find_one_factor,
    format_edge_list,
    girth,
    is_independent,
    is_qualified,
    parse_edge_list,
    require_no_isolated,
    verify_one_factor,
)

from conftest import complete_graph, cycle_graph, random_connected_graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_construction_rejects_bad_input():
    with pytest.raises(BadSize):
        Graph(-1, [])
    with pytest.raises(BadSize):
        Graph(3, [(0, 3)])
    with pytest.raises(BadSize):
        Graph(3, [(1, 1)])
    with pytest.raises(BadSize):
        Graph(3, [(0, 1), (1, 0)])


def test_basic_accessors(c6):
    assert c6.n == 6
    assert c6.m == 6
    assert c6.neighbors(0) == (1, 5)
    assert c6.degree(3) == 2
    assert c6.has_edge(0, 5) and c6.has_edge(5, 0)
    assert not c6.has_edge(0, 3)
    with pytest.raises(BadSize):
        c6.has_edge(0, 6)


def test_edge_order_is_canonical():
    g = Graph(4, [(3, 2), (1, 0), (0, 2)])
    assert g.edges == ((0, 1), (0, 2), (2, 3))
    assert g == Graph(4, [(0, 1), (2, 0), (2, 3)])


def test_edge_list_round_trip(c6):
    text = format_edge_list(c6)
    again = parse_edge_list(text)
    assert again == c6
    assert format_edge_list(again) == text


def test_parse_edge_list_rejects_garbage():
    with pytest.raises(BadSize):
        parse_edge_list("2 1\n0 1\n0 1 2\n")
    with pytest.raises(BadSize):
        parse_edge_list("2 2\n0 1\n")


def test_girth_known_values(c6, k4):
    assert girth(c6) == 6
    assert girth(k4) == 3
    assert girth(cycle_graph(11)) == 11
    assert girth(Graph(4, [(0, 1), (1, 2), (2, 3)])) == INFINITE
    assert girth(Graph(3, [])) == INFINITE
    heawood = Graph(14, [(i, (i + 1) % 14) for i in range(14)]
                    + [(0, 5), (2, 7), (4, 9), (6, 11), (8, 13), (10, 1),
                       (12, 3)])
    assert girth(heawood) == 6


def acyclic_by_union_find(g: Graph) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def test_girth_matches_networkx_on_random_graphs():
    rng = random.Random(20240)
    for _ in range(150):
        n = rng.randrange(4, 13)
        g = random_connected_graph(n, rng)
        want = nx.girth(to_nx(g))
        got = girth(g)
        if want == float("inf"):
            assert got == INFINITE
        else:
            assert got == want
        assert (got == INFINITE) == acyclic_by_union_find(g)


def test_girth_independent_of_jobs():
    rng = random.Random(7)
    for _ in range(10):
        g = random_connected_graph(rng.randrange(20, 40), rng)
        assert girth(g) == girth(g, jobs=3) == girth(g, jobs=8)


def test_distance_matches_networkx():
    rng = random.Random(99)
    for _ in range(40):
        g = random_connected_graph(rng.randrange(4, 11), rng)
        h = to_nx(g)
        u = rng.randrange(g.n)
        v = rng.randrange(g.n)
        assert distance(g, u, v) == nx.shortest_path_length(h, u, v)


def test_distance_cap():
    g = cycle_graph(10)
    assert distance(g, 0, 5) == 5
    assert distance(g, 0, 5, cap=4) == -1
    assert distance(g, 0, 5, cap=5) == 5


def test_check_regular_bipartite(c6, k4):
    sides = check_regular_bipartite(c6, 2)
    assert sorted(sides.a_side + sides.b_side) == list(range(6))
    assert set(sides.a_side) in ({0, 2, 4}, {1, 3, 5})
    with pytest.raises(NotRegular):
        check_regular_bipartite(c6, 3)
    with pytest.raises(NotRegular):
        check_regular_bipartite(Graph(3, [(0, 1), (1, 2)]), 2)
    with pytest.raises(NotBipartite) as err:
        check_regular_bipartite(k4, 3)
    assert err.value.to_json()["error"] == "NOT_BIPARTITE"


def test_independent_and_qualified(c6, k4):
    assert is_independent(c6, (0, 2, 4))
    assert not is_independent(c6, (0, 1))
    assert is_independent(c6, ())
    assert is_qualified(c6, (0, 1, 3))
    assert not is_qualified(c6, (0, 2, 4))
    assert not is_qualified(k4, (2,))
    with pytest.raises(BadSize):
        is_independent(c6, (0, 6))


def test_verify_one_factor_accepts_induced_matching(c6):
    chk = verify_one_factor(c6, (1, 4), (0, 3), OneFactor(((1, 0), (4, 3))))
    assert chk.ok and bool(chk)
    # 1->2, 4->3: same shape, the pairing used throughout the docs
    assert verify_one_factor(c6, (1, 4), (2, 3),
                             OneFactor(((1, 2), (4, 3)))).ok


def test_verify_one_factor_rejections(c6):
    bad = verify_one_factor(c6, (1, 4), (0, 3), OneFactor(((1, 0), (1, 3))))
    assert not bad.ok and bad.reason == "UNSATURATED"
    bad = verify_one_factor(c6, (1, 4), (0, 3), OneFactor(((1, 0), (4, 0))))
    assert not bad.ok and bad.reason == "UNSATURATED"
    bad = verify_one_factor(c6, (1, 4), (0, 3), OneFactor(((1, 3), (4, 0))))
    assert not bad.ok and bad.reason == "MISSING_EDGE"
    bad = verify_one_factor(c6, (1, 3), (0, 2), OneFactor(((1, 0), (3, 2))))
    assert not bad.ok  # 1-2 is a cross edge outside the factor
    assert bad.reason == "FORBIDDEN_EDGE"


def test_one_factor_accessors():
    f = OneFactor(((5, 2), (7, 4)))
    assert f.domain() == (5, 7)
    assert f.image() == (2, 4)
    assert f.as_dict() == {5: 2, 7: 4}


def test_find_one_factor_on_cycle(c6):
    f = find_one_factor(c6, (1, 4), (0, 3))
    assert f is not None
    assert verify_one_factor(c6, (1, 4), (0, 3), f).ok


def test_find_one_factor_none_when_impossible():
    g = Graph(4, [(0, 2), (1, 2), (2, 3)])
    # both 0 and 1 would need vertex 2
    assert find_one_factor(g, (0, 1), (2, 3)) is None


def test_find_one_factor_size_limit():
    k = 21
    g = Graph(2 * k, [(i, i + k) for i in range(k)])
    with pytest.raises(SizeLimit):
        find_one_factor(g, tuple(range(k)), tuple(range(k, 2 * k)))


def test_check_homomorphism(c6):
    c12 = cycle_graph(12)
    assert check_homomorphism(c12, c6, [v % 6 for v in range(12)])
    assert not check_homomorphism(c12, c6, [0] * 12)
    with pytest.raises(BadSize):
        check_homomorphism(c12, c6, [0] * 5)
    with pytest.raises(BadSize):
        check_homomorphism(c12, c6, [7] * 12)


def test_require_no_isolated(c6):
    require_no_isolated(c6)
    with pytest.raises(IsolatedVertex):
        require_no_isolated(Graph(3, [(0, 1)]))


def test_csr_shape(c6):
    indptr, nbrs = c6.csr()
    assert len(indptr) == 7
    assert len(nbrs) == 12
    assert nbrs[indptr[0]:indptr[1]] == [1, 5]
