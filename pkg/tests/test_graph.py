import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.sparse.csgraph import floyd_warshall

from lowstretch import (DisconnectedError, Graph, PreconditionError, ball, radius,
                        shortest_path, shortest_path_tree, sssp)
from lowstretch.graph import components

from _graphs import cycle, path, random_graph


def test_sssp_path():
    g = path(4)
    d = sssp(g, None, 0)
    assert [d[v] for v in range(4)] == [0, 1, 2, 3]


def test_sssp_detour_beats_heavy_edge():
    g = Graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])
    assert sssp(g, None, 0)[2] == 2


def test_sssp_induced_subgraph_breaks_cycle():
    g = cycle(6)
    assert sssp(g, {1, 2, 3, 4, 5}, 1)[5] == 4


def test_sssp_unreachable_marked():
    g = cycle(6)
    d = sssp(g, {0, 1, 3}, 0)
    assert d.reachable(1) and not d.reachable(3)
    assert not d.connected


def test_sssp_source_outside_subset():
    with pytest.raises(PreconditionError):
        sssp(path(3), {1, 2}, 0)


def test_radius_examples():
    assert radius(cycle(8), None, 3) == 4
    assert radius(path(1), None, 0) == 0
    grid = Graph(9, [(r * 3 + c, r * 3 + c + 1) for r in range(3) for c in range(2)] +
                 [(r * 3 + c, (r + 1) * 3 + c) for r in range(2) for c in range(3)])
    assert radius(grid, None, 0) == 4


def test_radius_disconnected():
    with pytest.raises(DisconnectedError):
        radius(cycle(6), {0, 1, 3}, 0)


def test_ball_examples():
    assert ball(path(4), None, 0, 1.5) == {0, 1}
    g = random_graph(12, 3)
    assert ball(g, None, 5, 0) == {5}
    assert ball(cycle(6), {1, 2, 3, 4, 5}, 3, 2) == {1, 2, 3, 4, 5}


def test_ball_negative_radius():
    with pytest.raises(PreconditionError):
        ball(path(3), None, 0, -1)


def test_shortest_path_examples():
    assert shortest_path(path(3), None, 0, 2) == [0, 1, 2]
    assert shortest_path(path(3), None, 1, 1) == [1]
    assert shortest_path(cycle(4), None, 0, 2) == [0, 1, 2]


def test_shortest_path_tree_examples():
    t = shortest_path_tree(path(5), None, 0)
    assert t.edges() == [(i, i + 1, 1) for i in range(4)]
    t = shortest_path_tree(cycle(4), None, 0)
    assert {(0, 1), (0, 3)} <= {(u, v) for u, v, _ in t.edges()}
    assert t.distance(0, 2) == 2
    g = Graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])
    assert [(u, v) for u, v, _ in shortest_path_tree(g, None, 0).edges()] == [(0, 1), (1, 2)]


def test_graph_rejects_bad_input():
    with pytest.raises(PreconditionError):
        Graph(2, [(0, 0)])
    with pytest.raises(PreconditionError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(PreconditionError):
        Graph(2, [(0, 1, 0)])
    with pytest.raises(PreconditionError):
        Graph(2, [(0, 1, -2.5)])


def test_integral_float_lengths_are_exact():
    g = Graph(3, [(0, 1, 2.0), (1, 2, 3)])
    assert g.exact and not g.unit
    assert isinstance(sssp(g, None, 0)[2], int)


def test_components():
    g = Graph(5, [(0, 1), (2, 3)])
    assert sorted(sorted(c) for c in components(g)) == [[0, 1], [2, 3], [4]]


def _fw(g):
    M = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        M[u, v] = M[v, u] = w
    return floyd_warshall(M, directed=False)


graphs = st.builds(random_graph, st.integers(2, 64), st.integers(0, 10 ** 6),
                   st.sampled_from(["unit", "int", "float"]))


@settings(max_examples=60, deadline=None)
@given(graphs, st.data())
def test_sssp_matches_floyd_warshall(g, data):
    D = _fw(g)
    s = data.draw(st.integers(0, g.n - 1))
    d = sssp(g, None, s)
    for v in range(g.n):
        assert math.isclose(d[v], D[s, v], abs_tol=1e-9)
    # induced subsets only lengthen distances
    sub = frozenset(v for v in range(g.n) if v == s or data.draw(st.booleans()))
    ds = sssp(g, sub, s)
    for v in sub:
        if ds.reachable(v):
            assert ds[v] >= D[s, v] - 1e-9


@settings(max_examples=60, deadline=None)
@given(graphs, st.data())
def test_ball_path_and_tree_consistency(g, data):
    s = data.draw(st.integers(0, g.n - 1))
    d = sssp(g, None, s)
    z = data.draw(st.integers(0, g.n - 1))
    assert z in ball(g, None, s, d[z])
    p = shortest_path(g, None, s, z)
    assert p[0] == s and p[-1] == z
    assert math.isclose(sum(g.length(a, b) for a, b in zip(p, p[1:])), d[z], abs_tol=1e-9)
    t = shortest_path_tree(g, None, s)
    for v in range(g.n):
        assert g.same(t.root_distance(v), d[v])
    b = ball(g, None, s, data.draw(st.floats(0, 20)))
    assert s in b
    h = nx.Graph([(u, v) for u, v, _ in g.edges if u in b and v in b])
    assert len(b) == 1 or (h.number_of_nodes() == len(b) and nx.is_connected(h))
