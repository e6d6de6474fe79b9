import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from lowstretch import (AugmentedGraph, Graph, Params, PreconditionError, build_low_stretch_tree,
                        contract_short_edges, expand_tree, split_portal)
from lowstretch.graph import sssp
from lowstretch.tree import SpanningTree, validate_spanning_tree

from _graphs import path, random_graph


def test_split_degenerate_unit_edge():
    ag = AugmentedGraph(path(3))
    assert split_portal(ag, {0, 1}, 1, 2, 1, root_distance=1) == 1
    assert not ag.imaginary


def test_split_arithmetic():
    g = Graph(3, [(0, 1, 3), (1, 2, 5)])
    ag = AugmentedGraph(g)
    v = split_portal(ag, {0, 1}, 1, 2, 6, root_distance=3)
    assert v == 3 and ag.imaginary[v] == (1, 2, 3, 2)
    assert ag.length(1, v) == 3 and ag.length(v, 2) == 2
    assert sssp(ag, None, 0)[v] == 6
    assert g.n == 3 and g.m == 2  # the base graph is untouched


def test_split_target_off_edge():
    g = Graph(3, [(0, 1, 3), (1, 2, 5)])
    with pytest.raises(PreconditionError):
        split_portal(AugmentedGraph(g), {0, 1}, 1, 2, 9, root_distance=3)
    with pytest.raises(PreconditionError):
        split_portal(AugmentedGraph(g), {0, 1}, 1, 2, 2, root_distance=3)


def test_expand_round_trip():
    g = Graph(3, [(0, 1, 3), (1, 2, 5)])
    ag = AugmentedGraph(g)
    v = split_portal(ag, {0, 1}, 1, 2, 6, root_distance=3)
    t = SpanningTree.from_edges((0,), [(0, 1, 3), (1, v, 3), (v, 2, 2)])
    back = expand_tree(t, ag)
    assert back.edges() == list(g.edges)
    # only one half in the tree: the added leaf is dropped
    g2 = Graph(3, [(0, 1, 3), (1, 2, 5), (0, 2, 7)])
    ag2 = AugmentedGraph(g2)
    v = split_portal(ag2, {0, 1}, 1, 2, 6, root_distance=3)
    t = SpanningTree.from_edges((0,), [(0, 1, 3), (1, v, 3), (0, 2, 7)])
    assert expand_tree(t, ag2).edges() == [(0, 1, 3), (0, 2, 7)]


def test_expand_identity():
    t = SpanningTree.from_edges((0,), [(0, 1, 1)])
    assert expand_tree(t) is t
    assert expand_tree(t, AugmentedGraph(path(2))) is t


def test_contraction_examples():
    g = path(3)
    assert contract_short_edges(g, g.vertex_set, 2, 1, n=3) is None
    ctr = contract_short_edges(g, g.vertex_set, 10 ** 6, 1, n=3)
    assert ctr.graph.n == 1 and ctr.members == [frozenset({0, 1, 2})]


def test_contracted_pair_expanded():
    g = Graph(3, [(0, 1, 0.001), (1, 2, 4.0)])
    ctr = contract_short_edges(g, g.vertex_set, 4.001, 1, n=3)
    assert ctr.graph.n == 2
    t = SpanningTree.from_edges((0,), [(0, 1, ctr.graph.length(0, 1))])
    back = expand_tree(t, ctr)
    assert len(back) == 3 and back.edges() == [(0, 1, 0.001), (1, 2, 4.0)]
    validate_spanning_tree(g, back)


def test_contracted_portal_lift():
    g = Graph(4, [(0, 1, 0.01), (0, 2, 3.0), (1, 3, 2.0)])
    ctr = contract_short_edges(g, g.vertex_set, 3.0, 1, n=4)
    s0, s2 = ctr.supernode[0], ctr.supernode[2]
    assert ctr.lift_portal(s0, s2, sssp(g, None, 0).dist) == (0, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 70), st.integers(0, 10 ** 6), st.sampled_from(["int", "float"]))
def test_build_round_trip_weighted(n, seed, weights):
    g = random_graph(n, seed, weights)
    params = Params.demo(seed=seed)
    t, trace = build_low_stretch_tree(g, params=params)
    validate_spanning_tree(g, t)
    d = sssp(g, None, 0)
    for u, v, w in g.edges:
        assert t.distance(u, v) >= sssp(g, None, u)[v] - 1e-9
    if n > 1:
        assert g.same(t.distance(0, 1), d[1])  # highway to the first queue element


def _at_risk_counts(g, trace):
    """Per edge, the number of levels whose cluster holds both ends and
    where the edge was long enough to survive contraction."""
    counts = {}
    c, n = trace.params.contraction, g.n
    for rec in trace.records:
        X, Delta = rec.dec.X, rec.dec.Delta
        thr = c * Delta / n
        for u, v, w in g.edges:
            if u in X and v in X and w >= thr:
                counts[(u, v)] = counts.get((u, v), 0) + 1
    return counts


@pytest.mark.parametrize("spread", [False, True])
@pytest.mark.parametrize("seed", range(8))
def test_contraction_at_risk_levels(seed, spread):
    rnd = random.Random(seed)
    n = rnd.choice([16, 64, 128, 256])
    g = random_graph(n, seed, "float")
    if spread:
        # lengths over several orders of magnitude so that contraction fires
        g = Graph(n, [(u, v, w * 10 ** rnd.randint(-3, 2)) for u, v, w in g.edges])
    params = Params.demo(contraction=1.0, seed=seed)
    t, trace = build_low_stretch_tree(g, params=params)
    validate_spanning_tree(g, t)
    counts = _at_risk_counts(g, trace)
    assert max(counts.values(), default=0) <= 4 * math.log2(n)
