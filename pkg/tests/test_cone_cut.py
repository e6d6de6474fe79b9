import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lowstretch import Graph, PreconditionError, cut_cone, sample_truncated_radius, select_portal
from lowstretch.cone_cut import interval_count
from lowstretch.graph import ball, radius, sssp

from _graphs import cycle, path, random_graph

K4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


def test_select_portal_k4():
    p, y, x, gr = select_portal(K4, range(4), 0, {0}, {1, 2, 3}, 0.5, Delta=32)
    assert (p, y, x) == (1, 0, 1)
    assert gr.chi == Fraction(4, 3) and gr.ball_size == 3


def test_select_portal_star():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    p, y, x, gr = select_portal(g, range(4), 0, {0}, {1, 2, 3}, 0.01)
    assert p == 1 and gr.chi == 4 and (y, x) == (0, 1)


def test_select_portal_single_candidate():
    g = path(5)
    p, y, x, gr = select_portal(g, range(5), 0, {0, 1, 2, 3}, {4}, 0.5)
    assert (p, y, x) == (4, 3, 4) and gr.chi == 5


def test_interval_count():
    assert interval_count(1) == 1
    assert interval_count(Fraction(4, 3)) == 1
    assert interval_count(2) == 2
    assert interval_count(16) == 8
    assert interval_count(1024) == 20
    assert interval_count(3) == 4  # 2 log2 3 = 3.17
    with pytest.raises(PreconditionError):
        interval_count(Fraction(1, 2))


def test_sample_chi16_intervals():
    rng = random.Random(5)
    for _ in range(200):
        s = sample_truncated_radius(16, 0.4, rng)
        assert s.N == 8
        lo, hi = s.interval
        assert abs((hi - lo) - 0.4 / 32) < 1e-15
        assert lo <= s.r <= hi and 0.1 <= s.r <= 0.2
        assert len(s.coin_trace) == min(s.h, 7) and all(s.coin_trace[:s.h - 1])


def test_sample_chi1_is_uniform_over_everything():
    rng = random.Random(1)
    s = [sample_truncated_radius(1, 0.5, rng) for _ in range(2000)]
    assert all(x.N == 1 and x.h == 1 and x.coin_trace == () for x in s)
    assert min(x.r for x in s) < 0.13 and max(x.r for x in s) > 0.24


def test_sample_deterministic():
    a = sample_truncated_radius(1024, 0.3, random.Random(9))
    b = sample_truncated_radius(1024, 0.3, random.Random(9))
    assert a == b


def test_cut_cone_examples():
    rng = random.Random(0)
    cut = cut_cone(path(5), range(5), 0, {0, 1, 2}, {3, 4}, 4, 0.5, rng)
    assert cut.cluster == {3, 4} and cut.portal == (2, 3)
    cut = cut_cone(path(5), range(5), 0, {0, 1, 2, 3}, {4}, 4, 0.5, rng)
    assert cut.cluster == {4}
    g = cycle(6)
    for seed in range(20):
        cut = cut_cone(g, range(6), 0, {0}, {1, 2, 3, 4, 5}, 3, 0.5, random.Random(seed))
        assert cut.sample.r * 3 < 2
        assert cut.cluster == {1, 2, 3} and cut.portal == (0, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 60), st.integers(0, 10 ** 6), st.sampled_from(["unit", "int", "float"]),
       st.sampled_from([0.05, 0.25, 0.5]))
def test_growth_ball_swallowed(n, seed, weights, eps):
    g = random_graph(n, seed, weights)
    X = g.vertex_set
    Delta = radius(g, X, 0)
    X0 = ball(g, X, 0, Delta / 8)
    Y = X - X0
    if not Y:
        return
    # the cut needs a connected Y; keep the component of the farthest vertex
    far = max(Y, key=lambda v: (sssp(g, X, 0)[v], v))
    Y = frozenset(sssp(g, Y, far).dist)
    X = X0 | Y
    if not sssp(g, X, 0).connected:
        return
    Delta = radius(g, X, 0)
    cut = cut_cone(g, X, 0, X0, Y, Delta, eps, random.Random(seed))
    assert cut.growth.ball <= cut.cluster
    assert cut.portal[1] in cut.cluster and cut.cluster <= Y
    assert sssp(g, cut.cluster, cut.portal[1]).connected
