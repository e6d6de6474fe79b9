import math

import pytest
from hypothesis import given, strategies as st

from lowstretch import Params, PreconditionError, epsilon_for, iterated_log, log_star, phi, scale_gap_k
from lowstretch.schedule import PAPER_C


def test_iterated_log_values():
    assert iterated_log(65536, 2) == 4
    assert iterated_log(7.5, 0) == 7.5
    assert iterated_log(65536, 4) == 1
    assert iterated_log(3, 3) < 0  # 3 -> 1.58 -> 0.66 -> -0.6
    with pytest.raises(PreconditionError):
        iterated_log(3, 4)


def test_iterated_log_domain():
    with pytest.raises(PreconditionError):
        iterated_log(2, 3)  # 2 -> 1 -> 0 -> log 0


def test_log_star_values():
    assert log_star(2) == 1
    assert log_star(16) == 3
    assert log_star(65536) == 4
    with pytest.raises(PreconditionError):
        log_star(1.5)


def test_phi_values():
    assert phi(12345, 1) == 1
    assert phi(65536, 2) == 4
    assert phi(65536, 3) == 8
    with pytest.raises(PreconditionError):
        phi(65536, 5)
    with pytest.raises(PreconditionError):
        phi(65536, 0)


def test_epsilon_examples():
    assert PAPER_C == 2 ** 16
    p = Params.paper()
    assert epsilon_for(2 ** 16, p) == 1 / (170 * 2 ** 16 * 4)
    assert epsilon_for(4, p) == 1 / (170 * 2 ** 16)
    q = Params.demo(c=3, schedule="iterated", t=1)
    assert epsilon_for(10, q) == epsilon_for(10 ** 6, q) == 1 / (170 * 3)
    assert epsilon_for(99, Params.demo(eps=0.3)) == 0.3


def test_scale_gap_k():
    assert scale_gap_k(1, 2) == 200
    assert scale_gap_k(math.exp(-1), 2) == 240
    eps = 1 / (170 * 2 ** 16 * 4)
    k = scale_gap_k(eps, 2 ** 16)
    assert k == math.ceil(20 * 2 ** 16 * (math.log(170 * 2 ** 16 * 4) + 5))
    assert 2.9e7 < k < 3.0e7


def test_params_validation():
    with pytest.raises(PreconditionError):
        Params.demo(c=1)
    with pytest.raises(PreconditionError):
        Params.demo(eps=0.75)
    with pytest.raises(PreconditionError):
        Params(mode="paper", schedule="fixed", c=PAPER_C, eps=0.1)
    with pytest.raises(PreconditionError):
        Params(mode="paper", schedule="basic", c=4)
    with pytest.raises(PreconditionError):
        Params.paper(n=3, schedule="iterated")


def test_paper_iterated_parameters():
    p = Params.paper(n=2 ** 16, schedule="iterated")
    assert p.t == 2 and p.c == 2 ** 18 * 4
    assert p.base_threshold() == 16 * p.c


@given(st.integers(2, 10 ** 7), st.integers(0, 10 ** 3))
def test_epsilon_nonincreasing(size, more):
    for p in (Params.paper(), Params.demo(c=2, schedule="iterated", t=3),
              Params.demo(c=5, schedule="basic")):
        assert epsilon_for(size + more, p) <= epsilon_for(size, p)


@given(st.floats(2, 1e300), st.integers(1, 5))
def test_phi_recurrence(n, t):
    if t + 1 > log_star(n):
        return
    assert math.isclose(phi(n, t + 1), phi(n, t) * iterated_log(n, t + 1), rel_tol=1e-12)
