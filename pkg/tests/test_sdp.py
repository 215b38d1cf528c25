import math
import random

import pytest

from ncextend.graph import Graph, complement, complete, cycle, empty, hadamard_graph, random_graph, strong_product
from ncextend.sdp import ThetaConvergenceError, lovasz_theta, theta_value

import oracles


def odd_cycle_theta(n):
    return n * math.cos(math.pi / n) / (1 + math.cos(math.pi / n))


def test_theta_cycles():
    for n in (5, 7, 9):
        assert theta_value(cycle(n)) == pytest.approx(odd_cycle_theta(n), abs=1e-6)
    assert theta_value(cycle(6)) == pytest.approx(3, abs=1e-6)


def test_theta_empty_and_complete():
    for n in range(1, 11):
        assert theta_value(empty(n)) == pytest.approx(n, abs=1e-6)
        assert theta_value(complete(n)) == pytest.approx(1, abs=1e-6)


def test_theta_vertex_transitive_product_rule():
    G = hadamard_graph(4)
    assert theta_value(G) * theta_value(complement(G)) == pytest.approx(16, abs=1e-5)


def test_theta_multiplicative_on_c5():
    assert theta_value(strong_product(cycle(5), cycle(5))) == pytest.approx(5, abs=1e-5)


def test_certificates_are_feasible():
    G = cycle(7)
    res = lovasz_theta(G)
    assert res.check(G, tol=1e-8)
    assert res.gap <= 1e-7
    assert res.lower <= res.value <= res.upper


def test_theta_against_cvxpy():
    rng = random.Random(17)
    for _ in range(10):
        G = random_graph(rng.randint(2, 8), rng, 0.5)
        assert theta_value(G) == pytest.approx(oracles.theta_cvxpy(G), abs=1e-5)


def test_guard_and_tolerance_errors():
    with pytest.raises(ValueError):
        lovasz_theta(empty(5), guard=3)
    with pytest.raises(ValueError):
        lovasz_theta(empty(3), tol=0)


def test_unreachable_tolerance_raises():
    with pytest.raises(ThetaConvergenceError) as info:
        lovasz_theta(cycle(5), tol=1e-30, max_iter=30)
    assert info.value.gap > 0


def test_recovers_from_stalled_newton_step():
    # with the default shrink this instance once overshot μ into an
    # ill-conditioned region; ϑ = α = 3 here ({0, 4, 5} is independent)
    G = Graph(6, frozenset([(0, 1), (0, 2), (0, 3), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]))
    res = lovasz_theta(G)
    assert res.gap <= 1e-7
    assert abs(res.value - oracles.theta_cvxpy(G)) <= 1e-5
    assert res.check(G, 1e-7)
