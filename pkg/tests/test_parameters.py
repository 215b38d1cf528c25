import itertools
import math
import random
from fractions import Fraction

import pytest

from ncextend.graph import complement, complete, cycle, empty, hadamard_graph, random_graph, strong_product
from ncextend.parameters import (
    GuardError,
    capacity_lower_bound,
    clique_cover_fractional,
    clique_cover_lp,
    cliques_of_size,
    fractional_chromatic_number,
    independence_number,
    max_clique,
    max_independent_set,
    maximal_cliques,
    shannon_capacity_lb,
)
from ncextend.simplex import LPError, maximize

import oracles


def test_alpha_examples():
    assert independence_number(cycle(5)) == 2
    assert independence_number(empty(7)) == 7
    assert independence_number(complete(7)) == 1
    assert independence_number(strong_product(cycle(5), cycle(5))) == 5
    assert independence_number(hadamard_graph(4)) == 4


def test_independent_set_is_independent():
    G = strong_product(cycle(5), cycle(5))
    S = max_independent_set(G)
    assert all(not G.adjacent(a, b) for a, b in itertools.combinations(S, 2))


def test_alpha_against_bruteforce_and_networkx():
    rng = random.Random(3)
    for _ in range(40):
        G = random_graph(rng.randint(1, 9), rng, rng.random())
        a = independence_number(G)
        assert a == oracles.alpha_bruteforce(G) == oracles.alpha_networkx(G)


def test_alpha_guard():
    with pytest.raises(GuardError):
        independence_number(empty(10), guard=5)


def test_capacity_lower_bound():
    b = capacity_lower_bound(cycle(5), 2)
    assert b.alpha == 5
    assert shannon_capacity_lb(cycle(5), 2) == pytest.approx(math.sqrt(5))
    with pytest.raises(GuardError):
        capacity_lower_bound(cycle(5), 3, guard=100)


def test_maximal_cliques_against_networkx():
    rng = random.Random(5)
    for _ in range(30):
        G = random_graph(rng.randint(1, 9), rng, rng.random())
        ours = maximal_cliques(G)
        theirs = sorted(tuple(sorted(c)) for c in __import__("networkx").find_cliques(oracles.to_nx(G)))
        assert ours == theirs


def test_max_clique_on_hadamard_complement():
    assert len(max_clique(complement(hadamard_graph(4)))) == 4
    assert len(maximal_cliques(complement(hadamard_graph(4)))) == 16


def test_cliques_of_size():
    assert cliques_of_size(complete(4), 3) == list(itertools.combinations(range(4), 3))
    assert len(cliques_of_size(hadamard_graph(4), 4)) == 32
    assert cliques_of_size(cycle(5), 3) == []


def test_fcc_examples():
    assert clique_cover_fractional(cycle(5)) == Fraction(5, 2)
    for n in range(1, 8):
        assert clique_cover_fractional(empty(n)) == n
        assert clique_cover_fractional(complete(n)) == 1
    assert fractional_chromatic_number(hadamard_graph(4)) == 4


def test_fcc_certificate_checks():
    G = strong_product(cycle(5), complete(2))
    lp = clique_cover_lp(G)
    assert lp.check(G)
    lp.weights[0] = Fraction(-1)
    assert not lp.check(G)


def test_fcc_against_scipy():
    rng = random.Random(11)
    for _ in range(30):
        G = random_graph(rng.randint(1, 9), rng, rng.random())
        assert float(clique_cover_fractional(G)) == pytest.approx(oracles.fcc_scipy(G), abs=1e-7)


def test_simplex_small_lp():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6
    res = maximize([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert res.value == Fraction(14, 5)
    assert res.primal == [Fraction(8, 5), Fraction(6, 5)]
    assert sum(d * b for d, b in zip(res.dual, [4, 6])) == res.value


def test_simplex_errors():
    with pytest.raises(LPError, match="unbounded"):
        maximize([1, 0], [[0, 1]], [1])
    with pytest.raises(LPError):
        maximize([1], [[1]], [-1])
