import itertools
import json

import pytest
from hypothesis import given

from ncextend.graph import (
    Graph,
    GraphError,
    all_graphs,
    complement,
    complete,
    cycle,
    disjoint_union,
    distributive_permutation,
    empty,
    hadamard_graph,
    hamming_weight_graph,
    hamming_weight_strings,
    product_swap_permutation,
    sign_vector,
    strong_power,
    strong_product,
    union_swap_permutation,
)

from conftest import graphs_strategy


def test_cycle_and_complement():
    C5 = cycle(5)
    assert C5.num_edges == 5
    Cc = complement(C5)
    assert Cc.num_edges == 5
    assert all(Cc.degree(v) == 2 for v in range(5))


def test_strong_product_small_cases():
    assert strong_product(complete(2), complete(2)) == complete(4)
    assert strong_product(empty(2), empty(3)) == empty(6)
    assert strong_product(cycle(5), complete(1)) == cycle(5)
    P = strong_product(cycle(5), cycle(5))
    assert P.n == 25
    # every vertex is close to 3 x 3 vertices including itself
    assert all(P.degree(v) == 8 for v in range(25))
    assert P.num_edges == 100


def test_strong_product_index_convention():
    G, H = complete(2), empty(3)
    P = strong_product(G, H)
    # (g, h) -> g*3 + h; (0,1) ~ (1,1) because g adjacent and h equal
    assert P.adjacent(0 * 3 + 1, 1 * 3 + 1)
    assert not P.adjacent(0 * 3 + 1, 1 * 3 + 2)


def test_strong_power():
    assert strong_power(cycle(5), 1) == cycle(5)
    assert strong_power(cycle(5), 2) == strong_product(cycle(5), cycle(5))
    with pytest.raises(GraphError):
        strong_power(cycle(5), 0)


def test_disjoint_union_offsets():
    U = disjoint_union(complete(2), cycle(3))
    assert U.n == 5
    assert U.sorted_edges() == [(0, 1), (2, 3), (2, 4), (3, 4)]


def test_hadamard_graph_against_dot_products():
    G = hadamard_graph(4)
    assert G.n == 16 and G.num_edges == 48
    for x, y in itertools.combinations(range(16), 2):
        dot = sum(a * b for a, b in zip(sign_vector(x, 4), sign_vector(y, 4)))
        assert G.adjacent(x, y) == (dot == 0)


def test_hadamard_graph_rejects_bad_n():
    with pytest.raises(GraphError):
        hadamard_graph(6)
    with pytest.raises(GraphError):
        hadamard_graph(28)


def test_hamming_weight_graph_p3():
    G = hamming_weight_graph(3)
    words = hamming_weight_strings(3)
    assert G.n == 462 == len(words)
    for a, b in [(0, 1), (0, 461), (17, 300), (5, 6)]:
        assert G.adjacent(a, b) == ((words[a] ^ words[b]).bit_count() == 6)
    with pytest.raises(GraphError):
        hamming_weight_graph(9)


def test_json_roundtrip_and_errors():
    G = cycle(5)
    assert Graph.from_json(json.loads(G.dumps())) == G
    with pytest.raises(GraphError, match="duplicate"):
        Graph.from_json({"vertices": 3, "edges": [[0, 1], [1, 0]]})
    with pytest.raises(GraphError, match="loop"):
        Graph.from_json({"vertices": 3, "edges": [[1, 1]]})
    with pytest.raises(GraphError, match="out of range"):
        Graph.from_json({"vertices": 3, "edges": [[0, 3]]})
    with pytest.raises(GraphError, match="vertices"):
        Graph.from_json({"edges": []})


def test_all_graphs_count():
    assert sum(1 for _ in all_graphs(4)) == 2 ** 6


@given(graphs_strategy())
def test_complement_is_involution(G):
    assert complement(complement(G)) == G


@given(graphs_strategy(4), graphs_strategy(4))
def test_product_commutes_up_to_swap(G, H):
    swapped = strong_product(G, H).relabel(product_swap_permutation(G.n, H.n))
    assert swapped == strong_product(H, G)


@given(graphs_strategy(4), graphs_strategy(4))
def test_union_commutes_up_to_swap(G, H):
    swapped = disjoint_union(G, H).relabel(union_swap_permutation(G.n, H.n))
    assert swapped == disjoint_union(H, G)


@given(graphs_strategy(3), graphs_strategy(3), graphs_strategy(3))
def test_product_distributes_over_union(G, H, K):
    lhs = strong_product(G, disjoint_union(H, K)).relabel(distributive_permutation(G.n, H.n, K.n))
    assert lhs == disjoint_union(strong_product(G, H), strong_product(G, K))


@given(graphs_strategy(3), graphs_strategy(3), graphs_strategy(3))
def test_product_is_associative(G, H, K):
    assert strong_product(strong_product(G, H), K) == strong_product(G, strong_product(H, K))
