import random
from fractions import Fraction

import numpy as np
import pytest

from ncextend.cohom import (
    KrausWitness,
    SpecialForm,
    WitnessError,
    disjoint_cliques,
    find_graph_cohomomorphism,
    flatten_form,
    is_graph_cohomomorphism,
    kraus_from_special_form,
    project_witness,
    truncate,
    verify_kraus_witness,
    verify_special_form,
    witness_from_cliques,
)
from ncextend.exact import GR, Matrix
from ncextend.graph import Graph, complete, cycle, disjoint_union, empty, hadamard_graph, random_graph, sign_vector
from ncextend.parameters import GuardError, cliques_of_size, independence_number
from ncextend.sdp import theta_value
from ncextend.semiring import AElement, evaluate

import forms


def single(G, d=1):
    return AElement.single(G, d)


# graph cohomomorphisms


def test_find_examples():
    assert find_graph_cohomomorphism(cycle(5), cycle(5)) == [0, 1, 2, 3, 4]
    psi = find_graph_cohomomorphism(empty(2), cycle(5))
    assert psi is not None and is_graph_cohomomorphism(empty(2), cycle(5), psi)
    assert find_graph_cohomomorphism(empty(3), cycle(5)) is None


def test_find_guard():
    with pytest.raises(GuardError):
        find_graph_cohomomorphism(empty(3), empty(3), guard=2)


def test_empty_graph_maps_iff_alpha_large_enough():
    rng = random.Random(7)
    for _ in range(25):
        G = random_graph(rng.randint(1, 8), rng, rng.random())
        a = independence_number(G)
        for d in range(1, G.n + 1):
            assert (find_graph_cohomomorphism(empty(d), G) is not None) == (a >= d)


def test_found_maps_are_valid_and_monotone():
    rng = random.Random(8)
    found = 0
    for _ in range(60):
        H = random_graph(rng.randint(1, 6), rng, rng.random())
        G = random_graph(rng.randint(1, 6), rng, rng.random())
        psi = find_graph_cohomomorphism(H, G)
        if psi is None:
            continue
        found += 1
        assert is_graph_cohomomorphism(H, G, psi)
        for alpha in (1, 2):
            assert independence_number(H) <= independence_number(G)
            assert evaluate(single(H), theta_value, alpha) <= evaluate(single(G), theta_value, alpha) + 1e-6
    assert found >= 10


# special forms


def two_vector_form(u1, u2):
    return SpecialForm([0, 0], [Matrix.column(u1), Matrix.column(u2)])


def test_special_form_examples():
    K1 = single(complete(1))
    assert verify_special_form(K1, K1, SpecialForm([0], [Matrix.identity(1)]))
    T, S = single(empty(2)), single(complete(1), 2)
    assert verify_special_form(T, S, two_vector_form([1, 0], [0, 1]))
    bad = verify_special_form(T, S, two_vector_form([1, 0], [1, 0]))
    assert not bad
    assert bad.where == (0, 1)
    assert "U_h* U_h' = 0" in bad.reason


def test_special_form_rejects_non_isometry():
    T, S = single(complete(1)), single(complete(1), 2)
    v = verify_special_form(T, S, SpecialForm([0], [Matrix.column([1, 1])]))
    assert not v and "isometry" in v.reason
    assert verify_special_form(T, S, SpecialForm([0], [Matrix.column([1, 1])], [Fraction(1, 2)]))


def test_special_form_scalar_clause():
    # close vertices with close images need U_h* U_h' = cI
    T, S = single(complete(2), 2), single(complete(1), 2)
    form = SpecialForm([0, 0], [Matrix.identity(2), Matrix.from_rows([[1, 0], [0, -1]])])
    v = verify_special_form(T, S, form)
    assert not v and "cI" in v.reason


def test_kraus_from_special_form_examples():
    K1 = single(complete(1))
    w = kraus_from_special_form(K1, K1, SpecialForm([0], [Matrix.identity(1)]))
    assert w.operators == [Matrix.identity(1)]
    T, S = single(empty(2)), single(complete(1), 2)
    w = kraus_from_special_form(T, S, two_vector_form([1, 0], [0, 1]))
    assert len(w.operators) == 2
    total = sum((E.adjoint() @ E for E in w.operators), Matrix.zeros(2, 2))
    assert total == Matrix.identity(2)
    assert verify_kraus_witness(T, S, w)
    with pytest.raises(WitnessError):
        kraus_from_special_form(T, S, two_vector_form([1, 0], [1, 0]))


def test_generated_forms_round_trip():
    rng = random.Random(2024)
    for _ in range(60):
        T, S, form = forms.random_form(rng)
        assert verify_special_form(T, S, form)
        w = kraus_from_special_form(T, S, form)
        assert verify_kraus_witness(T, S, w)


def test_broken_generated_forms_fail():
    rng = random.Random(99)
    rejected = 0
    for _ in range(40):
        T, S, form = forms.random_form(rng)
        # scale one isometry so it is no longer an isometry
        form.scales[0] = form.scales[0] * 4
        assert not verify_special_form(T, S, form)
        with pytest.raises(WitnessError):
            kraus_from_special_form(T, S, form)
        rejected += 1
    assert rejected == 40


# Kraus witnesses


def test_identity_witness_and_scaled_failure():
    S = AElement(((cycle(5), 1), (complete(2), 2)))
    n = S.ambient_dim
    assert verify_kraus_witness(S, S, KrausWitness(S, S, [Matrix.identity(n)]))
    v = verify_kraus_witness(S, S, KrausWitness(S, S, [Matrix.identity(n).scale(2)]))
    assert not v and "completeness" in v.reason


def test_containment_failure_names_indices():
    # (K̄_2, 1) ≤ (K̄_1 ... ) fails: mapping two non-adjacent vertices onto one vertex classically
    T, S = single(empty(2)), single(complete(1))
    E = [Matrix.unit(1, 2, 0, 0), Matrix.unit(1, 2, 0, 1)]
    v = verify_kraus_witness(T, S, KrausWitness(T, S, E))
    assert not v and "containment" in v.reason and len(v.where) == 3


def test_mixed_kraus_family_still_verifies():
    T, S = single(empty(2)), single(complete(1), 2)
    E1, E2 = kraus_from_special_form(T, S, two_vector_form([1, 0], [0, 1])).operators
    mixed = KrausWitness(T, S, [E1 + E2, E1 - E2], [Fraction(1, 2), Fraction(1, 2)])
    assert verify_kraus_witness(T, S, mixed)


def test_floating_mode():
    rng = random.Random(4)
    T, S, form = forms.random_form(rng)
    w = kraus_from_special_form(T, S, form)
    dense = w.dense()
    # random real rotation of the Kraus family keeps it a witness
    theta = 0.3
    if len(dense) >= 2:
        a, b = dense[0], dense[1]
        dense[0], dense[1] = np.cos(theta) * a + np.sin(theta) * b, -np.sin(theta) * a + np.cos(theta) * b
    fw = KrausWitness(T, S, dense, mode="floating")
    assert verify_kraus_witness(T, S, fw)
    fw_bad = KrausWitness(T, S, [1.001 * E for E in dense], mode="floating")
    assert not verify_kraus_witness(T, S, fw_bad)
    back = KrausWitness.from_json(fw.to_json())
    assert verify_kraus_witness(T, S, back)


def test_witness_json_roundtrip():
    T, S = single(empty(2)), single(complete(1), 2)
    w = kraus_from_special_form(T, S, two_vector_form([1, GR(0, 1)], [1, GR(0, -1)]).__class__(
        [0, 0], [Matrix.column([1, GR(0, 1)]), Matrix.column([1, GR(0, -1)])], [Fraction(1, 2)] * 2))
    back = KrausWitness.from_json(w.to_json())
    assert verify_kraus_witness(T, S, back)


# projection


def test_project_examples():
    S = AElement(((complete(1), 1), (complete(1), 2)))
    T = single(complete(1), 2)
    w = KrausWitness(T, S, [Matrix.identity(2).embed(3, 2, 1, 0)])
    assert verify_kraus_witness(T, S, w)
    p = project_witness(T, S, w, 2)
    assert p.target == single(complete(1), 2)
    assert p.operators == [Matrix.identity(2)]
    assert verify_kraus_witness(p.source, p.target, p)
    # q = 1 and targets with only large terms leave the operators unchanged
    K = single(complete(1))
    w1 = KrausWitness(K, K, [Matrix.identity(1)])
    assert project_witness(K, K, w1, 1).operators == w1.operators


def test_project_generated_witnesses():
    rng = random.Random(31)
    count = 0
    for _ in range(40):
        q = rng.choice([1, 2, 3])
        while True:
            H = random_graph(rng.randint(1, 3), rng, rng.random())
            S = AElement(tuple((random_graph(rng.randint(1, 3), rng, rng.random()), d) for d in (1, 2, 3)))
            try:
                T, S, form = forms.random_form(rng, T=single(H, q), S=S, tries=5)
                break
            except RuntimeError:
                continue
        w = kraus_from_special_form(T, S, form)
        p = project_witness(T, S, w, q)
        assert p.target == truncate(S, q)
        assert verify_kraus_witness(T, p.target, p)
        count += 1
    assert count == 40


def test_project_rejects_invalid_input():
    S = single(complete(1), 2)
    T = single(complete(1), 2)
    with pytest.raises(WitnessError):
        project_witness(T, S, KrausWitness(T, S, [Matrix.identity(2).scale(2)]), 2)


# disjoint cliques


def packing_oracle(G, d):
    cliques = cliques_of_size(G, d)
    best = 0

    def rec(k, used, count):
        nonlocal best
        best = max(best, count)
        for j in range(k, len(cliques)):
            if not used & set(cliques[j]):
                rec(j + 1, used | set(cliques[j]), count + 1)

    rec(0, set(), 0)
    return best


def test_disjoint_cliques_examples():
    assert disjoint_cliques(complete(4), 4) == [(0, 1, 2, 3)]
    assert len(disjoint_cliques(disjoint_union(complete(3), complete(3)), 3)) == 2
    omega = disjoint_cliques(hadamard_graph(4), 4)
    assert len(omega) == packing_oracle(hadamard_graph(4), 4) == 4


def test_disjoint_cliques_against_oracle():
    rng = random.Random(12)
    for _ in range(25):
        G = random_graph(rng.randint(2, 8), rng, 0.6)
        d = rng.randint(2, 3)
        got = disjoint_cliques(G, d)
        assert len(got) == packing_oracle(G, d)
        seen = set()
        for C in got:
            assert not seen & set(C)
            seen |= set(C)


def test_witness_from_cliques_k2():
    w = witness_from_cliques(complete(2), 2, [[1, 0], [0, 1]], [(0, 1)])
    assert w.source == single(empty(2)) and w.target == single(complete(2), 2)
    assert verify_kraus_witness(w.source, w.target, w)


def test_witness_from_cliques_omega4():
    G = hadamard_graph(4)
    cliques = disjoint_cliques(G, 4)
    vecs = [list(sign_vector(v, 4)) for v in range(16)]
    w = witness_from_cliques(G, 4, vecs, cliques)
    assert w.mode == "exact"
    assert set(w.scales) == {Fraction(1, 4)}
    assert verify_kraus_witness(w.source, w.target, w)
    # M d ≤ ϑ(G) d
    assert len(cliques) * 4 <= theta_value(G) * 4 + 1e-6


def test_witness_from_cliques_errors():
    with pytest.raises(WitnessError, match="overlaps"):
        path = Graph(3, frozenset({(0, 1), (1, 2)}))
        witness_from_cliques(path, 2, [[1, 0], [0, 1], [1, 0]], [(0, 1), (1, 2)])
    with pytest.raises(WitnessError, match="representation"):
        witness_from_cliques(complete(2), 2, [[1, 0], [1, 1]], [(0, 1)])
    with pytest.raises(WitnessError, match="not a clique"):
        witness_from_cliques(empty(2), 2, [[1, 0], [1, 1]], [(0, 1)])


def test_flatten_form():
    rng = random.Random(5)
    for _ in range(10):
        T, S, form = forms.random_form(rng)
        H, flat = flatten_form(T, S, form)
        assert H.n == sum(G.n * d for G, d in T.terms)
        assert verify_special_form(single(H), S, flat)
