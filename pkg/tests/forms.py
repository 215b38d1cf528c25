"""Generators of valid special forms and simple exact certificates for tests."""

import itertools
from fractions import Fraction

from ncextend.cohom import SpecialForm
from ncextend.exact import GR, Matrix
from ncextend.graph import Graph, random_graph
from ncextend.representations import OrthonormalRepCertificate, ProjectiveRepCertificate, SubspaceRepC
from ncextend.semiring import AElement

I = GR(0, 1)

# square matrices W with W* W = c I, stored as (W, c)
ROTATIONS = {
    1: [(Matrix.identity(1), 1), (Matrix.from_rows([[I]]), 1), (Matrix.from_rows([[2]]), 4)],
    2: [
        (Matrix.identity(2), 1),
        (Matrix.from_rows([[1, 1], [1, -1]]), 2),
        (Matrix.from_rows([[1, I], [I, 1]]), 2),
    ],
    3: [
        (Matrix.identity(3), 1),
        (Matrix.from_rows([[1, 2, 2], [2, 1, -2], [2, -2, 1]]), 9),
    ],
}


def _random_element(rng, max_terms, dims, max_n):
    k = rng.randint(1, min(max_terms, len(dims)))
    chosen = rng.sample(dims, k)
    return AElement(tuple((random_graph(rng.randint(1, max_n), rng, rng.random()), d) for d in chosen))


def random_form(rng, T=None, S=None, tries=200):
    """A valid special form for T ≤ S built from coordinate isometries.

    Each vertex h gets a target vertex g and an ordered coordinate subset;
    coordinate isometries for close images must be equal (giving U*U' = I)
    or disjoint (giving 0), and equal only when h and h' are close. A fixed
    scaled unitary per target term is applied on top.
    """
    for _ in range(tries):
        S_ = S or _random_element(rng, 3, [1, 2, 3], 3)
        T_ = T or _random_element(rng, 2, [d for d in (1, 2, 3) if d <= max(S_.dims)], 3)
        choice = _assign(rng, T_, S_)
        if choice is None:
            continue
        rots = [rng.choice(ROTATIONS[d]) for d in S_.dims]
        phi, mats, scales = [], [], []
        for h, (g, subset) in enumerate(choice):
            t, _, D = S_.vertex_table[g]
            W, c = rots[t]
            P = Matrix(D, len(subset), {(k, j): 1 for j, k in enumerate(subset)})
            phi.append(g)
            mats.append(W @ P)
            scales.append(Fraction(1, c))
        return T_, S_, SpecialForm(phi, mats, scales)
    raise RuntimeError("could not generate a form")


def _assign(rng, T, S):
    out = []
    for h in range(T.num_vertices):
        d = T.vertex_table[h][2]
        options = []
        for g in range(S.num_vertices):
            D = S.vertex_table[g][2]
            if D >= d:
                options += [(g, c) for c in itertools.combinations(range(D), d)]
        rng.shuffle(options)
        for g, subset in options:
            if all(_compatible(T, S, h, g, subset, h2, g2, s2) for h2, (g2, s2) in enumerate(out)):
                out.append((g, subset))
                break
        else:
            return None
    return out


def _compatible(T, S, h, g, subset, h2, g2, s2):
    if not S.close(g, g2):
        return True
    if T.close(h, h2):
        return subset == s2 or not set(subset) & set(s2)
    return not set(subset) & set(s2)


def clique_partition(G: Graph) -> list[int]:
    """Greedy partition into cliques; returns the class of every vertex."""
    cls, reps = [-1] * G.n, []
    for v in range(G.n):
        for k, members in enumerate(reps):
            if all(G.adjacent(v, u) for u in members):
                members.append(v)
                cls[v] = k
                break
        else:
            cls[v] = len(reps)
            reps.append([v])
    return cls


def _unit(k, i):
    return [1 if j == i else 0 for j in range(k)]


def theta_rep(G: Graph) -> OrthonormalRepCertificate:
    cls = clique_partition(G)
    k = max(cls) + 1
    return OrthonormalRepCertificate([_unit(k, c) for c in cls], [1] * k)


def subspace_rep(G: Graph, m: int = 1) -> SubspaceRepC:
    cls = clique_partition(G)
    k = max(cls) + 1
    mats = []
    for c in cls:
        mats.append(Matrix(m, k * m, {(i, c * m + i): 1 for i in range(m)}))
    return SubspaceRepC(k * m, m, mats)


def projective_rep_of_complement(G: Graph, m: int = 1) -> ProjectiveRepCertificate:
    cls = clique_partition(G)
    k = max(cls) + 1
    return ProjectiveRepCertificate(
        k * m, m, [Matrix(k * m, k * m, {(c * m + i, c * m + i): 1 for i in range(m)}) for c in cls]
    )
