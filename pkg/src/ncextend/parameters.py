"""Exact combinatorial graph parameters.

Independence number (branch and bound), maximal cliques (Bron–Kerbosch with
pivoting), the fractional clique cover number (exact LP) and the strong
power lower bound on the Shannon capacity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, complement, strong_power
from .simplex import maximize

ALPHA_GUARD = 64
CLIQUE_GUARD = 200_000


class GuardError(ValueError):
    """Input exceeds a configured size guard."""


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _color_sort(P: int, masks) -> tuple[list[int], list[int]]:
    """Greedy colouring of P; vertices ordered by colour class with their colour number."""
    order, colors = [], []
    U = P
    k = 0
    while U:
        k += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~masks[v] & ~low
            U &= ~low
            order.append(v)
            colors.append(k)
    return order, colors


def max_clique(G: Graph) -> list[int]:
    """A maximum clique via branch and bound with greedy-colouring bounds.

    Deterministic: among maximum cliques, the first one found is returned.
    """
    masks = G.masks
    best = [0, 0]  # size, mask

    def expand(size, R, P):
        order, colors = _color_sort(P, masks)
        for idx in range(len(order) - 1, -1, -1):
            if size + colors[idx] <= best[0]:
                return
            v = order[idx]
            bit = 1 << v
            newP = P & masks[v]
            if newP:
                expand(size + 1, R | bit, newP)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, R | bit
            P &= ~bit

    if G.n:
        expand(0, 0, (1 << G.n) - 1)
    return _bits(best[1])


def max_independent_set(G: Graph, guard: int = ALPHA_GUARD) -> list[int]:
    if G.n > guard:
        raise GuardError(f"{G.n} vertices exceeds guard {guard}")
    return max_clique(complement(G))


def independence_number(G: Graph, guard: int = ALPHA_GUARD) -> int:
    return len(max_independent_set(G, guard))


def shannon_capacity_lb(G: Graph, n: int, guard: int = ALPHA_GUARD) -> float:
    """α(G^{⊠n})^{1/n}, a lower bound on Θ(G)."""
    return capacity_lower_bound(G, n, guard).value


@dataclass(frozen=True)
class CapacityBound:
    alpha: int
    n: int

    @property
    def value(self) -> float:
        return self.alpha ** (1.0 / self.n)


def capacity_lower_bound(G: Graph, n: int, guard: int = ALPHA_GUARD) -> CapacityBound:
    if n < 1:
        raise ValueError("n must be at least 1")
    if G.n ** n > guard:
        raise GuardError(f"|V|^n = {G.n ** n} exceeds guard {guard}")
    return CapacityBound(independence_number(strong_power(G, n), guard), n)


def maximal_cliques(G: Graph, guard: int = CLIQUE_GUARD) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron–Kerbosch with pivoting), lexicographically sorted."""
    masks = G.masks
    out: list[tuple[int, ...]] = []

    def bk(R, P, X):
        if not P and not X:
            out.append(tuple(_bits(R)))
            if len(out) > guard:
                raise GuardError(f"more than {guard} maximal cliques")
            return
        PX = P | X
        # pivot with the most neighbours in P
        u = max(_bits(PX), key=lambda w: ((P & masks[w]).bit_count(), -w))
        for v in _bits(P & ~masks[u]):
            bit = 1 << v
            bk(R | bit, P & masks[v], X & masks[v])
            P &= ~bit
            X |= bit

    if G.n:
        bk(0, (1 << G.n) - 1, 0)
    return sorted(out)


def cliques_of_size(G: Graph, d: int, guard: int = CLIQUE_GUARD) -> list[tuple[int, ...]]:
    """All d-cliques in lexicographic order."""
    masks = G.masks
    out = []

    def rec(clique, cand):
        if len(clique) == d:
            out.append(tuple(clique))
            if len(out) > guard:
                raise GuardError(f"more than {guard} cliques of size {d}")
            return
        for v in _bits(cand):
            clique.append(v)
            # only larger vertices, to list each clique once
            rec(clique, cand & masks[v] & ~((1 << (v + 1)) - 1))
            clique.pop()

    if d >= 1:
        rec([], (1 << G.n) - 1)
    return out


@dataclass
class CliqueCoverLP:
    """Optimal fractional clique cover with its dual fractional independent set."""

    value: Fraction
    cliques: list[tuple[int, ...]]
    weights: list[Fraction]      # x_C per maximal clique
    vertex_weights: list[Fraction]  # dual y_v

    def check(self, G: Graph) -> bool:
        """Exact primal/dual feasibility and equal objectives."""
        cover = [Fraction(0)] * G.n
        for C, x in zip(self.cliques, self.weights):
            if x < 0:
                return False
            for v in C:
                cover[v] += x
        if any(c < 1 for c in cover):
            return False
        if any(y < 0 for y in self.vertex_weights):
            return False
        for C in self.cliques:
            if sum(self.vertex_weights[v] for v in C) > 1:
                return False
        return sum(self.weights) == self.value == sum(self.vertex_weights)


def clique_cover_lp(G: Graph, guard: int = CLIQUE_GUARD) -> CliqueCoverLP:
    """min Σ x_C s.t. every vertex covered by weight ≥ 1, over maximal cliques.

    Solved through its dual (fractional independent set), whose slack basis is
    feasible; the covering weights come from the final tableau.
    """
    if G.n == 0:
        return CliqueCoverLP(Fraction(0), [], [], [])
    cliques = maximal_cliques(G, guard)
    A = [[1 if v in set(C) else 0 for v in range(G.n)] for C in cliques]
    res = maximize([1] * G.n, A, [1] * len(cliques))
    out = CliqueCoverLP(res.value, cliques, res.dual, res.primal)
    if not out.check(G):
        raise RuntimeError("internal error: LP certificate failed exact check")
    return out


def clique_cover_fractional(G: Graph, guard: int = CLIQUE_GUARD) -> Fraction:
    return clique_cover_lp(G, guard).value


def fractional_chromatic_number(G: Graph, guard: int = CLIQUE_GUARD) -> Fraction:
    return clique_cover_fractional(complement(G), guard)
