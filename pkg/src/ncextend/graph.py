"""Finite simple graphs with positional vertex labels.

Vertices are ``0..n-1``. Every operation fixes its own index convention
(row-major products, offset unions), so two graphs are equal exactly when
their vertex counts and edge sets agree. No isomorphism is ever computed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

# Size guards (configurable defaults).
HADAMARD_GUARD = 24
HAMMING_PRIME_GUARD = 5


class GraphError(ValueError):
    pass


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on ``range(n)``.

    Edges are stored once as ``(i, j)`` with ``i < j``.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        edges = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"edge {e} out of range for {self.n} vertices")
            edges.add(_pair(i, j))
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an int bitmask."""
        nb = [0] * self.n
        for i, j in self.edges:
            nb[i] |= 1 << j
            nb[j] |= 1 << i
        return tuple(nb)

    def neighbors(self, v: int) -> list[int]:
        m = self.masks[v]
        return [u for u in range(self.n) if m >> u & 1]

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def adj_or_equal(self, u: int, v: int) -> bool:
        return u == v or bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return bin(self.masks[v]).count("1")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: list[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled by position in the list."""
        pos = {v: k for k, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            frozenset(
                (pos[i], pos[j]) if pos[i] < pos[j] else (pos[j], pos[i])
                for i, j in self.edges
                if i in pos and j in pos
            ),
        )

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, frozenset(_pair(perm[i], perm[j]) for i, j in self.edges))

    def to_json(self) -> dict:
        return {"vertices": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise GraphError("graph JSON needs 'vertices' and 'edges'")
        n = data["vertices"]
        if not isinstance(n, int) or n < 0:
            raise GraphError("'vertices' must be a nonnegative integer")
        seen = set()
        for e in data["edges"]:
            if not (isinstance(e, (list, tuple)) and len(e) == 2):
                raise GraphError(f"'edges' entry {e!r} is not a pair")
            i, j = e
            if not (isinstance(i, int) and isinstance(j, int)):
                raise GraphError(f"'edges' entry {e!r} has non-integer index")
            if i == j:
                raise GraphError(f"'edges' entry {e!r} is a loop")
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"'edges' entry {e!r} out of range")
            p = _pair(i, j)
            if p in seen:
                raise GraphError(f"'edges' entry {e!r} is a duplicate")
            seen.add(p)
        return cls(n, frozenset(seen))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


def complement(G: Graph) -> Graph:
    return Graph(
        G.n,
        frozenset(
            (i, j)
            for i, j in itertools.combinations(range(G.n), 2)
            if (i, j) not in G.edges
        ),
    )


def strong_product(G: Graph, H: Graph) -> Graph:
    """Strong product; vertex ``(g, h)`` has index ``g * H.n + h``."""
    m = H.n
    close_g = [(g, g2) for g in range(G.n) for g2 in range(G.n) if G.adj_or_equal(g, g2)]
    close_h = [(h, h2) for h in range(m) for h2 in range(m) if H.adj_or_equal(h, h2)]
    edges = set()
    for g, g2 in close_g:
        for h, h2 in close_h:
            a, b = g * m + h, g2 * m + h2
            if a < b:
                edges.add((a, b))
    return Graph(G.n * m, frozenset(edges))


def strong_power(G: Graph, n: int) -> Graph:
    if n < 1:
        raise GraphError("power must be at least 1")
    out = G
    for _ in range(n - 1):
        out = strong_product(out, G)
    return out


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """Disjoint union; vertices of ``H`` are shifted by ``G.n``."""
    off = G.n
    return Graph(G.n + H.n, G.edges | frozenset((i + off, j + off) for i, j in H.edges))


def complete(d: int) -> Graph:
    return Graph(d, frozenset(itertools.combinations(range(d), 2)))


def empty(d: int) -> Graph:
    return Graph(d, frozenset())


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, frozenset(_pair(i, (i + 1) % n) for i in range(n)))


def sign_vector(index: int, n: int) -> tuple[int, ...]:
    """Decode a Hadamard-graph vertex: bit ``i`` set means coordinate ``i`` is -1."""
    return tuple(-1 if index >> i & 1 else 1 for i in range(n))


def hadamard_graph(n: int, guard: int = HADAMARD_GUARD) -> Graph:
    """Graph on sign vectors in {-1, 1}^n, adjacent when orthogonal."""
    if n <= 0 or n % 4:
        raise GraphError(f"hadamard_graph needs a positive multiple of 4, got {n}")
    if n > guard:
        raise GraphError(f"n={n} exceeds size guard {guard}")
    # x.y = n - 2*popcount(x ^ y), so orthogonal iff the vectors differ in n/2 places.
    flips = [sum(1 << i for i in c) for c in itertools.combinations(range(n), n // 2)]
    edges = set()
    for x in range(1 << n):
        for f in flips:
            y = x ^ f
            if x < y:
                edges.add((x, y))
    return Graph(1 << n, frozenset(edges))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def hamming_weight_strings(p: int) -> list[int]:
    n = 4 * p - 1
    return [
        sum(1 << i for i in combo) for combo in itertools.combinations(range(n), 2 * p)
    ]


def hamming_weight_graph(p: int, guard: int = HAMMING_PRIME_GUARD) -> Graph:
    """Weight-2p strings of length 4p-1, adjacent at Hamming distance 2p.

    Vertices are listed in lexicographic order of their support sets.
    """
    if p % 2 == 0 or not is_prime(p):
        raise GraphError(f"hamming_weight_graph needs an odd prime, got {p}")
    if p > guard:
        raise GraphError(f"p={p} exceeds size guard {guard}")
    words = hamming_weight_strings(p)
    dist = 2 * p
    edges = set()
    for a in range(len(words)):
        wa = words[a]
        for b in range(a + 1, len(words)):
            if (wa ^ words[b]).bit_count() == dist:
                edges.add((a, b))
    return Graph(len(words), frozenset(edges))


def product_swap_permutation(a: int, b: int) -> list[int]:
    """Index map taking ``G ⊠ H`` (|G|=a, |H|=b) onto ``H ⊠ G``."""
    return [h * a + g for g in range(a) for h in range(b)]


def union_swap_permutation(a: int, b: int) -> list[int]:
    """Index map taking ``G ⊔ H`` (|G|=a, |H|=b) onto ``H ⊔ G``."""
    return [b + v for v in range(a)] + [v for v in range(b)]


def distributive_permutation(g: int, h: int, k: int) -> list[int]:
    """Index map taking ``G ⊠ (H ⊔ K)`` onto ``(G ⊠ H) ⊔ (G ⊠ K)``."""
    perm = []
    for x in range(g):
        for y in range(h + k):
            if y < h:
                perm.append(x * h + y)
            else:
                perm.append(g * h + x * k + (y - h))
    return perm


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labelled graph on ``n`` vertices, in order of the edge bitmask."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def random_graph(n: int, rng, p: float = 0.5) -> Graph:
    return Graph(
        n, frozenset(e for e in itertools.combinations(range(n), 2) if rng.random() < p)
    )
