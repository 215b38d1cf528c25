"""Formal sums ⊕_d G_d ⊗ Q_d and the functionals evaluated on them.

An :class:`AElement` is kept in normal form: one term per dimension ``d``,
dimensions strictly increasing, no empty graphs. Adding or multiplying
merges like dimensions by disjoint union in encounter order.

All logarithms are base 2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from numbers import Rational
from typing import Callable, Mapping, Sequence

import numpy as np

from .exact import format_rational, parse_rational
from .graph import Graph, disjoint_union, strong_product
from .ncgraph import NcGraph, direct_sum_all, from_graph, quantum_ideal, tensor

TYPEGRAPH_GUARD = 5000


class SemiringError(ValueError):
    pass


def _normalize(terms) -> tuple[tuple[Graph, int], ...]:
    merged: dict[int, Graph] = {}
    for G, d in terms:
        if d < 1:
            raise SemiringError(f"term dimension must be >= 1, got {d}")
        if G.n == 0:
            continue
        merged[d] = disjoint_union(merged[d], G) if d in merged else G
    return tuple((merged[d], d) for d in sorted(merged))


@dataclass(frozen=True)
class AElement:
    """⊕_d graphnc(G_d) ⊗ Q_d as a tuple of ``(G_d, d)`` pairs."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalize(self.terms))

    @classmethod
    def single(cls, G: Graph, d: int = 1) -> "AElement":
        return cls(((G, d),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def dims(self) -> list[int]:
        return [d for _, d in self.terms]

    def graph(self, d: int) -> Graph | None:
        for G, e in self.terms:
            if e == d:
                return G
        return None

    # vertex bookkeeping over the disjoint union of the term vertex sets
    @property
    def num_vertices(self) -> int:
        return sum(G.n for G, _ in self.terms)

    @cached_property
    def vertex_table(self) -> list[tuple[int, int, int]]:
        """For each global vertex: ``(term_index, local_vertex, dim)``."""
        return [(t, v, d) for t, (G, d) in enumerate(self.terms) for v in range(G.n)]

    def ambient_offsets(self) -> list[int]:
        """Start of each term block ``C^{V(G_d)} ⊗ C^d`` in the ambient space."""
        offs, o = [], 0
        for G, d in self.terms:
            offs.append(o)
            o += G.n * d
        return offs

    @property
    def ambient_dim(self) -> int:
        return sum(G.n * d for G, d in self.terms)

    def close(self, a: int, b: int) -> bool:
        """Adjacent-or-equal on global vertices; only within one term."""
        ta, va, _ = self.vertex_table[a]
        tb, vb, _ = self.vertex_table[b]
        return ta == tb and self.terms[ta][0].adj_or_equal(va, vb)

    def to_json(self) -> dict:
        return {"terms": [{"graph": G.to_json(), "dim": d} for G, d in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "AElement":
        if "terms" not in data:
            raise SemiringError("AElement JSON needs 'terms'")
        terms = []
        for k, t in enumerate(data["terms"]):
            if "graph" not in t or "dim" not in t:
                raise SemiringError(f"term {k} needs 'graph' and 'dim'")
            d = t["dim"]
            if not isinstance(d, int) or d < 1:
                raise SemiringError(f"term {k} 'dim' must be a positive integer")
            terms.append((Graph.from_json(t["graph"]), d))
        return cls(tuple(terms))

    def __repr__(self):
        inner = " ⊕ ".join(f"({G!r}, {d})" for G, d in self.terms) or "0"
        return f"AElement[{inner}]"


def a_add(S: AElement, T: AElement) -> AElement:
    return AElement(S.terms + T.terms)


def a_mul(S: AElement, T: AElement) -> AElement:
    return AElement(
        tuple((strong_product(G, H), d * e) for G, d in S.terms for H, e in T.terms)
    )


def to_ncgraph(S: AElement) -> NcGraph:
    """⊕_d from_graph(G_d) ⊗ Q_d with one block per term (labelled by d)."""
    if S.is_zero:
        raise SemiringError("the zero element has no operator-space realization")
    parts = [tensor(from_graph(G), quantum_ideal(d)) for G, d in S.terms]
    return direct_sum_all(parts, labels=S.dims)


def evaluate(S: AElement, f: Callable[[Graph], object], alpha=1):
    """Σ_d f(G_d) d^α.

    Exact (int/Fraction) when ``f`` returns exact rationals and ``α`` is an
    integer; floating otherwise.
    """
    if alpha < 1:
        raise SemiringError("exponent must be at least 1")
    integral = isinstance(alpha, int) or (isinstance(alpha, Fraction) and alpha.denominator == 1)
    total = 0
    for G, d in S.terms:
        v = f(G)
        if integral and isinstance(v, (int, Rational)):
            total = total + Fraction(v) * d ** int(alpha)
        else:
            total = total + float(v) * float(d) ** float(alpha)
    return total


@dataclass(frozen=True)
class Distribution:
    """Exact probability weights, indexed by position."""

    weights: tuple

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        if any(x < 0 for x in w):
            raise SemiringError("negative probability weight")
        if sum(w) != 1:
            raise SemiringError(f"weights sum to {sum(w)}, not 1")
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, k):
        return self.weights[k]

    @property
    def support(self) -> list[int]:
        return [k for k, w in enumerate(self.weights) if w]

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    @classmethod
    def point(cls, n: int, k: int) -> "Distribution":
        return cls(tuple(Fraction(int(i == k)) for i in range(n)))

    def to_json(self) -> list[str]:
        return [format_rational(w) for w in self.weights]

    @classmethod
    def from_json(cls, data) -> "Distribution":
        if isinstance(data, dict):
            data = data.get("weights")
        if not isinstance(data, list):
            raise SemiringError("distribution JSON must be a list of 'num/den' strings")
        return cls(tuple(parse_rational(x) for x in data))


def entropy(probs: Sequence) -> float:
    """Shannon entropy in bits."""
    return -sum(float(p) * math.log2(float(p)) for p in probs if p > 0)


def marginal_on_dims(S: AElement, Q: Distribution) -> dict[int, Fraction]:
    """π_*(Q): total weight of each term, keyed by dimension."""
    if len(Q) != S.num_vertices:
        raise SemiringError(f"distribution has {len(Q)} entries, element has {S.num_vertices} vertices")
    out, k = {}, 0
    for G, d in S.terms:
        out[d] = sum(Q.weights[k : k + G.n], Fraction(0))
        k += G.n
    return out


def conditional_on_term(S: AElement, Q: Distribution, d: int) -> Distribution:
    """Q_d: Q restricted to the vertices of the d-term and renormalized."""
    k = 0
    for G, e in S.terms:
        if e == d:
            w = Q.weights[k : k + G.n]
            tot = sum(w, Fraction(0))
            if not tot:
                raise SemiringError(f"term d={d} has zero weight")
            return Distribution(tuple(x / tot for x in w))
        k += G.n
    raise SemiringError(f"no term with d={d}")


@dataclass(frozen=True)
class RefinementTerms:
    """The affine pieces of log f_α(S, Q): ``entropy + base + α * log_dim``."""

    entropy: float
    base: object
    log_dim: float

    def value(self, alpha) -> float:
        return self.entropy + float(self.base) + float(alpha) * self.log_dim


def refinement_terms(S: AElement, Q: Distribution, base_log_values: Mapping[int, object]) -> RefinementTerms:
    pi = marginal_on_dims(S, Q)
    base = 0
    log_dim = 0.0
    for d, w in pi.items():
        if not w:
            continue
        if d not in base_log_values:
            raise SemiringError(f"missing base log-value for supported term d={d}")
        bv = base_log_values[d]
        base = base + (w * bv if isinstance(bv, (int, Rational)) else float(w) * float(bv))
        log_dim += float(w) * math.log2(d)
    return RefinementTerms(entropy(pi.values()), base, log_dim)


def refinement_value(S: AElement, Q: Distribution, base_log_values: Mapping[int, object], alpha) -> float:
    """H(π_*Q) + Σ_d π_*Q(d) [log f(G_d, Q_d) + α log d]."""
    if alpha < 1:
        raise SemiringError("exponent must be at least 1")
    return refinement_terms(S, Q, base_log_values).value(alpha)


@dataclass(frozen=True)
class RefinementFunctional:
    """A base log-oracle ``(G, Q) -> log f(G, Q)`` paired with an exponent."""

    name: str
    log_oracle: Callable[[Graph, Distribution], object]
    exponent: object = 1

    def __post_init__(self):
        if self.exponent < 1:
            raise SemiringError("exponent must be at least 1")

    def base_values(self, S: AElement, Q: Distribution) -> dict[int, object]:
        pi = marginal_on_dims(S, Q)
        return {
            d: self.log_oracle(S.graph(d), conditional_on_term(S, Q, d))
            for d, w in pi.items()
            if w
        }

    def terms(self, S: AElement, Q: Distribution) -> RefinementTerms:
        return refinement_terms(S, Q, self.base_values(S, Q))

    def value(self, S: AElement, Q: Distribution) -> float:
        return self.terms(S, Q).value(self.exponent)


def combine_refinements(lam, F: RefinementFunctional, G: RefinementFunctional) -> RefinementFunctional:
    """Pointwise convex combination of log-oracles and exponents."""
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise SemiringError("weight must lie in [0, 1]")
    if lam == 1:
        return F
    if lam == 0:
        return G

    def oracle(graph, dist):
        a, b = F.log_oracle(graph, dist), G.log_oracle(graph, dist)
        if isinstance(a, (int, Rational)) and isinstance(b, (int, Rational)):
            return lam * a + (1 - lam) * b
        return float(lam) * float(a) + float(1 - lam) * float(b)

    if isinstance(F.exponent, (int, Rational)) and isinstance(G.exponent, (int, Rational)):
        gamma = lam * F.exponent + (1 - lam) * G.exponent
    else:
        gamma = float(lam) * F.exponent + float(1 - lam) * G.exponent
    return RefinementFunctional(f"{lam}*{F.name}+{1 - lam}*{G.name}", oracle, gamma)


def grid_maximize(S: AElement, base_log_values: Mapping[int, object], alpha, step: Fraction = Fraction(1, 1000)):
    """Maximize the refinement formula over grid distributions of π_*Q.

    The formula depends on Q only through π_*Q and is separable in its
    coordinates, so the maximum over the lattice {k/N} of the simplex is an
    exact max-plus convolution. Returns ``(value, weights)`` with the
    first maximizer found.
    """
    N = Fraction(1) / Fraction(step)
    if N.denominator != 1:
        raise SemiringError("step must be 1/N")
    N = int(N)
    dims = S.dims
    k = np.arange(N + 1)
    q = k / N
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(k > 0, -q * np.log2(np.where(k > 0, q, 1.0)), 0.0)
    tables = [plogp + q * (float(base_log_values[d]) + float(alpha) * math.log2(d)) for d in dims]
    best = tables[0].copy()
    choices = []
    for tab in tables[1:]:
        # new[m] = max_j best[m - j] + tab[j]
        cand = np.full((N + 1, N + 1), -np.inf)
        for j in range(N + 1):
            cand[j:, j] = best[: N + 1 - j] + tab[j]
        arg = np.argmax(cand, axis=1)
        choices.append(arg)
        best = cand[np.arange(N + 1), arg]
    # backtrack from total mass N
    counts = []
    m = N
    for arg in reversed(choices):
        j = int(arg[m])
        counts.append(j)
        m -= j
    counts.append(m)
    counts.reverse()
    return float(best[N]), tuple(Fraction(c, N) for c in counts)


def grid_maximize_bruteforce(S: AElement, base_log_values, alpha, N: int):
    """Enumerate every lattice point of the simplex (oracle for small N)."""
    best, arg = -math.inf, None
    r = len(S.dims)
    for counts in compositions(N, r):
        w = [Fraction(c, N) for c in counts]
        val = entropy(w) + sum(
            float(x) * (float(base_log_values[d]) + float(alpha) * math.log2(d))
            for x, d in zip(w, S.dims)
        )
        if val > best + 1e-15:
            best, arg = val, tuple(w)
    return best, arg


def compositions(n: int, r: int):
    """Tuples of r nonnegative ints summing to n, first coordinate descending."""
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, r - 1):
            yield (first,) + rest


def type_distributions(n: int, r: int) -> list[Distribution]:
    """All distributions on [r] with denominators dividing n."""
    if n < 1 or r < 1:
        raise SemiringError("n and r must be positive")
    return [Distribution(tuple(Fraction(c, n) for c in comp)) for comp in compositions(n, r)]


def type_class(alphabet: int, n: int, Qn: Distribution, guard: int = TYPEGRAPH_GUARD) -> list[tuple[int, ...]]:
    """Sequences in range(alphabet)^n with empirical distribution Qn, lexicographic."""
    if len(Qn) != alphabet:
        raise SemiringError("distribution length does not match the alphabet")
    counts = []
    for w in Qn.weights:
        c = w * n
        if c.denominator != 1:
            raise SemiringError(f"weight {w} is not a multiple of 1/{n}")
        counts.append(int(c))
    size = math.factorial(n)
    for c in counts:
        size //= math.factorial(c)
    if size > guard:
        raise SemiringError(f"type class has {size} sequences, above guard {guard}")
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(alphabet):
            if remaining[v]:
                remaining[v] -= 1
                prefix.append(v)
                rec(prefix, remaining)
                prefix.pop()
                remaining[v] += 1

    rec([], counts)
    return out


def typegraph(G: Graph, n: int, Qn: Distribution, guard: int = TYPEGRAPH_GUARD) -> Graph:
    """Subgraph of G^{⊠n} induced on the type class of Qn."""
    seqs = type_class(G.n, n, Qn, guard)
    edges = set()
    for a, b in itertools.combinations(range(len(seqs)), 2):
        sa, sb = seqs[a], seqs[b]
        if all(G.adj_or_equal(x, y) for x, y in zip(sa, sb)):
            edges.add((a, b))
    return Graph(len(seqs), frozenset(edges))


def estimate_log_refinement(f: Callable[[Graph], object], G: Graph, n: int, Qn: Distribution) -> float:
    """(1/n) log f(typegraph(G, n, Qn)): a finite-n estimate of log f(G, Q).

    No convergence guarantee; the limit is not computed.
    """
    return math.log2(float(f(typegraph(G, n, Qn)))) / n
