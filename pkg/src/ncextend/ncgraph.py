"""Noncommutative graphs: self-adjoint, unital subspaces of square matrices.

Everything here is exact over Q(i). A subspace is stored by its reduced
row-echelon basis (pivot = first nonzero entry of the row-major
vectorization), which makes bases canonical and membership a linear
reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exact import EchelonSpace, Matrix
from .graph import Graph


class NcGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    """A diagonal block ``[offset, offset + size)`` of the ambient space."""

    offset: int
    size: int
    label: int | None = None


class NcGraph:
    """Operator subspace ``S`` of ``B(C^n)`` given by a canonical basis."""

    def __init__(self, ambient_dim: int, matrices: Iterable[Matrix], blocks=None):
        self.ambient_dim = ambient_dim
        self._space = EchelonSpace(ambient_dim * ambient_dim)
        for m in matrices:
            if m.shape != (ambient_dim, ambient_dim):
                raise NcGraphError(
                    f"matrix of shape {m.shape} in ambient dimension {ambient_dim}"
                )
            self._space.add(m.vec())
        self.blocks = tuple(blocks) if blocks else None
        self._basis = None

    @property
    def basis(self) -> list[Matrix]:
        if self._basis is None:
            n = self.ambient_dim
            self._basis = [Matrix.from_vec(v, n, n) for v in self._space.basis()]
        return self._basis

    @property
    def dimension(self) -> int:
        return len(self._space)

    def _check_shape(self, M: Matrix):
        if M.shape != (self.ambient_dim, self.ambient_dim):
            raise NcGraphError(
                f"dimension mismatch: {M.shape} vs ambient {self.ambient_dim}"
            )

    def contains(self, M: Matrix) -> bool:
        self._check_shape(M)
        return self._space.contains(M.vec())

    def check_invariants(self) -> list[str]:
        """Return the list of violated invariants (empty when valid)."""
        problems = []
        if not self.contains(Matrix.identity(self.ambient_dim)):
            problems.append("identity is not a member")
        for k, B in enumerate(self.basis):
            if not self.contains(B.adjoint()):
                problems.append(f"adjoint of basis element {k} is not a member")
                break
        return problems

    def to_json(self) -> dict:
        out = {"ambient_dim": self.ambient_dim, "basis": [B.to_json() for B in self.basis]}
        if self.blocks:
            out["blocks"] = [[b.offset, b.size, b.label] for b in self.blocks]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "NcGraph":
        if "ambient_dim" not in data or "basis" not in data:
            raise NcGraphError("ncgraph JSON needs 'ambient_dim' and 'basis'")
        blocks = [Block(*b) for b in data.get("blocks", [])] or None
        return cls(data["ambient_dim"], [Matrix.from_json(m) for m in data["basis"]], blocks)

    def __repr__(self):
        return f"NcGraph(ambient={self.ambient_dim}, dim={self.dimension})"


def contains(S: NcGraph, M: Matrix) -> bool:
    return S.contains(M)


def equal_span(S: NcGraph, T: NcGraph) -> bool:
    if S.ambient_dim != T.ambient_dim:
        raise NcGraphError(f"dimension mismatch: {S.ambient_dim} vs {T.ambient_dim}")
    return S.dimension == T.dimension and all(T.contains(B) for B in S.basis)


def from_graph(G: Graph) -> NcGraph:
    """span{|x><x'| : x adjacent or equal to x'}."""
    if G.n < 1:
        raise NcGraphError("the empty graph has no ambient space")
    n = G.n
    mats = [Matrix.unit(n, n, x, x) for x in range(n)]
    for x, y in G.sorted_edges():
        mats.append(Matrix.unit(n, n, x, y))
        mats.append(Matrix.unit(n, n, y, x))
    return NcGraph(n, mats)


def quantum_ideal(d: int) -> NcGraph:
    """C*I_d, the confusability graph of the noiseless d-dimensional quantum channel."""
    if d < 1:
        raise NcGraphError("quantum_ideal needs d >= 1")
    return NcGraph(d, [Matrix.identity(d)])


def classical_ideal(d: int) -> NcGraph:
    """Diagonal d x d matrices."""
    if d < 1:
        raise NcGraphError("classical_ideal needs d >= 1")
    return NcGraph(d, [Matrix.unit(d, d, i, i) for i in range(d)])


def tensor(S: NcGraph, T: NcGraph) -> NcGraph:
    mats = [A.kron(B) for A in S.basis for B in T.basis]
    return NcGraph(S.ambient_dim * T.ambient_dim, mats)


def direct_sum(S: NcGraph, T: NcGraph) -> NcGraph:
    """S ⊕ T = {A ⊕ B : A in S, B in T}; carries a two-block tag."""
    n, m = S.ambient_dim, T.ambient_dim
    zn, zm = Matrix.zeros(n, n), Matrix.zeros(m, m)
    mats = [A.direct_sum(zm) for A in S.basis] + [zn.direct_sum(B) for B in T.basis]
    return NcGraph(n + m, mats, [Block(0, n), Block(n, m)])


def direct_sum_all(parts: list[NcGraph], labels: list[int] | None = None) -> NcGraph:
    """Direct sum of several subspaces with one block per summand."""
    total = sum(p.ambient_dim for p in parts)
    mats, blocks, off = [], [], 0
    for k, p in enumerate(parts):
        for B in p.basis:
            mats.append(B.embed(total, total, off, off))
        blocks.append(Block(off, p.ambient_dim, labels[k] if labels else None))
        off += p.ambient_dim
    return NcGraph(total, mats, blocks)
