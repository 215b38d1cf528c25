"""Value-carrying representation certificates and their exact verifiers.

Conventions:

* orthonormal representation (Lovász): NON-adjacent distinct vertices get
  orthogonal vectors; value ``max_g ‖c‖²‖u_g‖² / |<c, u_g>|²`` bounds ϑ(G).
* orthogonal-rank representation: ADJACENT vertices get orthogonal vectors;
  the dimension bounds ξ(G).
* a/b subspace representation: ``S_g ∩ Σ_{g' ≄ g} S_g' = {0}``, dim b in F^a.
* a/b projective representation: rank-b projections on C^a, ``P_g P_g' = 0``
  on edges.

Vectors are unnormalized; only scale-invariant quantities are evaluated, so
±1 and other Gaussian-rational data stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    GR,
    EchelonSpace,
    Matrix,
    as_vector,
    format_rational,
    inner,
    norm2,
    parse_rational,
    rank,
    rank_mod_p,
)
from .graph import Graph, is_prime


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class HandleBlock:
    """Handle component ``sqrt(weight) * c[start:stop]``."""

    start: int
    stop: int
    weight: Fraction


@dataclass
class OrthonormalRepCertificate:
    """Per-vertex vectors ``u_g`` and a handle ``c``, all unnormalized.

    ``norms`` and ``handle_norm`` hold squared norms (computed when omitted).
    ``blocks`` optionally splits the handle into pieces with rational squared
    scale factors, for handles like ``⊕_d sqrt(λ_d) c_d``.
    """

    vectors: list
    handle: list
    norms: list | None = None
    handle_norm: Fraction | None = None
    blocks: list | None = None

    def __post_init__(self):
        self.vectors = [as_vector(v) for v in self.vectors]
        self.handle = as_vector(self.handle)
        if self.norms is None:
            self.norms = [norm2(v) for v in self.vectors]
        else:
            self.norms = [Fraction(x) for x in self.norms]
        if self.blocks:
            self.blocks = [
                b if isinstance(b, HandleBlock) else HandleBlock(b[0], b[1], Fraction(b[2]))
                for b in self.blocks
            ]
        if self.handle_norm is None:
            self.handle_norm = self._handle_norm2()
        else:
            self.handle_norm = Fraction(self.handle_norm)

    def _handle_norm2(self) -> Fraction:
        if not self.blocks:
            return norm2(self.handle)
        return sum(
            (b.weight * norm2(self.handle[b.start : b.stop]) for b in self.blocks), Fraction(0)
        )

    def overlap2(self, u: list) -> Fraction:
        """|<c, u>|² for the (block-weighted) handle."""
        if not self.blocks:
            return inner(self.handle, u).abs2()
        touched = [b for b in self.blocks if any(u[k] for k in range(b.start, b.stop))]
        if not touched:
            return Fraction(0)
        weights = {b.weight for b in touched}
        if len(weights) > 1:
            raise CertificateError(
                "vector overlaps handle blocks with different weights; not exactly evaluable"
            )
        z = GR(0)
        for b in touched:
            z = z + inner(self.handle[b.start : b.stop], u[b.start : b.stop])
        return touched[0].weight * z.abs2()

    def to_json(self) -> dict:
        out = {
            "vectors": [[z.to_json() for z in v] for v in self.vectors],
            "norms": [format_rational(x) for x in self.norms],
            "handle": [z.to_json() for z in self.handle],
            "handle_norm": format_rational(self.handle_norm),
        }
        if self.blocks:
            out["blocks"] = [[b.start, b.stop, format_rational(b.weight)] for b in self.blocks]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "OrthonormalRepCertificate":
        for key in ("vectors", "handle"):
            if key not in data:
                raise CertificateError(f"orthonormal certificate JSON missing '{key}'")
        norms = data.get("norms")
        return cls(
            vectors=[[GR.from_json(z) for z in v] for v in data["vectors"]],
            handle=[GR.from_json(z) for z in data["handle"]],
            norms=[parse_rational(x) for x in norms] if norms is not None else None,
            handle_norm=parse_rational(data["handle_norm"]) if "handle_norm" in data else None,
            blocks=[[b[0], b[1], parse_rational(b[2])] for b in data.get("blocks", [])] or None,
        )


def verify_orthonormal_rep(G: Graph, cert: OrthonormalRepCertificate) -> Fraction:
    """Exactly check the representation; return its value (an upper bound on ϑ(G))."""
    if len(cert.vectors) != G.n:
        raise CertificateError(f"{len(cert.vectors)} vectors for {G.n} vertices")
    dim = len(cert.handle)
    for g, u in enumerate(cert.vectors):
        if len(u) != dim:
            raise CertificateError(f"vector of vertex {g} has length {len(u)}, handle has {dim}")
    if cert.blocks:
        for b in cert.blocks:
            if not (0 <= b.start <= b.stop <= dim) or b.weight <= 0:
                raise CertificateError(f"bad handle block {b}")
    for g, u in enumerate(cert.vectors):
        if norm2(u) != cert.norms[g]:
            raise CertificateError(f"stored squared norm of vertex {g} is wrong")
        if cert.norms[g] <= 0:
            raise CertificateError(f"vector of vertex {g} is zero")
    if cert.handle_norm != cert._handle_norm2() or cert.handle_norm <= 0:
        raise CertificateError("handle squared norm is wrong or zero")
    for g in range(G.n):
        for h in range(g + 1, G.n):
            if not G.adjacent(g, h) and inner(cert.vectors[g], cert.vectors[h]):
                raise CertificateError(
                    f"non-adjacent vertices ({g}, {h}) have non-orthogonal vectors"
                )
    value = Fraction(0)
    for g, u in enumerate(cert.vectors):
        ov = cert.overlap2(u)
        if not ov:
            raise CertificateError(f"handle is orthogonal to vertex {g}; value is infinite")
        value = max(value, cert.handle_norm * cert.norms[g] / ov)
    return value


def verify_orthogonal_rank_rep(G: Graph, vectors: list) -> int:
    """Check ADJACENT ⇒ orthogonal with nonzero vectors; return the dimension."""
    vecs = [as_vector(v) for v in vectors]
    if len(vecs) != G.n:
        raise CertificateError(f"{len(vecs)} vectors for {G.n} vertices")
    dims = {len(v) for v in vecs}
    if len(dims) > 1:
        raise CertificateError("vectors have inconsistent lengths")
    for g, v in enumerate(vecs):
        if not norm2(v):
            raise CertificateError(f"vector of vertex {g} is zero")
    for g, h in G.sorted_edges():
        if inner(vecs[g], vecs[h]):
            raise CertificateError(f"adjacent vertices ({g}, {h}) have non-orthogonal vectors")
    return dims.pop() if dims else 0


def _non_neighbours(G: Graph, g: int) -> list[int]:
    return [h for h in range(G.n) if h != g and not G.adjacent(g, h)]


@dataclass
class SubspaceRepFp:
    """a/b subspace representation over F_p: S_g = row space of a b x a matrix."""

    p: int
    a: int
    b: int
    matrices: list

    def to_json(self) -> dict:
        return {"p": self.p, "a": self.a, "b": self.b, "matrices": self.matrices}

    @classmethod
    def from_json(cls, data: dict) -> "SubspaceRepFp":
        for key in ("p", "a", "b", "matrices"):
            if key not in data:
                raise CertificateError(f"F_p subspace certificate JSON missing '{key}'")
        return cls(data["p"], data["a"], data["b"], data["matrices"])


def verify_subspace_rep_fp(G: Graph, cert: SubspaceRepFp) -> Fraction:
    """Exact rank checks over F_p; returns a/b (upper bound on the F_p fractional Haemers bound)."""
    p, a, b = cert.p, cert.a, cert.b
    if not is_prime(p):
        raise CertificateError(f"{p} is not prime")
    if len(cert.matrices) != G.n:
        raise CertificateError(f"{len(cert.matrices)} subspaces for {G.n} vertices")
    if b < 1:
        raise CertificateError("denominator b must be positive")
    for g, M in enumerate(cert.matrices):
        if len(M) != b or any(len(row) != a for row in M):
            raise CertificateError(f"subspace of vertex {g} is not a {b}x{a} matrix")
        if rank_mod_p(M, p) != b:
            raise CertificateError(f"subspace of vertex {g} has rank below {b}")
    for g in range(G.n):
        others = [row for h in _non_neighbours(G, g) for row in cert.matrices[h]]
        r_others = rank_mod_p(others, p) if others else 0
        r_all = rank_mod_p(cert.matrices[g] + others, p)
        if r_all != b + r_others:
            raise CertificateError(f"subspace of vertex {g} meets the sum of its non-neighbours")
    return Fraction(a, b)


@dataclass
class SubspaceRepC:
    """a/b subspace representation over C (Gaussian-rational spanning rows)."""

    a: int
    b: int
    matrices: list  # of Matrix, each b x a

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "matrices": [M.to_json() for M in self.matrices]}

    @classmethod
    def from_json(cls, data: dict) -> "SubspaceRepC":
        for key in ("a", "b", "matrices"):
            if key not in data:
                raise CertificateError(f"complex subspace certificate JSON missing '{key}'")
        return cls(data["a"], data["b"], [Matrix.from_json(M) for M in data["matrices"]])


def verify_subspace_rep_complex(G: Graph, cert: SubspaceRepC) -> Fraction:
    """Exact rank checks over Q(i); returns a/b (upper bound on the complex fractional Haemers bound)."""
    a, b = cert.a, cert.b
    if len(cert.matrices) != G.n:
        raise CertificateError(f"{len(cert.matrices)} subspaces for {G.n} vertices")
    if b < 1:
        raise CertificateError("denominator b must be positive")
    for g, M in enumerate(cert.matrices):
        if M.shape != (b, a):
            raise CertificateError(f"subspace of vertex {g} is {M.shape}, expected {(b, a)}")
        if rank(M) != b:
            raise CertificateError(f"subspace of vertex {g} has rank below {b}")
    for g in range(G.n):
        space = EchelonSpace(a)
        for h in _non_neighbours(G, g):
            for row in _rows(cert.matrices[h]):
                space.add(row)
        r_others = len(space)
        for row in _rows(cert.matrices[g]):
            space.add(row)
        if len(space) != b + r_others:
            raise CertificateError(f"subspace of vertex {g} meets the sum of its non-neighbours")
    return Fraction(a, b)


def _rows(M: Matrix) -> list[dict]:
    rows: dict[int, dict] = {i: {} for i in range(M.rows)}
    for (i, j), v in M.data.items():
        rows[i][j] = v
    return [rows[i] for i in range(M.rows)]


def pad_subspace_rep(cert: SubspaceRepC, m: int) -> SubspaceRepC:
    """S_g ⊗ C^m: an (a m)/(b m) representation with the same value."""
    Im = Matrix.identity(m)
    return SubspaceRepC(cert.a * m, cert.b * m, [M.kron(Im) for M in cert.matrices])


@dataclass
class ProjectiveRepCertificate:
    """a/b projective representation: rank-b projections P_g on C^a."""

    a: int
    b: int
    projections: list  # of Matrix

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "projections": [P.to_json() for P in self.projections]}

    @classmethod
    def from_json(cls, data: dict) -> "ProjectiveRepCertificate":
        for key in ("a", "b", "projections"):
            if key not in data:
                raise CertificateError(f"projective certificate JSON missing '{key}'")
        return cls(data["a"], data["b"], [Matrix.from_json(P) for P in data["projections"]])


def verify_projective_rep(G: Graph, cert: ProjectiveRepCertificate) -> Fraction:
    """Exact checks; returns a/b (upper bound on ξ_f(G))."""
    a, b = cert.a, cert.b
    if len(cert.projections) != G.n:
        raise CertificateError(f"{len(cert.projections)} projections for {G.n} vertices")
    if b < 1:
        raise CertificateError("denominator b must be positive")
    for g, P in enumerate(cert.projections):
        if P.shape != (a, a):
            raise CertificateError(f"projection of vertex {g} is {P.shape}, expected {(a, a)}")
        if P.adjoint() != P:
            raise CertificateError(f"projection of vertex {g} is not self-adjoint")
        if P @ P != P:
            raise CertificateError(f"projection of vertex {g} is not idempotent")
        if rank(P) != b:
            raise CertificateError(f"projection of vertex {g} does not have rank {b}")
    for g, h in G.sorted_edges():
        if not (cert.projections[g] @ cert.projections[h]).is_zero():
            raise CertificateError(f"product of projections on edge ({g}, {h}) is nonzero")
    return Fraction(a, b)


def pad_projective_rep(cert: ProjectiveRepCertificate, m: int) -> ProjectiveRepCertificate:
    """P_g ⊗ I_m: an (a m)/(b m) representation with the same value."""
    Im = Matrix.identity(m)
    return ProjectiveRepCertificate(cert.a * m, cert.b * m, [P.kron(Im) for P in cert.projections])


def rank_one_projection(u: list) -> Matrix:
    """u u* / ‖u‖², exact for Gaussian-rational u."""
    u = as_vector(u)
    n2 = norm2(u)
    if not n2:
        raise CertificateError("cannot project onto the zero vector")
    col = Matrix.column(u)
    return (col @ col.adjoint()).scale(GR(1 / n2))
