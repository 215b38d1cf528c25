"""Cohomomorphisms: graph-level search, special forms and Kraus witnesses.

Direction convention. A witness for ``T ≤ S`` is a family of operators
``E_i : ambient(T) -> ambient(S)`` with

    Σ_i E_i* E_i = I  (on ambient(T))      and      E_i* S E_j ⊆ T  for all i, j.

Worked 2x2 example: T = (K̄_2, 1) has ambient C^2 and T = diagonal matrices;
S = (K_1, 2) has ambient C^2 and S = C·I. With E_1 = e_1 e_1*, E_2 = e_2 e_2*
(i.e. φ sends both vertices to the single vertex, u_1 = e_1, u_2 = e_2) we
get Σ E_i* E_i = I and E_i* I E_j = δ_ij e_i e_i*, which is diagonal.

Exact witnesses keep each operator as ``sqrt(s_i) M_i`` with rational
``s_i``: completeness is ``Σ s_i M_i* M_i = I`` and containment is checked
for ``M_i* B M_j``, which is invariant under positive rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import GR, Matrix, as_vector, format_rational, norm2, parse_rational
from .graph import Graph, complement, disjoint_union, empty, strong_product
from .ncgraph import NcGraph
from .parameters import GuardError, _bits, cliques_of_size
from .representations import CertificateError, verify_orthogonal_rank_rep
from .semiring import AElement, to_ncgraph

COHOM_GUARD = 64
FLOAT_TOL = 1e-9


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Result of a verifier; falsy on failure, with a reason naming the culprit."""

    ok: bool
    reason: str = ""
    where: tuple = ()

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"valid": self.ok}
        if not self.ok:
            out["reason"] = self.reason
            out["where"] = list(self.where)
        return out


OK = Verdict(True)


# graph cohomomorphisms


def find_graph_cohomomorphism(H: Graph, G: Graph, guard: int = COHOM_GUARD) -> list[int] | None:
    """A map ψ: V(H) -> V(G) sending non-adjacent distinct pairs of H to
    non-adjacent distinct pairs of G (a homomorphism H̄ -> Ḡ), or None.

    Backtracking with forward checking; the next vertex is the unassigned one
    with the fewest remaining values (ties: smallest index), values are tried
    in increasing order.
    """
    if H.n > guard or G.n > guard:
        raise GuardError(f"graph sizes ({H.n}, {G.n}) exceed guard {guard}")
    if H.n == 0:
        return []
    if G.n == 0:
        return None
    full = (1 << G.n) - 1
    # allowed images of a non-neighbour of a vertex mapped to g
    far = [full & ~G.masks[g] & ~(1 << g) for g in range(G.n)]
    Hbar = complement(H)
    assign = [-1] * H.n
    domains = [full] * H.n

    def search(domains):
        free = [h for h in range(H.n) if assign[h] < 0]
        if not free:
            return True
        h = min(free, key=lambda v: (domains[v].bit_count(), v))
        for g in _bits(domains[h]):
            new = list(domains)
            ok = True
            for h2 in _bits(Hbar.masks[h]):
                if assign[h2] < 0:
                    new[h2] &= far[g]
                    if not new[h2]:
                        ok = False
                        break
            if not ok:
                continue
            assign[h] = g
            if search(new):
                return True
            assign[h] = -1
        return False

    return list(assign) if search(domains) else None


def is_graph_cohomomorphism(H: Graph, G: Graph, psi: list[int]) -> bool:
    if len(psi) != H.n or any(not 0 <= g < G.n for g in psi):
        return False
    for a in range(H.n):
        for b in range(a + 1, H.n):
            if not H.adjacent(a, b) and G.adj_or_equal(psi[a], psi[b]):
                return False
    return True


# special forms


@dataclass
class SpecialForm:
    """φ on global vertices plus isometries ``sqrt(s_h) U_h : C^π(h) -> C^π(φ(h))``."""

    phi: list[int]
    isometries: list  # of Matrix, shape (π(φ(h)), π(h))
    scales: list = field(default=None)

    def __post_init__(self):
        if self.scales is None:
            self.scales = [Fraction(1)] * len(self.phi)
        self.scales = [Fraction(s) for s in self.scales]

    def to_json(self) -> dict:
        return {
            "phi": list(self.phi),
            "isometries": [U.to_json() for U in self.isometries],
            "scales": [format_rational(s) for s in self.scales],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SpecialForm":
        for key in ("phi", "isometries"):
            if key not in data:
                raise WitnessError(f"special form JSON missing '{key}'")
        scales = data.get("scales")
        return cls(
            list(data["phi"]),
            [Matrix.from_json(U) for U in data["isometries"]],
            [parse_rational(s) for s in scales] if scales is not None else None,
        )


def verify_special_form(T: AElement, S: AElement, form: SpecialForm) -> Verdict:
    """Check the isometry, orthogonality and scalar-overlap clauses exactly."""
    nT, nS = T.num_vertices, S.num_vertices
    if len(form.phi) != nT or len(form.isometries) != nT or len(form.scales) != nT:
        return Verdict(False, f"form has {len(form.phi)} images for {nT} vertices", ())
    tT, tS = T.vertex_table, S.vertex_table
    for h, g in enumerate(form.phi):
        if not 0 <= g < nS:
            return Verdict(False, f"image of vertex {h} is out of range", (h,))
        U = form.isometries[h]
        if U.shape != (tS[g][2], tT[h][2]):
            return Verdict(
                False, f"isometry of vertex {h} has shape {U.shape}, expected {(tS[g][2], tT[h][2])}", (h,)
            )
        s = form.scales[h]
        if s <= 0:
            return Verdict(False, f"scale of vertex {h} is not positive", (h,))
        if (U.adjoint() @ U).scale(GR(s)) != Matrix.identity(tT[h][2]):
            return Verdict(False, f"U_{h} is not an isometry (clause: isometry)", (h,))
    adj = [U.adjoint() for U in form.isometries]
    for h in range(nT):
        for k in range(h + 1, nT):
            if not S.close(form.phi[h], form.phi[k]):
                continue
            P = adj[h] @ form.isometries[k]
            if not T.close(h, k):
                if not P.is_zero():
                    return Verdict(
                        False,
                        f"pair ({h}, {k}): non-close vertices with close images need U_h* U_h' = 0",
                        (h, k),
                    )
            elif P.is_scalar_identity() is None:
                return Verdict(
                    False,
                    f"pair ({h}, {k}): close vertices with close images need U_h* U_h' = cI",
                    (h, k),
                )
    return OK


def _ambient_index(E: AElement):
    """(global vertex, k) -> ambient coordinate, for the block layout g·d + k."""
    offs = E.ambient_offsets()
    return lambda v, k: offs[E.vertex_table[v][0]] + E.vertex_table[v][1] * E.vertex_table[v][2] + k


# Kraus witnesses


@dataclass
class KrausWitness:
    """Operators ambient(source) -> ambient(target) certifying source ≤ target.

    ``mode == "exact"``: operators are exact matrices with squared scales.
    ``mode == "floating"``: operators are complex numpy arrays, tolerance ``tol``.
    """

    source: AElement
    target: AElement
    operators: list
    scales: list | None = None
    mode: str = "exact"
    tol: float = FLOAT_TOL

    def __post_init__(self):
        if self.mode not in ("exact", "floating"):
            raise WitnessError(f"unknown witness mode {self.mode!r}")
        if self.mode == "exact":
            if self.scales is None:
                self.scales = [Fraction(1)] * len(self.operators)
            self.scales = [Fraction(s) for s in self.scales]
        else:
            self.operators = [np.asarray(E, dtype=complex) for E in self.operators]

    def dense(self) -> list[np.ndarray]:
        """Normalized operators as floating arrays."""
        if self.mode == "floating":
            return list(self.operators)
        return [float(s) ** 0.5 * E.to_numpy() for E, s in zip(self.operators, self.scales)]

    def to_json(self) -> dict:
        out = {"source": self.source.to_json(), "target": self.target.to_json(), "mode": self.mode}
        if self.mode == "exact":
            out["operators"] = [E.to_json() for E in self.operators]
            out["scales"] = [format_rational(s) for s in self.scales]
        else:
            out["operators"] = [
                {"rows": E.shape[0], "cols": E.shape[1], "real": E.real.ravel().tolist(), "imag": E.imag.ravel().tolist()}
                for E in self.operators
            ]
            out["tol"] = self.tol
        return out

    @classmethod
    def from_json(cls, data: dict) -> "KrausWitness":
        for key in ("source", "target", "operators"):
            if key not in data:
                raise WitnessError(f"witness JSON missing '{key}'")
        mode = data.get("mode", "exact")
        src, tgt = AElement.from_json(data["source"]), AElement.from_json(data["target"])
        if mode == "exact":
            ops = [Matrix.from_json(E) for E in data["operators"]]
            scales = data.get("scales")
            return cls(src, tgt, ops, [parse_rational(s) for s in scales] if scales else None)
        ops = []
        for k, E in enumerate(data["operators"]):
            for key in ("rows", "cols", "real", "imag"):
                if key not in E:
                    raise WitnessError(f"operator {k} missing '{key}'")
            arr = np.asarray(E["real"], dtype=float) + 1j * np.asarray(E["imag"], dtype=float)
            ops.append(arr.reshape(E["rows"], E["cols"]))
        return cls(src, tgt, ops, mode="floating", tol=float(data.get("tol", FLOAT_TOL)))


def kraus_from_special_form(T: AElement, S: AElement, form: SpecialForm) -> KrausWitness:
    """E_h = |φ(h)><h| ⊗ U_h, one operator per vertex of T."""
    verdict = verify_special_form(T, S, form)
    if not verdict:
        raise WitnessError(f"invalid special form: {verdict.reason}")
    idx_T, idx_S = _ambient_index(T), _ambient_index(S)
    nT, nS = T.ambient_dim, S.ambient_dim
    ops = []
    for h, (g, U) in enumerate(zip(form.phi, form.isometries)):
        data = {(idx_S(g, i), idx_T(h, j)): v for (i, j), v in U.data.items()}
        ops.append(Matrix._wrap(nS, nT, data))
    return KrausWitness(T, S, ops, list(form.scales))


def verify_kraus_witness(T: AElement, S: AElement, w: KrausWitness) -> Verdict:
    """Completeness and containment, exactly or up to the witness tolerance."""
    if w.source != T or w.target != S:
        return Verdict(False, "witness was built for a different pair of elements", ())
    nT, nS = T.ambient_dim, S.ambient_dim
    for k, E in enumerate(w.operators):
        if tuple(E.shape) != (nS, nT):
            return Verdict(False, f"operator {k} has shape {tuple(E.shape)}, expected {(nS, nT)}", (k,))
    if not w.operators:
        return Verdict(nT == 0, "empty witness", ())
    if w.mode == "floating":
        return _verify_floating(T, S, w)
    total = Matrix.zeros(nT, nT)
    for E, s in zip(w.operators, w.scales):
        if s <= 0:
            return Verdict(False, "nonpositive operator scale", ())
        total = total + (E.adjoint() @ E).scale(GR(s))
    resid = total - Matrix.identity(nT)
    if not resid.is_zero():
        return Verdict(
            False,
            f"completeness fails: ||Σ E*E - I||_F^2 = {format_rational(resid.frobenius2())}",
            (),
        )
    TS, SS = to_ncgraph(T), to_ncgraph(S)
    adj = [E.adjoint() for E in w.operators]
    for b, B in enumerate(SS.basis):
        BE = [B @ E for E in w.operators]
        for j, BEj in enumerate(BE):
            if BEj.is_zero():
                continue
            for i, Ei in enumerate(adj):
                if not TS.contains(Ei @ BEj):
                    return Verdict(
                        False, f"containment fails for operators ({i}, {j}) at basis element {b}", (i, j, b)
                    )
    return OK


def _orthonormal_basis(S: NcGraph) -> np.ndarray:
    if not S.basis:
        return np.zeros((S.ambient_dim**2, 0), dtype=complex)
    A = np.stack([B.to_numpy().ravel() for B in S.basis], axis=1)
    Q, _ = np.linalg.qr(A)
    return Q


def _verify_floating(T: AElement, S: AElement, w: KrausWitness) -> Verdict:
    nT = T.ambient_dim
    ops = w.operators
    total = sum(E.conj().T @ E for E in ops)
    res = float(np.linalg.norm(total - np.eye(nT)))
    if res > w.tol:
        return Verdict(False, f"completeness fails: ||Σ E*E - I||_F = {res:.3e}", ())
    Q = _orthonormal_basis(to_ncgraph(T))
    for b, B in enumerate(to_ncgraph(S).basis):
        Bn = B.to_numpy()
        for j, Ej in enumerate(ops):
            BEj = Bn @ Ej
            for i, Ei in enumerate(ops):
                v = (Ei.conj().T @ BEj).ravel()
                r = float(np.linalg.norm(v - Q @ (Q.conj().T @ v)))
                if r > w.tol:
                    return Verdict(
                        False,
                        f"containment fails for operators ({i}, {j}) at basis element {b} (residual {r:.3e})",
                        (i, j, b),
                    )
    return OK


def truncate(S: AElement, q: int) -> AElement:
    """Keep only the terms of dimension ≥ q."""
    return AElement(tuple((G, d) for G, d in S.terms if d >= q))


def project_witness(T_single: AElement, S: AElement, w: KrausWitness, q: int) -> KrausWitness:
    """Compose every operator with the projection onto the blocks of dimension ≥ q."""
    if len(T_single.terms) != 1 or T_single.dims[0] != q:
        raise WitnessError(f"left-hand side must be a single term of dimension {q}")
    verdict = verify_kraus_witness(T_single, S, w)
    if not verdict:
        raise WitnessError(f"input witness is invalid: {verdict.reason}")
    S_q = truncate(S, q)
    if S_q.is_zero:
        raise WitnessError(f"target has no terms of dimension >= {q}")
    keep = []
    for off, (G, d) in zip(S.ambient_offsets(), S.terms):
        if d >= q:
            keep.extend(range(off, off + G.n * d))
    cols = list(range(T_single.ambient_dim))
    if w.mode == "exact":
        ops = [E.submatrix(keep, cols) for E in w.operators]
        out = KrausWitness(T_single, S_q, ops, list(w.scales))
    else:
        ops = [E[keep, :] for E in w.operators]
        out = KrausWitness(T_single, S_q, ops, mode="floating", tol=w.tol)
    return out


# disjoint cliques


def disjoint_cliques(G: Graph, d: int) -> list[tuple[int, ...]]:
    """A maximum family of pairwise disjoint d-cliques.

    Branch and bound over the d-cliques in lexicographic order, trying to
    include each clique before excluding it, so the family returned is the
    lexicographically first maximum packing.
    """
    if d < 1:
        raise ValueError("clique size must be positive")
    cliques = cliques_of_size(G, d)
    masks = [sum(1 << v for v in C) for C in cliques]
    m = len(cliques)
    # union of vertices still coverable by cliques k..m-1
    suffix = [0] * (m + 1)
    for k in range(m - 1, -1, -1):
        suffix[k] = suffix[k + 1] | masks[k]
    best: list[int] = []

    def rec(k, used, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if k == m:
            return
        if len(chosen) + (suffix[k] & ~used).bit_count() // d <= len(best):
            return
        if not masks[k] & used:
            chosen.append(k)
            rec(k + 1, used | masks[k], chosen)
            chosen.pop()
        rec(k + 1, used, chosen)

    rec(0, 0, [])
    return [cliques[k] for k in best]


def witness_from_cliques(G: Graph, d: int, rep, cliques: list) -> KrausWitness:
    """Kraus witness for (K̄_{Md}, 1) ≤ (G, d) from M disjoint d-cliques and
    vectors in C^d with adjacent vertices orthogonal.

    ``rep`` is a list of vectors or any object with a ``vectors`` attribute.
    """
    vectors = [as_vector(v) for v in getattr(rep, "vectors", rep)]
    try:
        dim = verify_orthogonal_rank_rep(G, vectors)
    except CertificateError as exc:
        raise WitnessError(f"representation is not valid: {exc}") from None
    if dim != d:
        raise WitnessError(f"representation lives in dimension {dim}, expected {d}")
    seen: set[int] = set()
    phi = []
    for C in cliques:
        if len(C) != d:
            raise WitnessError(f"clique {tuple(C)} does not have size {d}")
        for a in C:
            for b in C:
                if a < b and not G.adjacent(a, b):
                    raise WitnessError(f"{tuple(C)} is not a clique")
        if seen & set(C):
            raise WitnessError(f"clique {tuple(C)} overlaps an earlier clique")
        seen |= set(C)
        phi.extend(C)
    T = AElement.single(empty(len(phi)), 1)
    S = AElement.single(G, d)
    form = SpecialForm(
        phi,
        [Matrix.column(vectors[g]) for g in phi],
        [1 / norm2(vectors[g]) for g in phi],
    )
    return kraus_from_special_form(T, S, form)


# reduction to a classical left-hand side


def flatten_form(T: AElement, S: AElement, form: SpecialForm) -> tuple[Graph, SpecialForm]:
    """From a form for T ≤ S, build H = ⊔_d H_d ⊠ K̄_d and a unit-vector form for (H, 1) ≤ S.

    Vertex (h, i) of H_d ⊠ K̄_d is ``h·d + i`` within its term; it maps to
    φ(h) with vector U_h e_i.
    """
    verdict = verify_special_form(T, S, form)
    if not verdict:
        raise WitnessError(f"invalid special form: {verdict.reason}")
    H = Graph(0, frozenset())
    phi, vecs, scales = [], [], []
    for Hd, d in T.terms:
        H = disjoint_union(H, strong_product(Hd, empty(d)))
    # vertices of T are in term order, and H lists term blocks in the same order
    for h in range(T.num_vertices):
        U = form.isometries[h]
        for i in range(U.cols):
            phi.append(form.phi[h])
            vecs.append(U.submatrix(list(range(U.rows)), [i]))
            scales.append(form.scales[h])
    return H, SpecialForm(phi, vecs, scales)


def form_vectors(form: SpecialForm) -> list[list]:
    """The vectors u_h of a unit-vector form (each isometry a single column)."""
    out = []
    for h, U in enumerate(form.isometries):
        if U.cols != 1:
            raise WitnessError(f"isometry of vertex {h} has {U.cols} columns; expected a vector")
        out.append([U[(i, 0)] for i in range(U.rows)])
    return out
