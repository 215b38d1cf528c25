"""Transport of value certificates along a unit-vector special form.

Given a form (φ, u_h) for (H, 1) ≤ S = ⊕_d (G_d, d), certificates for the
terms G_d combine into a certificate for H whose value is at most
Σ_d d·value_d. Block layout: the output space is ⊕_d (space_d ⊗ C^d) (with an
extra ⊗ C^d for theta), blocks in the order of the terms of S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cohom import SpecialForm, WitnessError, flatten_form, form_vectors, verify_special_form
from .exact import GR, Matrix, kron_vec
from .graph import Graph, complement
from .representations import (
    CertificateError,
    HandleBlock,
    OrthonormalRepCertificate,
    ProjectiveRepCertificate,
    SubspaceRepC,
    pad_projective_rep,
    pad_subspace_rep,
    rank_one_projection,
    verify_orthonormal_rep,
    verify_projective_rep,
    verify_subspace_rep_complex,
)
from .semiring import AElement


class TransportError(ValueError):
    pass


@dataclass
class TransportInput:
    """S, the classical left-hand side H, and a unit-vector form for (H, 1) ≤ S."""

    S: AElement
    H: Graph
    form: SpecialForm

    def __post_init__(self):
        verdict = verify_special_form(AElement.single(self.H, 1), self.S, self.form)
        if not verdict:
            raise TransportError(f"special form does not verify: {verdict.reason}")
        try:
            self.vectors = form_vectors(self.form)
        except WitnessError as exc:
            raise TransportError(f"not a unit-vector form: {exc}") from None

    @classmethod
    def from_form(cls, T: AElement, S: AElement, form: SpecialForm) -> "TransportInput":
        """Flatten a form for T ≤ S into one for (⊔_d H_d ⊠ K̄_d, 1) ≤ S."""
        H, flat = flatten_form(T, S, form)
        return cls(S, H, flat)

    def image(self, h: int) -> tuple[int, int]:
        """(term index, local vertex) of φ(h) in S."""
        t, v, _ = self.S.vertex_table[self.form.phi[h]]
        return t, v


def _per_term(S: AElement, reps) -> list:
    if isinstance(reps, dict):
        missing = [d for d in S.dims if d not in reps]
        if missing:
            raise TransportError(f"no input certificate for term dimension(s) {missing}")
        return [reps[d] for d in S.dims]
    reps = list(reps)
    if len(reps) != len(S.terms):
        raise TransportError(f"{len(reps)} input certificates for {len(S.terms)} terms")
    return reps


def input_bound(S: AElement, values: list) -> Fraction:
    """Σ_d d·value_d over the terms of S."""
    return sum((d * Fraction(v) for (_, d), v in zip(S.terms, values)), Fraction(0))


def transport_theta(inp: TransportInput, reps) -> OrthonormalRepCertificate:
    """w_h = v_φ(h) ⊗ u_h ⊗ conj(u_h), handle ⊕_d sqrt(λ_d) c_d ⊗ d^{-1/2} Σ_i |i>|i>.

    λ_d = d·value_d / Σ_j j·value_j, with value_d the verified certificate value.
    """
    S = inp.S
    reps = _per_term(S, reps)
    values = []
    for (G, d), rep in zip(S.terms, reps):
        try:
            values.append(verify_orthonormal_rep(G, rep))
        except CertificateError as exc:
            raise TransportError(f"input certificate for term d={d} fails: {exc}") from None
    total = input_bound(S, values)
    offsets, blocks, off = [], [], 0
    for (G, d), rep, val in zip(S.terms, reps, values):
        size = len(rep.handle) * d * d
        offsets.append(off)
        # unnormalized block c_d ⊗ Σ|ii>, whose squared norm is ‖c_d‖² d
        lam = d * val / total
        blocks.append(HandleBlock(off, off + size, lam / (d * rep.handle_norm)))
        off += size
    dim = off
    handle = [GR(0)] * dim
    for (G, d), rep, o in zip(S.terms, reps, offsets):
        maxent = [GR(int(i == j)) for i in range(d) for j in range(d)]
        for k, z in enumerate(kron_vec(rep.handle, maxent)):
            handle[o + k] = z
    vectors = []
    for h, u in enumerate(inp.vectors):
        t, v = inp.image(h)
        rep = reps[t]
        w = kron_vec(kron_vec(rep.vectors[v], u), [z.conjugate() for z in u])
        full = [GR(0)] * dim
        full[offsets[t] : offsets[t] + len(w)] = w
        vectors.append(full)
    out = OrthonormalRepCertificate(vectors, handle, blocks=blocks)
    value = verify_orthonormal_rep(inp.H, out)
    if value > total:
        raise TransportError(f"transported value {value} exceeds {total}")
    return out


def _common_denominator(reps, pad):
    L = lcm(*[r.b for r in reps])
    return [pad(r, L // r.b) if r.b != L else r for r in reps], L


def transport_haemers_c(inp: TransportInput, reps) -> SubspaceRepC:
    """T_h = S_φ(h) ⊗ C u_h inside ⊕_d C^{a_d} ⊗ C^d, denominator b."""
    S = inp.S
    reps = _per_term(S, reps)
    for (G, d), rep in zip(S.terms, reps):
        try:
            verify_subspace_rep_complex(G, rep)
        except CertificateError as exc:
            raise TransportError(f"input certificate for term d={d} fails: {exc}") from None
    before = input_bound(S, [Fraction(r.a, r.b) for r in reps])
    reps, b = _common_denominator(reps, pad_subspace_rep)
    offsets, off = [], 0
    for (_, d), rep in zip(S.terms, reps):
        offsets.append(off)
        off += rep.a * d
    mats = []
    for h, u in enumerate(inp.vectors):
        t, v = inp.image(h)
        block = reps[t].matrices[v].kron(Matrix.from_rows([u]))
        mats.append(block.embed(b, off, 0, offsets[t]))
    out = SubspaceRepC(off, b, mats)
    value = verify_subspace_rep_complex(inp.H, out)
    if value > before:
        raise TransportError(f"transported value {value} exceeds {before}")
    return out


def transport_projective(inp: TransportInput, reps) -> ProjectiveRepCertificate:
    """P_φ(h) ⊗ u_h u_h*/‖u_h‖² from representations of the complements Ḡ_d."""
    S = inp.S
    reps = _per_term(S, reps)
    for (G, d), rep in zip(S.terms, reps):
        try:
            verify_projective_rep(complement(G), rep)
        except CertificateError as exc:
            raise TransportError(f"input certificate for term d={d} fails: {exc}") from None
    before = input_bound(S, [Fraction(r.a, r.b) for r in reps])
    reps, b = _common_denominator(reps, pad_projective_rep)
    offsets, off = [], 0
    for (_, d), rep in zip(S.terms, reps):
        offsets.append(off)
        off += rep.a * d
    projs = []
    for h, u in enumerate(inp.vectors):
        t, v = inp.image(h)
        block = reps[t].projections[v].kron(rank_one_projection(u))
        projs.append(block.embed(off, off, offsets[t], offsets[t]))
    out = ProjectiveRepCertificate(off, b, projs)
    value = verify_projective_rep(complement(inp.H), out)
    if value > before:
        raise TransportError(f"transported value {value} exceeds {before}")
    return out
