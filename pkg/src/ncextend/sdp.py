"""Lovász theta by a dense log-det barrier method.

Primal:  max <J, B>  s.t.  tr B = 1,  B_ij = 0 for every edge ij,  B ⪰ 0.
Dual:    min t       s.t.  Z = t I + Σ_ij y_ij (E_ij + E_ji) - J ⪰ 0.

The barrier ``t - μ log det Z`` is minimized by Newton steps with an exact
line search, for a decreasing sequence of μ. At each centred point the
Newton system yields ``B = μ (W - W ΔZ W)`` with ``W = Z^{-1}``, which meets
the primal equality constraints; the pair (B, Z) certifies the gap.

Zero pattern is on the EDGES of G, so α(G) ≤ ϑ(G) ≤ χ̄_f(G).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

THETA_GUARD = 64


class ThetaConvergenceError(RuntimeError):
    def __init__(self, message, gap):
        super().__init__(message)
        self.gap = gap


@dataclass
class ThetaResult:
    value: float
    upper: float          # dual objective t
    lower: float          # primal objective <J, B>
    gap: float
    primal: np.ndarray    # B
    dual_t: float
    dual_y: np.ndarray    # one multiplier per edge, in sorted edge order
    iterations: int

    def check(self, G: Graph, tol: float = 1e-9) -> bool:
        """Feasibility of both certificates up to ``tol``."""
        B = self.primal
        ok = abs(np.trace(B) - 1) <= tol and np.linalg.eigvalsh(B)[0] >= -tol
        ok = ok and all(abs(B[i, j]) <= tol for i, j in G.edges)
        Z = _dual_matrix(G.n, sorted(G.edges), self.dual_t, self.dual_y)
        return bool(ok and np.linalg.eigvalsh(Z)[0] >= -tol)


def _dual_matrix(n, edges, t, y):
    Z = t * np.eye(n) - 1.0
    if len(edges):
        I, J = np.asarray(edges).T
        Z[I, J] += y
        Z[J, I] += y
    return Z


def _line_search(slope: float, mu: float, lam: np.ndarray) -> float:
    """argmin_s  s*slope - μ Σ log(1 + s λ_i) on the feasible interval.

    Safeguarded Newton on the derivative of this convex 1-D function.
    """
    lam = [float(x) for x in lam]
    neg = [x for x in lam if x < 0]
    s_max = -1.0 / min(neg) if neg else math.inf

    def d1(s):
        return slope - mu * sum(x / (1.0 + s * x) for x in lam)

    def d2(s):
        return mu * sum((x / (1.0 + s * x)) ** 2 for x in lam)

    if d1(0.0) >= 0:
        return 0.0
    lo, hi = 0.0, s_max
    if math.isinf(hi):
        hi = 1.0
        while d1(hi) < 0:
            lo, hi = hi, 2.0 * hi
            if hi > 1e12:
                return lo
    s = min(1.0, 0.5 * (lo + hi))
    for _ in range(60):
        val = d1(s)
        if val < 0:
            lo = s
        else:
            hi = s
        if abs(val) <= 1e-13 * (abs(slope) + mu) or hi - lo <= 1e-15 * hi:
            break
        nxt = s - val / d2(s)
        s = nxt if lo < nxt < hi else 0.5 * (lo + hi)
    return min(s, lo + 0.99 * (s_max - lo)) if neg else s


def lovasz_theta(
    G: Graph,
    tol: float = 1e-7,
    guard: int = THETA_GUARD,
    max_iter: int = 500,
    shrink: float = 0.05,
) -> ThetaResult:
    """ϑ(G) with a certified duality gap ≤ ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = G.n
    if n > guard:
        raise ValueError(f"{n} vertices exceeds guard {guard}")
    if n == 0:
        return ThetaResult(0.0, 0.0, 0.0, 0.0, np.zeros((0, 0)), 0.0, np.zeros(0), 0)
    edges = G.sorted_edges()
    m = len(edges)
    I = np.array([e[0] for e in edges], dtype=int)
    J = np.array([e[1] for e in edges], dtype=int)

    t = float(n + 1)
    y = np.zeros(m)
    eye = np.eye(n)
    mu = 1.0
    factor = shrink
    best = None
    centred = None  # (t, y, mu) at the last well-centred point

    for iters in range(1, max_iter + 1):
        Z = t * eye - 1.0
        Z[I, J] += y
        Z[J, I] += y
        W = np.linalg.inv(Z)
        W = 0.5 * (W + W.T)
        g = np.empty(m + 1)
        g[0] = 1.0 - mu * np.trace(W)
        g[1:] = -2.0 * mu * W[I, J]
        H = np.empty((m + 1, m + 1))
        H[0, 0] = np.sum(W * W)
        if m:
            W2 = W @ W
            H[0, 1:] = 2.0 * W2[I, J]
            H[1:, 0] = H[0, 1:]
            WI, WJ = W[I], W[J]
            H[1:, 1:] = 2.0 * (WJ[:, I] * WI[:, J] + WJ[:, J] * WI[:, I])
        H *= mu
        try:
            step = np.linalg.solve(H, -g)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(H, -g, rcond=None)[0]
        # Newton decrement of the self-concordant barrier scaled by 1/mu
        dec = np.sqrt(max(float(-g @ step), 0.0) / mu)
        dZ = step[0] * eye
        dZ[I, J] += step[1:]
        dZ[J, I] += step[1:]
        if dec <= 0.5:
            # well centred: B = mu (W - W dZ W) is feasible and PSD
            B = mu * (W - W @ dZ @ W)
            B = 0.5 * (B + B.T)
            B[I, J] = 0.0
            B[J, I] = 0.0
            lmin = np.linalg.eigvalsh(B)[0]
            if lmin < 0:
                B = B - lmin * eye
            B = B / np.trace(B)
            lower = float(np.sum(B))
            # any y gives the dual value λ_max(J - Y) = t - λ_min(Z)
            upper = float(t - np.linalg.eigvalsh(Z)[0])
            gap = upper - lower
            if best is None or gap < best.gap:
                best = ThetaResult(0.5 * (upper + lower), upper, lower, gap, B, upper, y.copy(), iters)
            if gap <= tol:
                return best
            if mu < 1e-15:
                break
            centred = (t, y.copy(), mu)
            mu *= factor if dec <= 0.1 else 0.5
            continue
        lam = np.linalg.eigvals(W @ dZ).real
        s = _line_search(step[0], mu, lam)
        if s <= 0:
            # stalled far from the central path: return to the last centred
            # point and reduce μ more gently
            if centred is None or factor > 0.9:
                break
            factor = math.sqrt(factor)
            t, y, mu = centred[0], centred[1].copy(), centred[2] * factor
            continue
        t += s * step[0]
        y = y + s * step[1:]
    raise ThetaConvergenceError(
        f"theta did not reach gap {tol} (achieved {best.gap if best else float('inf'):.3e})",
        best.gap if best else float("inf"),
    )


def theta_value(G: Graph, tol: float = 1e-7) -> float:
    return lovasz_theta(G, tol).value
