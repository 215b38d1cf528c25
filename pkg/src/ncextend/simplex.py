"""Exact rational simplex with Bland's rule.

Solves ``max c.y  s.t.  A y <= b, y >= 0`` for ``b >= 0`` (so the slack
basis is feasible) and reads an optimal dual solution off the final tableau.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LPError(RuntimeError):
    pass


@dataclass
class LPResult:
    value: Fraction
    primal: list[Fraction]
    dual: list[Fraction]
    pivots: int


def maximize(c: list, A: list[list], b: list, max_pivots: int = 100000) -> LPResult:
    m = len(A)
    n = len(c)
    if any(Fraction(x) < 0 for x in b):
        raise LPError("right-hand side must be nonnegative")
    # tableau rows: [A | I | b]; objective row holds reduced costs c_j - z_j
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]] + [Fraction(int(k == i)) for k in range(m)]
        row.append(Fraction(b[i]))
        T.append(row)
    obj = [Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    pivots = 0
    while True:
        enter = next((j for j in range(n + m) if obj[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise LPError("linear program is unbounded")
        piv = T[leave][enter]
        prow = [x / piv for x in T[leave]]
        T[leave] = prow
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    T[i] = [x - f * y for x, y in zip(T[i], prow)]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, prow)]
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise LPError("pivot limit reached")
    primal = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            primal[j] = T[i][-1]
    dual = [-obj[n + i] for i in range(m)]
    value = -obj[-1]
    return LPResult(value, primal, dual, pivots)
