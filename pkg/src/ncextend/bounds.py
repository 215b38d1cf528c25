"""Closed-form exponent bounds.

* The F_p bound: if a Hadamard matrix of size 4p exists and α is admissible
  for the F_p fractional Haemers bound, then with n = 4p - 1

      α ≥ [log C(n, 2p) - log Σ_{i<p} C(n, i) - log n] / log n
        ≥ [n (h(1/2 + 1/(2n)) - h(1/4 + 1/(4n))) - log(n (n + 1))] / log n.

* The clique-cover ratio log χ̄_f(G) / log ξ̄(G), a lower bound on any
  admissible exponent for χ̄_f, evaluated on complements of Hadamard graphs.

The binomial form starts from exact integers and takes logarithms with
mpmath at 60 significant digits. All logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .graph import hadamard_graph, is_prime, sign_vector
from .parameters import GuardError, fractional_chromatic_number, max_independent_set
from .representations import verify_orthogonal_rank_rep

DIGITS = 60
OMEGA_K_GUARD = 1


def _h_mp(x) -> mpmath.mpf:
    x = mpmath.mpf(x)
    if x == 0 or x == 1:
        return mpmath.mpf(0)
    return -x * mpmath.log(x, 2) - (1 - x) * mpmath.log(1 - x, 2)


def binary_entropy(x) -> float:
    """h(x) = -x log x - (1-x) log(1-x), base 2, with h(0) = h(1) = 0."""
    if not 0 <= x <= 1:
        raise ValueError(f"binary entropy needs 0 <= x <= 1, got {x}")
    with mpmath.workdps(30):
        return float(_h_mp(mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator))


@dataclass
class FpBoundReport:
    p: int
    n: int
    binomial_form: mpmath.mpf
    entropy_form: mpmath.mpf
    central_binomial: int  # C(4p-1, 2p)
    tail_sum: int  # Σ_{i<p} C(4p-1, i)
    symmetry_ok: bool  # C(4p-1, 2p) == C(4p-1, 2p-1)
    hadamard_assumption: str

    @property
    def chain_holds(self) -> bool:
        return self.binomial_form >= self.entropy_form

    @property
    def nontrivial(self) -> bool:
        return self.binomial_form > 1

    @property
    def note(self) -> str:
        if self.nontrivial:
            return "admissible exponents are bounded below by the binomial form"
        return "no constraint beyond alpha >= 1"


def fp_exponent_lower_bound(p: int, digits: int = DIGITS) -> FpBoundReport:
    """Both displayed forms of the F_p lower bound on admissible exponents."""
    if not isinstance(p, int) or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    n = 4 * p - 1
    central = math.comb(n, 2 * p)
    tail = sum(math.comb(n, i) for i in range(p))
    symmetric = central == math.comb(n, 2 * p - 1)
    if not symmetric or central <= 0 or tail <= 0:
        raise ArithmeticError("binomial self-check failed")
    with mpmath.workdps(digits):
        log_n = mpmath.log(n, 2)
        binom = (mpmath.log(central, 2) - mpmath.log(tail, 2) - log_n) / log_n
        half = mpmath.mpf(1) / 2 + mpmath.mpf(1) / (8 * p - 2)
        quarter = mpmath.mpf(1) / 4 + mpmath.mpf(1) / (16 * p - 4)
        ent = (n * (_h_mp(half) - _h_mp(quarter)) - mpmath.log(16 * p * p - 4 * p, 2)) / log_n
    if p == 17:
        hadamard = "assumed: a Hadamard matrix of size 68 exists (Paley construction, 67 prime)"
    else:
        hadamard = f"assumed, not verified: a Hadamard matrix of size {4 * p} exists"
    return FpBoundReport(p, n, binom, ent, central, tail, symmetric, hadamard)


def fcc_exponent_ratio(chi_f_lb, xi_complement_ub: int) -> float:
    """log χ̄_f / log ξ̄, a lower bound on any admissible exponent for χ̄_f."""
    chi = Fraction(chi_f_lb)
    if chi <= 1:
        raise ValueError("fractional clique cover bound must exceed 1")
    if xi_complement_ub < 2:
        raise ValueError("complement orthogonal rank bound must be at least 2")
    with mpmath.workdps(30):
        num = mpmath.log(mpmath.mpf(chi.numerator), 2) - mpmath.log(mpmath.mpf(chi.denominator), 2)
        return float(num / mpmath.log(xi_complement_ub, 2))


@dataclass
class OmegaReport:
    k: int
    n: int
    vertices: int
    alpha: int
    independent_set: list[int]
    chi_f: Fraction
    orthogonal_rank_ub: int
    ratio: float

    @property
    def inequality_holds(self) -> bool:
        return self.chi_f >= Fraction(self.vertices, self.alpha)


def omega_fcc_report(k: int = 1, guard: int = OMEGA_K_GUARD) -> OmegaReport:
    """Exact α(Ω_4k), χ_f(Ω_4k) and the ratio for G = complement of Ω_4k."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > guard:
        raise GuardError(f"k = {k} exceeds guard {guard}")
    n = 4 * k
    G = hadamard_graph(n, guard=max(n, 24))
    ind = max_independent_set(G, guard=G.n)
    chi = fractional_chromatic_number(G)
    vectors = [list(sign_vector(v, n)) for v in range(G.n)]
    xi = verify_orthogonal_rank_rep(G, vectors)
    report = OmegaReport(k, n, G.n, len(ind), ind, chi, xi, fcc_exponent_ratio(chi, xi))
    if not report.inequality_holds:
        raise ArithmeticError("chi_f >= |V| / alpha failed")
    return report
