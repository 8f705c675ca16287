"""Special functions for the closed-form eigenfunctions.

Pochhammer symbols, generalized Laguerre polynomials (three-term
recurrence), the confluent hypergeometric series 1F1, and the regular
Whittaker function M.  Double precision throughout; the truncating
(polynomial) case of 1F1 is detected a priori from the first parameter,
which is exactly where the bound states live.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceError, PoleError

TERM_CAP = 10_000


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    converged: bool
    est_abs_error: float


def _is_nonpositive_int(v, tol=1e-12):
    return v <= 0.5 and abs(v - round(v)) < tol and round(v) <= 0


def pochhammer(tau, n):
    """(tau)_n = tau (tau+1) ... (tau+n-1); empty product is 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = 1.0
    for k in range(n):
        out *= tau + k
    return out


def laguerre(n, tau, z):
    """Generalized Laguerre polynomial L_n^(tau)(z) by the three-term
    recurrence, run in exact rational arithmetic (every float is a
    rational, and the polynomial degree is small, so exactness is free
    and removes the cancellation loss near the polynomial's roots)."""
    if n < 0:
        raise ValueError("laguerre needs n >= 0")
    if n == 0:
        return 1.0
    tau, z = Fraction(tau), Fraction(z)
    prev, cur = Fraction(1), tau + 1 - z
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + tau - z) * cur
                          - (k - 1 + tau) * prev) / k
    return float(cur)


def hyp1f1(alpha, b, z, tol=1e-14):
    """1F1(alpha; b; z) = sum_k (alpha)_k z^k / ((b)_k k!).

    Truncates exactly when alpha is a nonpositive integer; otherwise sums
    until the term magnitude drops below ``tol`` with a geometric tail
    bound.  A nonpositive-integer b without prior truncation is a pole.
    """
    truncates = _is_nonpositive_int(alpha)
    n_stop = -round(alpha) if truncates else None
    if _is_nonpositive_int(b):
        if not (truncates and n_stop <= -round(b)):
            raise PoleError(f"1F1 pole: b = {b} is a nonpositive integer")
    if truncates:
        # polynomial case: sum exactly in rational arithmetic (floats are
        # rationals); this is where the bound-state eigenfunctions live
        # and where alternating-sign cancellation would otherwise bite
        alpha_q, b_q, z_q = Fraction(round(alpha)), Fraction(b), Fraction(z)
        total_q = term_q = Fraction(1)
        for k in range(n_stop):
            term_q *= (alpha_q + k) * z_q / ((b_q + k) * (k + 1))
            total_q += term_q
        return SeriesResult(float(total_q), n_stop + 1, True, 0.0)
    total = 1.0
    term = 1.0
    k = 0
    while True:
        if k >= TERM_CAP:
            raise ConvergenceError("1F1 series exceeded term cap")
        ratio = (alpha + k) * z / ((b + k) * (k + 1))
        term *= ratio
        total += term
        k += 1
        if not truncates and abs(term) < tol:
            # crude geometric tail estimate once terms are decaying
            nxt = abs((alpha + k) * z / ((b + k) * (k + 1)))
            if nxt < 0.5:
                est = abs(term) * nxt / (1.0 - nxt)
                return SeriesResult(total, k + 1, True, est)


def whittaker_m(beta, n, s, tol=1e-14):
    """M_{beta,n}(s) = e^{-s/2} s^{1/2+n} 1F1(1/2 + n - beta; 1 + 2n; s).

    The mirror M_{beta,-n} is this function with the sign of n flipped.
    """
    if s <= 0:
        raise ValueError("whittaker_m needs s > 0")
    f = hyp1f1(0.5 + n - beta, 1.0 + 2.0 * n, s, tol)
    return math.exp(-s / 2.0) * s ** (0.5 + n) * f.value
