"""Independent numerical oracles.

Nothing in this module trusts the symbolic layer: differential operators
are applied by finite-difference stencils, separated radial spectra come
from a Sturm-Liouville eigensolver, and norms from adaptive quadrature.
Agreement between these oracles and the closed forms in ``spectra`` is
the cross-check the package exists for.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import product as _iterprod

import numpy as np

from .errors import (NonNormalizableError, ResolutionError, SingularityError)


@dataclass(frozen=True)
class FDGrid:
    """Uniform interior grid on (s_min, s_max) with Dirichlet endpoints."""

    s_min: float
    s_max: float
    n_points: int

    def __post_init__(self):
        if not (0 < self.s_min < self.s_max):
            raise ValueError("need 0 < s_min < s_max")
        if self.n_points < 100:
            raise ValueError("n_points must be >= 100")

    @property
    def h(self):
        return (self.s_max - self.s_min) / (self.n_points + 1)

    def nodes(self):
        return self.s_min + self.h * np.arange(1, self.n_points + 1)


@dataclass(frozen=True)
class OracleSpectrum:
    mu: tuple
    energies: tuple
    grid: FDGrid
    beta: float

    def bound_states(self):
        return tuple(v for v in self.mu if v < 0.25)


# ---------------------------------------------------------------------------
# finite-difference application of DiffOps
# ---------------------------------------------------------------------------

# 4th-order central stencils, exact on polynomials through degree 5
_STENCILS = {
    0: ((0, 1.0),),
    1: ((-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)),
    2: ((-2, -1 / 12), (-1, 16 / 12), (0, -30 / 12), (1, 16 / 12),
        (2, -1 / 12)),
}


def fd_partial(f, coords, var, h, order=1):
    """4th-order central difference of a scalar field along one variable."""
    if order not in _STENCILS:
        raise ValueError("stencils cover derivative orders 0..2")
    acc = 0j
    for off, w in _STENCILS[order]:
        shifted = dict(coords)
        shifted[var] = coords[var] + off * h
        acc += w * f(shifted)
    return acc / h ** order


def fd_apply(H, f, point, h):
    """Evaluate (H f)(point) for a DiffOp with numeric parameter bindings.

    Coefficients are evaluated exactly at the point; each derivative
    monomial becomes a tensor product of 4th-order central stencils.
    ``point`` must bind every ring variable; ``f`` is called with a dict
    of the geometric variables only.
    """
    gv = H.geom_vars
    out = 0j
    for alpha, coeff in H.terms.items():
        if any(a > 2 for a in alpha):
            raise ValueError("stencils cover derivative orders 0..2")
        try:
            c = coeff.eval(point)
        except ZeroDivisionError:
            raise SingularityError(
                f"coefficient pole at {point!r}") from None
        acc = 0j
        for combo in _iterprod(*(_STENCILS[a] for a in alpha)):
            coords = {v: point[v] for v in gv}
            w = 1.0
            for v, (off, wt) in zip(gv, combo):
                coords[v] += off * h
                w *= wt
            acc += w * f(coords)
        out += c * acc / h ** sum(alpha)
    return out


def residual_check(H, psi, energy, points, h):
    """Max over points of |H psi - E psi| / (|E||psi| + guard)."""
    worst = 0.0
    for pt in points:
        val = psi({v: pt[v] for v in H.geom_vars})
        res = fd_apply(H, psi, pt, h) - energy * val
        denom = abs(energy) * abs(val) + 1e-300
        worst = max(worst, abs(res) / denom)
    return worst


def tuned_residual(H, psi, energy, points, hs=(1e-2, 3e-3, 1e-3)):
    """Best residual over a small ladder of step sizes (the FD error has
    an h^4 regime and a rounding plateau; the minimum sits between)."""
    return min(residual_check(H, psi, energy, points, h) for h in hs)


# ---------------------------------------------------------------------------
# tridiagonal eigenvalues by Sturm-sequence bisection
# ---------------------------------------------------------------------------

def _sturm_count(d, e2, x):
    """Number of eigenvalues < x (negative pivots of the LDL^T recursion)."""
    count = 0
    q = 1.0
    for i in range(len(d)):
        q = d[i] - x - (e2[i - 1] / q if i else 0.0)
        if q == 0.0:
            q = -1e-300
        if q < 0.0:
            count += 1
    return count


def tridiag_eigs(diag, offdiag, k, tol=1e-12, upper=None):
    """k smallest eigenvalues of a symmetric tridiagonal matrix."""
    d = [float(v) for v in diag]
    e = [float(v) for v in offdiag]
    n = len(d)
    if len(e) != max(n - 1, 0):
        raise ValueError("offdiag must have length n-1")
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if n == 1:
        return [d[0]]
    e2 = [v * v for v in e]
    radius = [0.0] * n
    for i in range(n):
        r = 0.0
        if i > 0:
            r += abs(e[i - 1])
        if i < n - 1:
            r += abs(e[i])
        radius[i] = r
    lo = min(di - ri for di, ri in zip(d, radius))
    hi = max(di + ri for di, ri in zip(d, radius))
    if upper is not None:
        # caller-supplied search ceiling: eigenvalues above it converge to
        # the ceiling itself, which the caller can detect and reject
        hi = min(hi, float(upper))
    out = []
    for j in range(1, k + 1):
        a, b = lo, hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid == a or mid == b:
                break
            if _sturm_count(d, e2, mid) >= j:
                b = mid
            else:
                a = mid
        out.append(0.5 * (a + b))
        lo = out[-1]  # eigenvalues are sorted; narrow the next search
    return out


# ---------------------------------------------------------------------------
# Whittaker-equation oracle
# ---------------------------------------------------------------------------

def whittaker_oracle(beta, grid, k_levels, m=1.0, a=1.0):
    """Discrete spectrum of -phi'' + (1/4 - beta/s) phi = mu phi / s^2.

    Second-order central differences with Dirichlet ends give the
    generalized problem A phi = mu W phi, W = diag(1/s_i^2).  The
    congruence B = S A S with S = diag(s_i) is symmetric tridiagonal and
    has the mu values as ordinary eigenvalues.  Bound states are mu < 1/4;
    energies follow as (mu + beta^2) / (2 m a^2).

    The left Dirichlet ghost sits at s = 0, where every bound state
    vanishes like s^{1/2+n}; a wall at any s0 > 0 instead shifts the
    shallowest eigenvalue by O(s0^{2n}), which for n = 1/2 is linear in
    s0 and would swamp the O(h^2) scheme error.  ``grid.s_min`` is the
    excluded singular neighborhood and must lie below the first lattice
    node.
    """
    if not beta > 0.5:
        raise ValueError("beta must exceed 1/2 for any bound state")
    if k_levels < 1:
        raise ValueError("k_levels must be >= 1")
    h = grid.s_max / (grid.n_points + 1)
    if grid.s_min >= h:
        raise ValueError(
            "s_min excludes the first lattice node; lower it or coarsen")
    s = h * np.arange(1, grid.n_points + 1)
    inv_h2 = 1.0 / (h * h)
    diag = s * s * (2.0 * inv_h2 + 0.25) - beta * s
    off = -(s[:-1] * s[1:]) * inv_h2
    # all bound states sit below mu = 1/4; capping the search window there
    # (with headroom) both speeds bisection and turns an under-resolved
    # request into a detectable pile-up at the cap
    mu = tridiag_eigs(diag, off, k_levels, upper=1.0)
    if any(v >= 0.25 for v in mu):
        raise ResolutionError(
            f"grid resolves only {sum(v < 0.25 for v in mu)} bound states, "
            f"{k_levels} requested")
    energies = tuple((v + beta * beta) / (2.0 * m * a * a) for v in mu)
    return OracleSpectrum(tuple(mu), energies, grid, float(beta))


def oracle_report(spec, analytic):
    """JSON report pairing oracle energies with closed-form values."""
    relerr = [abs(e - an) / abs(an)
              for e, an in zip(spec.energies, analytic)]
    return json.dumps(
        {
            "beta": spec.beta,
            "grid": {"smin": spec.grid.s_min, "smax": spec.grid.s_max,
                     "n": spec.grid.n_points},
            "mu": list(spec.mu),
            "energies": list(spec.energies),
            "analytic": list(analytic),
            "relerr": relerr,
        },
        indent=2,
    )


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _simpson(f, a, b, fa, fm, fb):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = _simpson(f, a, m, fa, flm, fm)
    right = _simpson(f, m, b, fm, frm, fb)
    if depth <= 0 or abs(left + right - whole) < 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return (_adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + _adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1))


def adaptive_simpson(f, a, b, tol=1e-12, max_depth=40):
    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    whole = _simpson(f, a, b, fa, fm, fb)
    return _adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth)


def norm_quadrature(psi, beta, l, c, a=1.0, cutoff_scale=40.0):
    """Squared norm per unit x-length in the invariant measure.

    The measure weight is a^2 / y^2; |psi| is x-independent for the
    separated eigenfunctions, so the x-integral factors out.  The
    y-integral runs over (0, cutoff) with the cutoff set by the e^{-2cy}
    tail; normalizability requires beta - l > 1/2.
    """
    if beta - l <= 0.5:
        raise NonNormalizableError(
            f"beta - l = {beta - l} <= 1/2: |psi|^2 / y^2 not integrable")
    upper = cutoff_scale / (2.0 * c) + 5.0

    def integrand(y):
        if y <= 0.0:
            return 0.0
        v = psi({"x": 0.0, "y": y})
        return (a * a) * (v.real * v.real + v.imag * v.imag) / (y * y)

    return adaptive_simpson(integrand, 1e-8, upper)
