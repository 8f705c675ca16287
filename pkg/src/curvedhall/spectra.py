"""Closed-form spectra and eigenfunctions for the three geometries.

Energies are computed in exact rational arithmetic whenever the inputs
are rational (int / Fraction), with the float value derived from the
exact one; otherwise plain floats are used.  Natural units hbar = c = e
= 1 are the default for the curved geometries, matching the conventions
of the curved-space sections; the flat Landau levels keep hbar and
omega_c explicit.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NoBoundStateError
from .specfun import laguerre


@dataclass(frozen=True)
class SpectrumLine:
    geometry: str                       # flat | halfplane | sphere
    quantum_numbers: dict
    energy: float
    energy_exact: Fraction | None = None


def _exactable(*values):
    return all(isinstance(v, (int, Fraction)) for v in values)


def _line(geometry, qn, exact_expr, float_expr, args):
    if _exactable(*args):
        e = exact_expr(*[Fraction(v) for v in args])
        return SpectrumLine(geometry, qn, float(e), e)
    return SpectrumLine(geometry, qn, float_expr(*[float(v) for v in args]), None)


def landau_flat(n, omega_c=1, hbar=1):
    """E_n = (n + 1/2) hbar omega_c."""
    if n < 0:
        raise ValueError("Landau index n must be nonnegative")
    return _line("flat", {"n": n},
                 lambda w, h: (Fraction(2 * n + 1, 2)) * h * w,
                 lambda w, h: (n + 0.5) * h * w,
                 (omega_c, hbar))


def halfplane_window(beta):
    """Allowed integers l: 0 <= l < beta - 1/2 (strict inequality)."""
    return [l for l in range(max(0, math.ceil(float(beta) - 0.5)))
            if l < float(beta) - 0.5]


def halfplane_level_count(beta):
    if not float(beta) > 0:
        raise ValueError("beta must be positive")
    return len(halfplane_window(beta))


def _check_window(beta, l):
    if not (0 <= l and l < float(beta) - 0.5):
        raise NoBoundStateError(
            f"l={l} outside the bound-state window 0 <= l < beta - 1/2 "
            f"(beta={beta})")


def landau_halfplane(beta, l, m=1, a=1):
    """E_{beta,l} = (1/2 m a^2) (beta^2 + 1/4 - (l - beta + 1/2)^2)."""
    _check_window(beta, l)
    return _line(
        "halfplane", {"l": l, "beta": beta},
        lambda b, mm, aa: (b * b + Fraction(1, 4) - (l - b + Fraction(1, 2)) ** 2)
        / (2 * mm * aa * aa),
        lambda b, mm, aa: (b * b + 0.25 - (l - b + 0.5) ** 2) / (2 * mm * aa * aa),
        (beta, m, a))


def energy_from_whittaker_index(n, beta, m=1, a=1):
    """E = (1/2 m a^2)(1/4 - n^2 + beta^2); n = beta - l - 1/2 recovers
    the half-plane Landau formula exactly."""
    if _exactable(n, beta, m, a):
        n, beta, m, a = map(Fraction, (n, beta, m, a))
        return float((Fraction(1, 4) - n * n + beta * beta) / (2 * m * a * a))
    return (0.25 - float(n) ** 2 + float(beta) ** 2) / (2 * float(m) * float(a) ** 2)


def sphere_spectrum(l, k, rho=1):
    """E_l = (2/rho^2) [ (l - k/2)(l - k/2 + 1) - k^2/4 ]."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    if not float(rho) > 0:
        raise ValueError("rho must be positive")
    return _line(
        "sphere", {"l": l, "k": k},
        lambda kk, rr: 2 * ((l - kk / 2) * (l - kk / 2 + 1) - kk * kk / 4) / (rr * rr),
        lambda kk, rr: 2.0 * ((l - kk / 2) * (l - kk / 2 + 1) - kk * kk / 4) / (rr * rr),
        (k, rho))


def eigenfunction_halfplane(beta, l, c, point):
    """Psi = e^{-i c x - c y} y^{beta-l} L_l^{(2 beta - 2 l - 1)}(2 c y),
    unnormalized.  |Psi| is x-independent; c > 0 labels the degenerate
    copies of each level."""
    _check_window(beta, l)
    if not c > 0:
        raise ValueError("separation constant c must be positive")
    x, y = point
    if not y > 0:
        raise ValueError("point must lie in the upper half-plane")
    beta = float(beta)
    return (cmath.exp(-1j * c * x - c * y) * y ** (beta - l)
            * laguerre(l, 2 * beta - 2 * l - 1, 2 * c * y))


def ground_state_flat(z, z0):
    """psi_0 = exp(-|z|^2 / 4 z0^2), the holomorphic factor set to 1."""
    if not z0 > 0:
        raise ValueError("magnetic length z0 must be positive")
    return cmath.exp(-abs(z) ** 2 / (4.0 * z0 * z0))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def spectrum_json(geometry, params, lines):
    return json.dumps({
        "geometry": geometry,
        "params": params,
        "levels": [{"qn": line.quantum_numbers, "energy": line.energy}
                   for line in lines],
    }, indent=2)


def spectrum_csv(lines):
    rows = ["qn,energy"]
    for line in lines:
        qn = ";".join(f"{k}={v}" for k, v in line.quantum_numbers.items())
        rows.append(f"{qn},{line.energy!r}")
    return "\n".join(rows) + "\n"
