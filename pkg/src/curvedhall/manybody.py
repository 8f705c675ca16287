"""Lowest-Landau-level trial wavefunctions and filling-factor arithmetic."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, PauliViolationError


@dataclass(frozen=True)
class ParticleConfig:
    """Particle positions z_i in the complex plane with magnetic length z0."""

    points: tuple
    z0: float

    def __post_init__(self):
        object.__setattr__(self, "points",
                           tuple(complex(z) for z in self.points))
        if not 1 <= len(self.points) <= 12:
            raise DomainError("particle count must be between 1 and 12")
        if not self.z0 > 0:
            raise DomainError("z0 must be positive")

    @property
    def n(self):
        return len(self.points)

    def gaussian(self):
        s = sum(abs(z) ** 2 for z in self.points)
        return math.exp(-s / (4.0 * self.z0 * self.z0))

    def to_json(self):
        return json.dumps({"z0": self.z0,
                           "points": [[z.real, z.imag] for z in self.points]})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        pts = [complex(re, im) for re, im in data["points"]]
        return cls(tuple(pts), float(data["z0"]))


def slater_lll(cfg, orbitals):
    """det[z_i^{n_j}] times the common Gaussian factor.

    ``orbitals`` lists the angular-momentum powers; repeats make the
    determinant identically zero and are rejected rather than returned.
    """
    n = list(orbitals)
    if len(n) != cfg.n:
        raise ValueError("need one orbital per particle")
    if any(k < 0 or k != int(k) for k in n):
        raise ValueError("orbitals are nonnegative integers")
    if len(set(n)) != len(n):
        raise PauliViolationError(f"repeated orbital in {tuple(n)}")
    mat = np.array([[z ** k for k in n] for z in cfg.points], dtype=complex)
    return complex(np.linalg.det(mat)) * cfg.gaussian()


def laughlin(cfg, m):
    """Pair-product state: prod_{i<j} (z_i - z_j)^m times the Gaussian."""
    if not (isinstance(m, int) and m >= 1):
        raise ValueError("m must be a positive integer")
    acc = 1.0 + 0j
    z = cfg.points
    for i in range(cfg.n):
        for j in range(i + 1, cfg.n):
            acc *= (z[i] - z[j]) ** m
    return acc * cfg.gaussian()


def antisymmetry_check(cfg, m, rng=None):
    """True iff swapping the first two particles negates (odd m) or
    preserves (even m) the value, to machine precision."""
    if cfg.n < 2:
        return True
    pts = list(cfg.points)
    pts[0], pts[1] = pts[1], pts[0]
    swapped = laughlin(ParticleConfig(tuple(pts), cfg.z0), m)
    ref = laughlin(cfg, m)
    want = -ref if m % 2 else ref
    scale = max(abs(ref), 1e-300)
    return abs(swapped - want) / scale <= 1e-12


def filling_factor(n_particles, b_field, area):
    """Particle density over flux density: nu = 2 pi (N/S) / B."""
    if not (area > 0 and b_field > 0):
        raise DomainError("need S > 0 and B > 0")
    return 2.0 * math.pi * (n_particles / area) / b_field


def filling_quantized(n_particles, n_flux):
    """Exact rational filling N / N_phi."""
    if n_flux < 1:
        raise DomainError("flux-quantum count must be >= 1")
    return Fraction(n_particles, n_flux)
