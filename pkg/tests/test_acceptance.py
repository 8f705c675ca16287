"""Top-level acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line and asserts the stated
tolerance.  The lines bypass output capture so they are always visible
in the terminal.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from curvedhall import (classical, geometry, manybody, models, numverify,
                        specfun, spectra)


@pytest.fixture()
def report_line(capfd):
    """Print one PASS/FAIL line straight to the terminal, then assert."""
    def _line(num, name, ok):
        with capfd.disabled():
            print(f"[ACCEPTANCE {num}] {name}: {'PASS' if ok else 'FAIL'}",
                  flush=True)
        assert ok, f"acceptance criterion {num} ({name}) failed"
    return _line


# -- 1: exact identity suite -------------------------------------------------

def test_acceptance_1_exact_identity_suite(report_line):
    t0 = time.time()
    reports = models.run_identity_suite()
    elapsed = time.time() - t0
    exact = [r for r in reports if r.name != "disk-expansion-vs-compact"]
    ok = (len(reports) == 14
          and all(r.status == "exact-pass" for r in exact)
          and elapsed < 10.0)
    report_line(1, "exact-identity-suite", ok)


# -- 2: disk expansion diff --------------------------------------------------

def test_acceptance_2_disk_expansion_diff(report_line):
    reports = {r.name: r for r in models.run_identity_suite()}
    r = reports["disk-expansion-vs-compact"]
    ok = (r.status == "documented-diff"
          and bool(r.rendered)
          and "B**2" in r.rendered
          and "D" not in r.rendered.replace("B**2", ""))  # zeroth order only
    report_line(2, "disk-expansion-single-term-diff", ok)


# -- 3: spectrum cross-check -------------------------------------------------

def test_acceptance_3_spectrum_oracle_cross_check(report_line):
    t0 = time.time()
    analytic = [spectra.landau_halfplane(5, l).energy for l in range(5)]

    def errors(n_points):
        grid = numverify.FDGrid(1e-3, 80.0, n_points)
        spec = numverify.whittaker_oracle(5.0, grid, 5)
        return [abs(e - a) / a for e, a in zip(spec.energies, analytic)]

    coarse = errors(16_000)
    fine = errors(32_000)
    elapsed = time.time() - t0
    ratios = [c / f for c, f in zip(coarse, fine)]
    ok = (all(e <= 1e-3 for e in coarse)
          and all(3.0 <= r <= 5.0 for r in ratios)
          and elapsed < 60.0)
    report_line(3, "whittaker-oracle-cross-check", ok)


# -- 4: eigenfunction residuals ----------------------------------------------

def test_acceptance_4_eigenfunction_residuals(report_line):
    H = models.hamiltonian_halfplane()
    pts = [{"x": 0.05 * k, "y": y, "beta": 5.0, "a": 1.0, "m": 1.0}
           for k, y in enumerate(np.linspace(0.1, 10.0, 20))]

    def psi(l, c):
        return lambda co: spectra.eigenfunction_halfplane(
            5, l, c, (co["x"], co["y"]))

    worst = 0.0
    for l in range(5):
        energy = spectra.landau_halfplane(5, l).energy
        for c in (0.5, 2.0):
            worst = max(worst,
                        numverify.tuned_residual(H, psi(l, c), energy, pts))
    control = numverify.tuned_residual(
        H, psi(0, 1.0), spectra.landau_halfplane(5, 0).energy + 1, pts)
    ok = worst <= 1e-6 and control >= 0.1
    report_line(4, "eigenfunction-residuals", ok)


# -- 5: flat-geometry checks -------------------------------------------------

def test_acceptance_5_flat_geometry(report_line):
    rationals_ok = all(
        spectra.landau_flat(n).energy_exact == Fraction(2 * n + 1, 2)
        for n in range(8))
    z0 = 1.0

    def psi0(co):
        return spectra.ground_state_flat(complex(co["x"], co["y"]), z0)

    def dzb(co, h=1e-3):
        return 0.5 * (numverify.fd_partial(psi0, co, "x", h)
                      + 1j * numverify.fd_partial(psi0, co, "y", h))

    worst = 0.0
    for k in range(10):
        co = {"x": -1.0 + 0.23 * k, "y": 0.7 - 0.15 * k}
        z = complex(co["x"], co["y"])
        worst = max(worst, abs(dzb(co) + z / (4 * z0 * z0) * psi0(co)))
    ok = rationals_ok and worst <= 1e-8
    report_line(5, "flat-levels-and-annihilation", ok)


# -- 6: classical dynamics ---------------------------------------------------

def test_acceptance_6_classical_dynamics(report_line):
    a, beta = 1.0, 4.0
    s0 = classical.PhaseState(0.0, 0.0, 1.0, -1.0, 0.0)
    period = classical.estimate_period(s0, a, beta)
    steps = 20_000
    traj = classical.integrate_rk4(s0, a, beta, 10 * period / steps, steps)
    drift = classical.drift_summary(traj)
    cx, cy, r, rms = classical.circle_fit(traj)

    def endpoint(dt):
        tr = classical.integrate_rk4(s0, a, beta, dt, int(round(1.0 / dt)))
        s = tr.states[-1]
        return np.array([s.x, s.y, s.px, s.py])

    ref = endpoint(1e-4)
    errs = [float(np.linalg.norm(endpoint(dt) - ref))
            for dt in (8e-3, 4e-3, 2e-3)]
    exps = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    ok = (all(v <= 1e-8 for v in drift.values())
          and rms / r <= 1e-6
          and all(3.7 <= p <= 4.3 for p in exps))
    report_line(6, "classical-drift-circle-convergence", ok)


# -- 7: curvature ------------------------------------------------------------

def test_acceptance_7_curvature(report_line):
    ok = True
    for a in (1.0, 2.0):
        met = geometry.make_metric("halfplane", a=a)
        step = 1e-3
        R = geometry.scalar_curvature_fd(met, (0.2, 1.4), step)
        ok = ok and abs(R - (-2.0 / a**2)) < 10 * step**2
    met = geometry.make_metric("halfplane", a=1.0)
    errs = [abs(geometry.scalar_curvature_fd(met, (0.0, 1.3), s) + 2.0)
            for s in (4e-3, 2e-3)]
    ok = ok and 3.0 <= errs[0] / errs[1] <= 5.0
    report_line(7, "scalar-curvature-fd", ok)


# -- 8: many-body ------------------------------------------------------------

def test_acceptance_8_many_body(report_line):
    rng = random.Random(2026)
    ok = True
    for n in (2, 3, 5):
        ratios = []
        for _ in range(20):
            pts = tuple(complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                        for _ in range(n))
            cfg = manybody.ParticleConfig(pts, 1.0)
            ratios.append(manybody.laughlin(cfg, 1)
                          / manybody.slater_lll(cfg, list(range(n))))
        spread = max(abs(r - ratios[0]) for r in ratios)
        ok = ok and spread <= 1e-10 * abs(ratios[0])
    cfg = manybody.ParticleConfig((0.3 + 0.1j, -1.2j, 0.8 - 0.4j), 1.0)
    pts = list(cfg.points)
    pts[0], pts[1] = pts[1], pts[0]
    swapped = manybody.ParticleConfig(tuple(pts), 1.0)
    ok = ok and manybody.laughlin(swapped, 3) == -manybody.laughlin(cfg, 3)
    ok = ok and manybody.filling_quantized(3, 9) == Fraction(1, 3)
    report_line(8, "many-body-states-and-filling", ok)


# -- 9: special functions ----------------------------------------------------

def test_acceptance_9_special_functions(report_line):
    rng = random.Random(7)
    ok = True
    for _ in range(50):
        n = rng.randint(0, 10)
        tau = rng.randint(0, 5)
        z = rng.uniform(0.1, 8.0)
        lhs = specfun.laguerre(n, tau, z)
        rhs = math.comb(n + tau, n) * specfun.hyp1f1(-n, tau + 1.0, z).value
        ok = ok and abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs), 1e-30)
    for _ in range(50):
        alpha = rng.uniform(0.2, 3.0)
        b = rng.uniform(3.5, 8.0)
        z = rng.uniform(0.1, 5.0)
        lhs = specfun.hyp1f1(alpha, b, z).value
        rhs = math.exp(z) * specfun.hyp1f1(b - alpha, b, -z).value
        ok = ok and abs(lhs - rhs) <= 1e-10 * abs(rhs)
    for n in (0.5, 1.5, 2.5):
        s1, s2 = 1e-6, 2e-6
        slope = (math.log(specfun.whittaker_m(5.0, n, s2))
                 - math.log(specfun.whittaker_m(5.0, n, s1))) / math.log(2.0)
        ok = ok and abs(slope - (0.5 + n)) <= 1e-3
    report_line(9, "special-function-identities", ok)
