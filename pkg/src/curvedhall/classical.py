"""Classical dynamics on the magnetic half-plane.

Hamilton's equations for H = (1/4a^2)[y^2(p_x^2+p_y^2) + 2 beta y p_x
+ beta^2], integrated with classic RK4.  Conserved-quantity drift is the
accuracy metric (the scheme is not symplectic; desk-scale runs are short
enough that drift is itself the thing we measure), and bounded orbits
are verified to be Euclidean circles by a least-squares fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, FitSingularError


@dataclass(frozen=True)
class PhaseState:
    t: float
    x: float
    y: float
    px: float
    py: float

    def __post_init__(self):
        vals = (self.t, self.x, self.y, self.px, self.py)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("non-finite phase-space state")
        if not self.y > 0:
            raise DomainError("state left the upper half-plane (y <= 0)")


@dataclass(frozen=True)
class Trajectory:
    a: float
    beta: float
    dt: float
    states: tuple
    domain_exit: bool = False

    def arrays(self):
        out = np.array([[s.t, s.x, s.y, s.px, s.py] for s in self.states])
        return out.T


def hamilton_rhs(s, a, beta):
    """(xdot, ydot, pxdot, pydot); p_x is exactly conserved."""
    if not s.y > 0:
        raise DomainError("y must be positive")
    y2 = s.y * s.y
    inv = 1.0 / (2.0 * a * a)
    return (
        (y2 * s.px + beta * s.y) * inv,
        y2 * s.py * inv,
        0.0,
        -(s.y * (s.px * s.px + s.py * s.py) + beta * s.px) * inv,
    )


def _rhs_raw(x, y, px, py, a, beta):
    y2 = y * y
    inv = 1.0 / (2.0 * a * a)
    return ((y2 * px + beta * y) * inv, y2 * py * inv, 0.0,
            -(y * (px * px + py * py) + beta * px) * inv)


def integrate_rk4(s0, a, beta, dt, steps):
    """Fixed-step RK4.  If the trajectory reaches y <= 0 the run halts and
    the partial trajectory is returned with ``domain_exit`` set (orbits
    tangent to the boundary are meaningful limits, not errors)."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    states = [s0]
    x, y, px, py = s0.x, s0.y, s0.px, s0.py
    t = s0.t
    h = dt
    for _ in range(steps):
        k1 = _rhs_raw(x, y, px, py, a, beta)
        y2 = y + 0.5 * h * k1[1]
        if y2 <= 0:
            return Trajectory(a, beta, dt, tuple(states), domain_exit=True)
        k2 = _rhs_raw(x + 0.5 * h * k1[0], y2, px + 0.5 * h * k1[2],
                      py + 0.5 * h * k1[3], a, beta)
        y3 = y + 0.5 * h * k2[1]
        if y3 <= 0:
            return Trajectory(a, beta, dt, tuple(states), domain_exit=True)
        k3 = _rhs_raw(x + 0.5 * h * k2[0], y3, px + 0.5 * h * k2[2],
                      py + 0.5 * h * k2[3], a, beta)
        y4 = y + h * k3[1]
        if y4 <= 0:
            return Trajectory(a, beta, dt, tuple(states), domain_exit=True)
        k4 = _rhs_raw(x + h * k3[0], y4, px + h * k3[2], py + h * k3[3], a, beta)
        x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        px += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        py += h / 6.0 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])
        t += h
        if y <= 0 or not all(math.isfinite(v) for v in (x, y, px, py)):
            return Trajectory(a, beta, dt, tuple(states), domain_exit=True)
        states.append(PhaseState(t, x, y, px, py))
    return Trajectory(a, beta, dt, tuple(states))


def conserved_values(s, a, beta):
    """(H, L1, L2, L3), the energy and the three Noether charges.

    L2 is the translation charge p_x (the choice that closes the bracket
    algebra; see the identity suite).  The p_y candidate is
    available through ``conserved_values_both``.
    """
    if not s.y > 0:
        raise DomainError("y must be positive")
    y2 = s.y * s.y
    H = (y2 * (s.px * s.px + s.py * s.py) + 2 * beta * s.y * s.px
         + beta * beta) / (4 * a * a)
    L1 = s.x * s.px + s.y * s.py
    L2 = s.px
    L3 = (y2 - s.x * s.x) * s.px - 2 * s.x * s.y * s.py + 2 * beta * s.y
    return H, L1, L2, L3


def conserved_values_both(s, a, beta):
    """As conserved_values, but reporting both translation candidates."""
    H, L1, L2, L3 = conserved_values(s, a, beta)
    return {"H": H, "L1": L1, "L2_px": L2, "L2_py": s.py, "L3": L3}


def drift_summary(traj):
    """Max relative drift of each conserved scalar along the trajectory."""
    names = ("H", "L1", "L2", "L3")
    ref = conserved_values(traj.states[0], traj.a, traj.beta)
    vals = [conserved_values(s, traj.a, traj.beta) for s in traj.states]
    # a charge whose exact value on the orbit is zero (the preset orbit has
    # L1 = 0) has no scale of its own; judge every charge against the
    # largest charge magnitude the orbit attains
    common = max(abs(v[k]) for v in vals for k in range(4))
    scales = [max(abs(ref[k]), common) for k in range(4)]
    worst = [0.0] * 4
    for now in vals[1:]:
        for k in range(4):
            worst[k] = max(worst[k], abs(now[k] - ref[k]) / scales[k])
    return dict(zip(names, worst))


def circle_fit(traj_or_points):
    """Least-squares circle through (x, y) samples (algebraic Kasa fit).

    Returns (cx, cy, r, rms) with rms the geometric residual
    sqrt(mean((dist - r)^2)).  Collinear data raises FitSingularError.
    """
    if isinstance(traj_or_points, Trajectory):
        pts = np.array([[s.x, s.y] for s in traj_or_points.states])
    else:
        pts = np.asarray(traj_or_points, dtype=float)
    if len(pts) < 10:
        raise ValueError("need at least 10 points for a circle fit")
    centered = pts - pts.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    if sv[-1] < 1e-12 * max(sv[0], 1.0):
        raise FitSingularError("points are collinear; no circle")
    x, y = pts[:, 0], pts[:, 1]
    A = np.column_stack([x, y, np.ones_like(x)])
    rhs = -(x * x + y * y)
    (D, E, F), *_ = np.linalg.lstsq(A, rhs, rcond=None)
    cx, cy = -D / 2.0, -E / 2.0
    r2 = cx * cx + cy * cy - F
    if r2 <= 0:
        raise FitSingularError("degenerate circle fit (nonpositive radius)")
    r = math.sqrt(r2)
    dist = np.hypot(x - cx, y - cy)
    rms = float(np.sqrt(np.mean((dist - r) ** 2)))
    return cx, cy, r, rms


def estimate_period(s0, a, beta, probe_dt=1e-3, max_steps=200_000):
    """Angle-winding period estimate for a bounded orbit: integrate until
    the polar angle about the fitted circle center accumulates 2 pi."""
    warm = integrate_rk4(s0, a, beta, probe_dt, 2000)
    if warm.domain_exit:
        raise DomainError("probe trajectory left the domain; orbit not bounded")
    cx, cy, _, _ = circle_fit(warm)
    x, y, px, py = s0.x, s0.y, s0.px, s0.py
    prev = math.atan2(y - cy, x - cx)
    acc = 0.0
    h = probe_dt
    for i in range(1, max_steps + 1):
        k1 = _rhs_raw(x, y, px, py, a, beta)
        k2 = _rhs_raw(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1],
                      px + 0.5 * h * k1[2], py + 0.5 * h * k1[3], a, beta)
        k3 = _rhs_raw(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1],
                      px + 0.5 * h * k2[2], py + 0.5 * h * k2[3], a, beta)
        k4 = _rhs_raw(x + h * k3[0], y + h * k3[1],
                      px + h * k3[2], py + h * k3[3], a, beta)
        x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        px += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        py += h / 6.0 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])
        if y <= 0:
            raise DomainError("orbit left the domain; not bounded")
        th = math.atan2(y - cy, x - cx)
        d = th - prev
        if d > math.pi:
            d -= 2 * math.pi
        elif d < -math.pi:
            d += 2 * math.pi
        acc += d
        prev = th
        if abs(acc) >= 2 * math.pi:
            # linear interpolation inside the last step
            over = abs(acc) - 2 * math.pi
            frac = 1.0 - over / abs(d) if d else 0.0
            return (i - 1 + frac) * probe_dt
    raise DomainError("no full revolution within the probe window")


def trajectory_csv(traj, stream):
    """CSV with conserved columns, full double precision."""
    stream.write("t,x,y,px,py,H,L1,L2,L3\n")
    for s in traj.states:
        H, L1, L2, L3 = conserved_values(s, traj.a, traj.beta)
        row = (s.t, s.x, s.y, s.px, s.py, H, L1, L2, L3)
        stream.write(",".join(f"{v:.17g}" for v in row) + "\n")
