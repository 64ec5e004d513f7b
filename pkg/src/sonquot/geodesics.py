"""Geodesics of ``K\\G`` (and, for comparison, of hyperbolic space) in the chart.

The equation ``q'' = -Gamma(q', q')`` uses the numerically differentiated
connection from :mod:`sonquot.curvature`, so any batch metric function can
be integrated. For ``n = 2`` the explicit polynomial geodesic system is
available as an independent right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import chart
from .curvature import christoffel_coords
from .errors import DomainError, IntegrationError, StepError
from .metric import quotient_metric_coords
from .points import ChartPoint

BOUNDARY_MARGIN = 1e-6


@dataclass(frozen=True, eq=False)
class GeodesicState:
    position: ChartPoint
    velocity: np.ndarray

    def __post_init__(self):
        v = np.array(self.velocity, dtype=float).reshape(-1)
        if v.size != self.position.n or not np.all(np.isfinite(v)):
            raise DomainError("velocity must be finite with one entry per coordinate")
        object.__setattr__(self, "velocity", v)

    @property
    def vector(self) -> np.ndarray:
        """Flat state ``(q, q')``."""
        return np.concatenate([self.position.coords, self.velocity])

    @classmethod
    def from_vector(cls, s) -> GeodesicState:
        s = np.asarray(s, dtype=float)
        n = s.size // 2
        return cls(ChartPoint.from_coords(s[:n]), s[n:])


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples of an integrated geodesic.

    ``q`` and ``v`` have one row per entry of ``t``; ``speed`` is the metric
    norm of ``v``. ``status`` is ``"ok"`` or a failure description.
    """

    t: np.ndarray
    q: np.ndarray
    v: np.ndarray
    speed: np.ndarray
    status: str = "ok"

    @property
    def end(self) -> ChartPoint:
        return ChartPoint.from_coords(self.q[-1])

    @property
    def speed_drift(self) -> float:
        return float(np.max(np.abs(self.speed - self.speed[0])))

    def length(self) -> float:
        """Arc length by the trapezoid rule on the sampled speeds."""
        return float(np.trapezoid(self.speed, self.t)) if self.t.size > 1 else 0.0


def geodesic_rhs(s: GeodesicState, metric=quotient_metric_coords) -> np.ndarray:
    """Time derivative ``(q', q'')`` of the flat state."""
    return _rhs_vector(s.vector, metric)


def _rhs_vector(state, metric):
    n = state.size // 2
    q, v = state[:n], state[n:]
    gamma = christoffel_coords(q, metric=metric)
    return np.concatenate([v, -np.einsum("kij,i,j->k", gamma, v, v)])


def geodesic_rhs_2d_closed(s: GeodesicState) -> np.ndarray:
    """Right-hand side from the explicit polynomial geodesic system of ``K\\G``, ``n = 2``."""
    if s.position.n != 2:
        raise DomainError("the explicit geodesic system is for n = 2")
    x, y = float(s.position.x[0]), s.position.y
    dx, dy = s.velocity
    x2, y2 = x * x, y * y
    lead_x = (2 * x2 * y2 * y + (x2 + 1) ** 2 * y + y2 * y2 * y) ** 2
    rest_x = (
        -2 * y * dx * dy * (x2**3 * (4 * y2 + 2) + x2 * x2 * (6 * y2 * y2 + 8 * y2))
        - 2 * y * dx * dy * (2 * x2 * (2 * y2**3 + y2 * y2 + 2 * y2 - 1) + x2**4 + y2**4 - 1)
        - 4 * x * y2 * dx * dx * (x2 + 1) ** 2
        + x * dy * dy * (4 * (x2 + 1) * y2**3 + 2 * (3 * x2 * x2 + 4 * x2 + 1) * y2 * y2)
        + x * dy * dy * (4 * (x2 + 1) ** 3 * y2 + (x2 + 1) ** 4 + y2**4)
    )
    lead_y = y * (2 * x2 * (y2 + 1) + x2 * x2 + y2 * y2 + 1) ** 2
    rest_y = (
        -4 * x * y * dx * dy * (x2 * x2 * (3 * y2 + 1) + x2 * (3 * y2 * y2 + 4 * y2 - 1))
        - 4 * x * y * dx * dy * (x2**3 + y2**3 + y2 * y2 + y2 - 1)
        + 2 * y2 * dx * dx * (3 * x2 * x2 * (y2 - 1) + x2 * (y2 + 1) * (3 * y2 - 5))
        + 2 * y2 * dx * dx * (x2**3 + y2**3 - y2 * y2 - y2 - 1)
        + dy * dy * (2 * x2**3 * (y2 + 1) + 4 * x2 * x2 * y2 - 2 * x2 * (y2**3 + y2 * y2 - y2 + 1))
        + dy * dy * (x2**4 - (y2 * y2 + 1) ** 2)
    )
    if lead_x == 0.0 or lead_y == 0.0:
        raise DomainError("geodesic system degenerates at y = 0")
    return np.array([dx, dy, -rest_x / lead_x, -rest_y / lead_y])


def speed(q, v, metric=quotient_metric_coords) -> np.ndarray:
    G = metric(np.atleast_2d(q))
    v = np.atleast_2d(v)
    return np.sqrt(np.einsum("bi,bij,bj->b", v, G, v))


def integrate(
    s0: GeodesicState,
    T: float,
    tol: float = 1e-10,
    metric=quotient_metric_coords,
    t_eval=None,
    samples: int = 101,
) -> Trajectory:
    """Integrate the geodesic through ``s0`` on ``[0, T]``.

    Uses an adaptive embedded Runge-Kutta 8(5,3) pair with ``rtol = atol =
    tol`` and samples its dense output at ``t_eval`` (default: ``samples``
    equispaced times). Approaching the boundary ``y = 0`` stops the
    integration with :class:`IntegrationError` carrying the partial
    trajectory.
    """
    if not (1e-12 <= tol <= 1e-6):
        raise DomainError("tol must lie in [1e-12, 1e-6]")
    if T < 0:
        raise DomainError("integration time must be non-negative")
    n = s0.position.n
    if T == 0:
        q = s0.position.coords[None, :]
        v = s0.velocity[None, :]
        return Trajectory(np.zeros(1), q, v, speed(q, v, metric))
    t_eval = np.linspace(0.0, T, samples) if t_eval is None else np.asarray(t_eval, dtype=float)

    def near_boundary(t, state):
        return state[n - 1] - 50.0 * BOUNDARY_MARGIN

    near_boundary.terminal = True

    def rhs(t, state):
        try:
            return _rhs_vector(state, metric)
        except (StepError, DomainError):
            return np.full(state.shape, np.nan)

    sol = solve_ivp(
        rhs,
        (0.0, T),
        s0.vector,
        method="DOP853",
        rtol=tol,
        atol=tol,
        dense_output=True,
        events=near_boundary,
    )
    if sol.status != 0 or not np.all(np.isfinite(sol.y)):
        reached = sol.t[-1]
        keep = t_eval[t_eval <= reached]
        states = sol.sol(keep).T if keep.size else s0.vector[None, :]
        partial = Trajectory(
            keep if keep.size else np.zeros(1),
            states[:, :n],
            states[:, n:],
            speed(states[:, :n], states[:, n:], metric),
            status=sol.message if sol.status != 1 else "boundary approached",
        )
        raise IntegrationError(f"integration stopped at t={reached:.6g}: {partial.status}", partial)
    states = sol.sol(t_eval).T
    q, v = states[:, :n], states[:, n:]
    return Trajectory(t_eval, q, v, speed(q, v, metric))


def distance_from_i(p: ChartPoint) -> float:
    """Distance from ``i = (0, 1)``; identical in ``K\\G`` and in hyperbolic space."""
    c = (1.0 + float(p.x @ p.x) + p.y * p.y) / (2.0 * p.y)
    assert c >= 1.0 - 1e-12, "cosh of a distance is at least 1"
    return float(np.arccosh(max(c, 1.0)))


def direction_from_i(p: ChartPoint) -> np.ndarray:
    """Unit initial velocity at ``i`` of the geodesic from ``i`` through ``p``.

    The orbit sphere through ``p`` is the image of the axis point
    ``(0, e^d)`` under the compact group; it is parametrised as
    ``(sinh(d) u', sinh(d) u_n + cosh(d))`` with ``u`` on the unit sphere,
    and ``u`` is the initial direction.
    """
    d = distance_from_i(p)
    if d == 0.0:
        raise DomainError("direction from i to i is undefined")
    u = np.append(p.x, p.y - np.cosh(d)) / np.sinh(d)
    return u / np.linalg.norm(u)


def axis_ray(t) -> np.ndarray:
    """Coordinates of ``gamma(t) = (0, e^t)``, the unit-speed geodesic along the axis (n = 2)."""
    t = np.asarray(t, dtype=float)
    return np.stack([np.zeros_like(t), np.exp(t)], axis=-1)


def fit_hyperbola(q) -> tuple:
    """Least-squares ``alpha`` for ``x^2 + 2 alpha x y - y^2 + 1 = 0``; returns ``(alpha, max residual)``."""
    q = np.asarray(q, dtype=float)
    x, y = q[:, 0], q[:, 1]
    base = x * x - y * y + 1.0
    a = 2.0 * x * y
    denom = float(a @ a)
    alpha = -float(a @ base) / denom if denom > 0 else 0.0
    return alpha, float(np.max(np.abs(base + alpha * a)))


def half_circle_residual(q, alpha: float) -> float:
    """Max residual of ``(x - alpha)^2 + y^2 = alpha^2 + 1`` over the rows of ``q``."""
    q = np.asarray(q, dtype=float)
    return float(np.max(np.abs((q[:, 0] - alpha) ** 2 + q[:, 1] ** 2 - alpha * alpha - 1.0)))


def tau_geodesic_check(k, t: float) -> float:
    """Residual of ``tau(r(k) gamma(t)) = l(k^{-1}) gamma(-t)`` along the axis ray (n = 2)."""
    if np.asarray(k).shape != (3, 3):
        raise DomainError("tau_geodesic_check is stated for n = 2")
    g_t = ChartPoint.from_coords(axis_ray(t))
    g_minus = ChartPoint.from_coords(axis_ray(-t))
    lhs = chart.tau(chart.r_action(k, g_t))
    rhs = chart.l_action(np.asarray(k).T, g_minus)
    return float(np.max(np.abs(lhs.coords - rhs.coords)))


def hyperbolic_geodesic_residual(traj: Trajectory) -> float:
    """Distance of a trajectory from the classical half-plane geodesic through its start.

    Classical geodesics are vertical lines or half circles centred on
    ``y = 0``; only the last coordinate pair ``(x_{n-1}, y)`` and a planar
    initial velocity are supported.
    """
    x0, y0 = traj.q[0, -2], traj.q[0, -1]
    vx, vy = traj.v[0, -2], traj.v[0, -1]
    x, y = traj.q[:, -2], traj.q[:, -1]
    if abs(vx) < 1e-14 * max(1.0, abs(vy)):
        return float(np.max(np.abs(x - x0)))
    c = x0 + y0 * vy / vx
    r2 = (x0 - c) ** 2 + y0 * y0
    return float(np.max(np.abs((x - c) ** 2 + y * y - r2)))
