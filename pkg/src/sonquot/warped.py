"""Warped-product model ``(1, inf) x_{e^{2 phi}} S^{n-1}`` of ``K\\G`` minus ``i``.

The base ``(1, inf)`` carries ``dt^2 / t^2`` (so ``s = ln t`` is an arc-length
coordinate) and the fibre is the round unit sphere scaled by
``e^{2 phi(t)} = sinh^2(ln t) / cosh(2 ln t)``. Hyperbolic space has the
analogous model over ``(0, 1)`` with ``e^{2 psi(s)} = sinh^2(ln s)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chart, lie
from .errors import DomainError, StepError
from .metric import hyperbolic_metric_coords, quotient_metric_coords
from .points import ChartPoint

T_MARGIN = 1e-6
UNIT_TOL = 1e-12


def _unit(u):
    u = np.array(u, dtype=float).reshape(-1)
    if u.size < 2 or abs(np.linalg.norm(u) - 1.0) > UNIT_TOL:
        raise DomainError("fibre coordinate must be a unit vector in R^n, n >= 2")
    return u


@dataclass(frozen=True, eq=False)
class WarpedPoint:
    """``(t, u)`` with ``t > 1`` and ``u`` on the unit sphere ``S^{n-1}``."""

    t: float
    u: np.ndarray

    def __post_init__(self):
        t = float(self.t)
        if not (t >= 1.0 + T_MARGIN and np.isfinite(t)):
            raise DomainError(f"warped model needs t >= 1 + {T_MARGIN}, got {t}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "u", _unit(self.u))

    @property
    def n(self) -> int:
        return self.u.size


@dataclass(frozen=True, eq=False)
class HyperbolicWarpedPoint:
    """``(s, u)`` in the hyperbolic model, ``0 < s < 1``."""

    s: float
    u: np.ndarray

    def __post_init__(self):
        s = float(self.s)
        if not (0.0 < s <= 1.0 - T_MARGIN):
            raise DomainError(f"hyperbolic warped model needs 0 < s <= 1 - {T_MARGIN}, got {s}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "u", _unit(self.u))


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 1.0):
        raise DomainError("warped-product quantities need t > 1")
    return t


def warp_factor(t):
    """``e^{2 phi(t)} = sinh^2(ln t) / cosh(2 ln t)``."""
    s = np.log(_check_t(t))
    return np.sinh(s) ** 2 / np.cosh(2 * s)


def warp_exponent(t):
    """``phi(t) = ln sinh(ln t) - ln cosh(2 ln t) / 2``."""
    s = np.log(_check_t(t))
    return np.log(np.sinh(s)) - 0.5 * np.log(np.cosh(2 * s))


def hyperbolic_warp_factor(s):
    """``e^{2 psi(s)} = sinh^2(ln s)``."""
    return np.sinh(np.log(np.asarray(s, dtype=float))) ** 2


def warp_gradient_hessian(t) -> tuple:
    """``<grad phi, t d/dt>`` and ``h_phi(t d/dt, t d/dt)``.

    ``t d/dt`` is the unit radial field; in the arc-length coordinate
    ``s = ln t`` these are ``dphi/ds`` and ``d^2 phi/ds^2``.
    """
    s = np.log(_check_t(t))
    grad = 1.0 / np.tanh(s) - np.tanh(2 * s)
    hess = -1.0 / np.sinh(s) ** 2 - 2.0 / np.cosh(2 * s) ** 2
    return grad, hess


def kappa_radial_warped(t):
    """Curvature of planes containing ``t d/dt``: ``-(<grad phi, t d/dt>^2 + h_phi)``.

    Evaluated as ``1 + 2 coth(ln t) tanh(2 ln t) - 3 tanh^2(2 ln t)``, the same
    expression after ``coth^2 - csch^2 = 1``; the unsimplified sum cancels two
    terms of size ``1/ln(t)^2`` near ``t = 1``.
    """
    s = np.log(_check_t(t))
    th = np.tanh(2 * s)
    return 1.0 + 2.0 * th / np.tanh(s) - 3.0 * th * th


def kappa_radial_rational(t):
    t = _check_t(t)
    t2 = t * t
    return 4 * t2 * (1 + 3 * t2 + t2 * t2) / (1 + t2 * t2) ** 2


def kappa_tangent_warped(y):
    """Curvature of planes tangent to the fibre: ``e^{-2 phi} - <grad phi, y d/dy>^2``.

    Evaluated as ``1 + 2 coth(ln y) tanh(2 ln y) - tanh^2(2 ln y)`` (using
    ``cosh(2s) = cosh^2 s + sinh^2 s``) for the same reason as above.
    """
    s = np.log(_check_t(y))
    th = np.tanh(2 * s)
    return 1.0 + 2.0 * th / np.tanh(s) - th * th


def kappa_tangent_rational(y):
    y = _check_t(y)
    y2 = y * y
    y4 = y2 * y2
    return 2 * (1 + 2 * y2 + 4 * y4 + 2 * y4 * y2 + y4 * y4) / (1 + y4) ** 2


def kappa_mixed(a, b, c, d, kn, kt):
    """Curvature of ``span{a w_n + b w, c w_n + d w~}`` from the two basic curvatures.

    ``w_n`` is the unit radial vector, ``w`` and ``w~`` orthonormal fibre
    directions, ``kn`` the curvature of radial planes and ``kt`` that of
    fibre-tangent planes. For ``a^2 + b^2 = c^2 + d^2 = 1`` the value is
    ``<R(X, Y) Y, X>`` for ``X = a w_n + b w``, ``Y = c w_n + d w~``; the
    sectional curvature of the plane is this divided by ``1 - (a c)^2``, the
    squared area of ``X ^ Y``.
    """
    return (a * a * d * d + b * b * c * c) * kn + b * b * d * d * kt


def rotation_to(u) -> np.ndarray:
    """Rotation in ``SO(n)`` taking the north pole ``(0, ..., 0, 1)`` to ``u``.

    It is the rotation inside the plane ``span{n, u}`` (the product of the
    two Householder reflections in that plane), written as
    ``I + sin(a) K + (1 - cos(a)) K^2`` so that it stays accurate for ``u``
    near ``-n``. For ``u = -n`` the ``(e_1, n)`` plane is used.
    """
    u = _unit(u)
    n = u.size
    c = float(u[-1])
    side = u[:-1]
    sin_a = float(np.linalg.norm(side))
    if sin_a == 0.0:
        R = np.eye(n)
        if c < 0:
            R[0, 0] = R[-1, -1] = -1.0
        return R
    one_minus_cos = sin_a * sin_a / (1.0 + c) if c >= 0 else 1.0 - c
    e = np.append(side / sin_a, 0.0)
    pole = np.zeros(n)
    pole[-1] = 1.0
    K = np.outer(e, pole) - np.outer(pole, e)
    return np.eye(n) + sin_a * K + one_minus_cos * (K @ K)


def _compact(a):
    return lie.compact_embed(a)


def f_map(w: WarpedPoint) -> ChartPoint:
    """Isometry of the warped model onto ``K\\G - {i}``: ``(t, a n) -> r(a^{-1}) (0, t)``."""
    a = rotation_to(w.u)
    return chart.r_action(_compact(a.T), ChartPoint(np.zeros(w.n - 1), w.t))


def f_map_with(a, t: float) -> ChartPoint:
    """``r(a^{-1}) (0, t)`` for an explicit ``a`` in SO(n)."""
    a = np.asarray(a, dtype=float)
    return chart.r_action(_compact(a.T), ChartPoint(np.zeros(a.shape[0] - 1), t))


def fibre_point_2d(z: float) -> np.ndarray:
    """``zhat(z)`` applied to the north pole of ``S^1``: ``(sin z, cos z)``."""
    return np.array([np.sin(z), np.cos(z)])


def f_closed_2d(t: float, z: float) -> tuple:
    st, ct = np.sinh(np.log(t)), np.cosh(np.log(t))
    return st * np.sin(z), st * np.cos(z) + ct


def f_tilde(w: HyperbolicWarpedPoint) -> ChartPoint:
    """Isometry of the hyperbolic warped model: ``(s, a n) -> l(a) (0, s)``."""
    a = rotation_to(w.u)
    return chart.l_action(_compact(a), ChartPoint(np.zeros(w.u.size - 1), w.s))


def tau_prime(w: WarpedPoint) -> HyperbolicWarpedPoint:
    """``(t, u) -> (1/t, u)``, the warped-model form of the chart involution."""
    return HyperbolicWarpedPoint(1.0 / w.t, w.u)


def tau_prime_inverse(h: HyperbolicWarpedPoint) -> WarpedPoint:
    return WarpedPoint(1.0 / h.s, h.u)


def tau_prime_square_residual(w: WarpedPoint) -> float:
    """``|f~(tau'(w)) - tau(f(w))|``."""
    lhs = f_tilde(tau_prime(w))
    rhs = chart.tau(f_map(w))
    return float(np.max(np.abs(lhs.coords - rhs.coords)))


def warp_derivatives_numeric(t, rel_step: float = 2e-2) -> tuple:
    """Finite-difference ``dphi/ds`` and ``d^2 phi/ds^2`` in ``s = ln t``.

    Five-point stencils at steps ``h = rel_step * s`` and ``h/2`` with one
    Richardson step; an independent check on :func:`warp_gradient_hessian`.
    """
    s = np.log(_check_t(t))
    h = rel_step * s
    if np.any(s - 2 * h <= 0.0):
        raise StepError("stencil reaches t <= 1")

    def phi_s(v):
        return np.log(np.sinh(v)) - 0.5 * np.log(np.cosh(2 * v))

    def d1(h):
        return (8 * (phi_s(s + h) - phi_s(s - h)) - (phi_s(s + 2 * h) - phi_s(s - 2 * h))) / (12 * h)

    def d2(h):
        return (16 * (phi_s(s + h) + phi_s(s - h)) - (phi_s(s + 2 * h) + phi_s(s - 2 * h)) - 30 * phi_s(s)) / (12 * h * h)

    return (16 * d1(h / 2) - d1(h)) / 15, (16 * d2(h / 2) - d2(h)) / 15


def _jacobian(fn, x, steps):
    """Five-point central-difference Jacobian of ``fn: R^m -> R^k`` at ``x``."""
    x = np.asarray(x, dtype=float)
    cols = []
    for i, h in enumerate(steps):
        e = np.zeros_like(x)
        e[i] = h
        cols.append((8 * (fn(x + e) - fn(x - e)) - (fn(x + 2 * e) - fn(x - 2 * e))) / (12 * h))
    return np.column_stack(cols)


def pullback_metric_2d(t: float, z: float, h: float = 1e-3) -> np.ndarray:
    """``K\\G`` metric pulled back through ``f`` to ``(t, z)`` coordinates (n = 2)."""

    def F(tz):
        return f_map(WarpedPoint(tz[0], fibre_point_2d(tz[1]))).coords

    if t - 2 * h < 1.0 + T_MARGIN:
        raise StepError("t too close to 1 for the pullback stencil")
    J = _jacobian(F, np.array([t, z]), (h, h))
    return J.T @ quotient_metric_coords(F(np.array([t, z]))) @ J


def warped_metric_2d(t: float) -> np.ndarray:
    return np.diag([1.0 / (t * t), float(warp_factor(t))])


def pullback_isometry_residual(t: float, z: float) -> float:
    """Max-norm gap between the pulled-back metric and ``diag(1/t^2, e^{2 phi(t)})``."""
    return float(np.max(np.abs(pullback_metric_2d(t, z) - warped_metric_2d(t))))


def hyperbolic_pullback_residual(s: float, z: float, h: float = 3e-4) -> float:
    """Same check for ``f~`` against ``diag(1/s^2, sinh^2(ln s))`` in hyperbolic space."""

    def F(sz):
        return f_tilde(HyperbolicWarpedPoint(sz[0], fibre_point_2d(sz[1]))).coords

    J = _jacobian(F, np.array([s, z]), (h * s, h))
    G = J.T @ hyperbolic_metric_coords(F(np.array([s, z]))) @ J
    return float(np.max(np.abs(G - np.diag([1.0 / (s * s), float(hyperbolic_warp_factor(s))]))))
