"""Levi-Civita connection and curvature by finite differences, plus closed forms.

The numeric path differentiates any batch metric function ``metric(q) -> G``
(e.g. :func:`sonquot.metric.quotient_metric_coords`). Central differences
with one Richardson level are used twice: once for ``dG`` and once more for
``dGamma``. The closed forms are the curvature formulas of ``K\\G`` that
the numeric path is checked against.
"""

from __future__ import annotations

import numpy as np

from .errors import DegeneratePlaneError, DomainError, StepError
from .metric import TangentVector, quotient_metric_coords
from .points import ChartPoint

DEGENERATE_TOL = 1e-8


RELATIVE_STEP = 2e-2


def default_step(y) -> np.ndarray:
    """Stencil step ``2e-2 y``: the metric varies on the length scale ``y``."""
    return RELATIVE_STEP * np.asarray(y, dtype=float)


def _derivative(fn, q, h):
    """Derivatives of ``fn`` along each coordinate, accurate to O(h^6).

    Five-point central differences at steps ``h`` and ``h/2`` combined by one
    Richardson step. ``q`` has shape ``(B, n)``, ``h`` shape ``(B,)``;
    ``fn(points, steps)`` is evaluated once on all stencil points. Returns
    shape ``(B, n) + value_shape`` with axis 1 indexing the direction.
    """
    B, n = q.shape
    eye = np.eye(n)
    offsets = np.concatenate([eye, -eye, 2 * eye, -2 * eye, 0.5 * eye, -0.5 * eye])
    pts = q[:, None, :] + h[:, None, None] * offsets[None, :, :]
    vals = fn(pts.reshape(-1, n), np.repeat(h, 6 * n))
    vals = vals.reshape((B, 6, n) + vals.shape[1:])
    hh = h.reshape((B, 1) + (1,) * (vals.ndim - 3))
    d_full = (8.0 * (vals[:, 0] - vals[:, 1]) - (vals[:, 2] - vals[:, 3])) / (12.0 * hh)
    d_half = (8.0 * (vals[:, 4] - vals[:, 5]) - (vals[:, 0] - vals[:, 1])) / (6.0 * hh)
    return (16.0 * d_half - d_full) / 15.0


def _as_batch(q):
    q = np.asarray(q, dtype=float)
    single = q.ndim == 1
    return np.atleast_2d(q), single


def _steps(q, h):
    if h is None:
        return default_step(q[:, -1])
    h = np.broadcast_to(np.asarray(h, dtype=float), q.shape[:1]).copy()
    if np.any(h <= 0.0):
        raise StepError("finite-difference step must be positive")
    return h


def _check_margin(q, reach):
    if np.any(q[:, -1] - reach <= 0.0):
        raise StepError("finite-difference stencil reaches y <= 0")


def _christoffel_batch(q, h, metric):
    G = metric(q)
    dG = _derivative(lambda pts, _: metric(pts), q, h)  # dG[b, l, i, j] = d_l G_ij
    Ginv = np.linalg.inv(G)
    # lowered: Gamma_{l,ij} = 1/2 (d_i G_jl + d_j G_il - d_l G_ij)
    low = 0.5 * (np.einsum("bijl->blij", dG) + np.einsum("bjil->blij", dG) - dG)
    return np.einsum("bkl,blij->bkij", Ginv, low)


def christoffel_coords(q, h=None, metric=quotient_metric_coords) -> np.ndarray:
    """``Gamma[..., k, i, j]`` at each row of ``q`` (a single point or a ``(B, n)`` batch)."""
    q, single = _as_batch(q)
    h = _steps(q, h)
    _check_margin(q, 2.0 * h)
    gamma = _christoffel_batch(q, h, metric)
    return gamma[0] if single else gamma


def christoffel(p: ChartPoint, h: float | None = None, metric=quotient_metric_coords) -> np.ndarray:
    """Christoffel symbols ``Gamma^k_ij`` (array index ``[k, i, j]``) at ``p``."""
    return christoffel_coords(p.coords, h, metric)


def riemann_coords(q, h=None, metric=quotient_metric_coords) -> np.ndarray:
    """Curvature tensor ``R[..., l, i, j, k]`` with ``R(d_i, d_j) d_k = R^l_ijk d_l``.

    Convention ``R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y]``, so the round
    sphere has positive sectional curvature. ``dGamma`` is obtained by
    differencing numerically computed Christoffel symbols with the same step.
    """
    q, single = _as_batch(q)
    h = _steps(q, h)
    _check_margin(q, 4.0 * h)
    dgam = _derivative(lambda pts, hs: _christoffel_batch(pts, hs, metric), q, h)
    gam = _christoffel_batch(q, h, metric)
    # dgam[b, m, l, i, j] = d_m Gamma^l_ij
    R = (
        np.einsum("biljk->blijk", dgam)
        - np.einsum("bjlik->blijk", dgam)
        + np.einsum("blim,bmjk->blijk", gam, gam)
        - np.einsum("bljm,bmik->blijk", gam, gam)
    )
    return R[0] if single else R


def sectional_from_riemann(G, R, u, v) -> np.ndarray:
    """``<R(u,v)v, u> / (|u|^2 |v|^2 - <u,v>^2)``; broadcasts over a batch axis."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    num = np.einsum("...ml,...m,...lijk,...i,...j,...k->...", G, u, R, u, v, v)
    uu = np.einsum("...i,...ij,...j->...", u, G, u)
    vv = np.einsum("...i,...ij,...j->...", v, G, v)
    uv = np.einsum("...i,...ij,...j->...", u, G, v)
    area = uu * vv - uv * uv
    if np.any(area < DEGENERATE_TOL**2 * np.maximum(uu * vv, 1e-300)):
        raise DegeneratePlaneError("tangent vectors are (nearly) parallel")
    return num / area


def _components(w):
    return w.components if isinstance(w, TangentVector) else np.asarray(w, dtype=float)


def sectional_numeric(p: ChartPoint, u, v, metric=quotient_metric_coords, h=None) -> float:
    """Sectional curvature of ``span{u, v}`` at ``p`` from the numeric curvature tensor."""
    u, v = _components(u), _components(v)
    G = metric(p.coords)
    R = riemann_coords(p.coords, h, metric)
    return float(sectional_from_riemann(G, R, u, v))


# -- closed forms ---------------------------------------------------------------


def kappa2_closed(x, y):
    """Sectional curvature of ``K\\G`` for ``n = 2`` at ``(x, y)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x2, y2 = x * x, y * y
    base = x2 * x2 + 2 * x2 * (y2 + 1) + y2 * y2
    return 4 * y2 * (base + 3 * y2 + 1) / (base + 1) ** 2


def radial_curvature(y):
    """Curvature ``f(y)`` of any plane containing the radial direction at ``(0, y)``."""
    y = np.asarray(y, dtype=float)
    y2 = y * y
    return 4 * y2 * (1 + 3 * y2 + y2 * y2) / (1 + y2 * y2) ** 2


def tangential_curvature(y, exponent: int = 2):
    """Curvature ``g(y)`` of planes tangent to the orbit sphere through ``(0, y)``.

    ``exponent`` is the power of ``1 + y^4`` in the denominator; only 2 is
    geometrically correct, other values exist to demonstrate that.
    """
    y = np.asarray(y, dtype=float)
    y2 = y * y
    y4 = y2 * y2
    return 2 * (1 + 2 * y2 + 4 * y4 + 2 * y4 * y2 + y4 * y4) / (1 + y4) ** exponent


def kappa_n_closed(y, theta, exponent: int = 2):
    """Sectional curvature at ``(0, y)``, ``y >= 1``, of a plane at angle ``theta`` to the axis."""
    y = np.asarray(y, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(y < 1.0) or np.any(theta < 0.0) or np.any(theta > np.pi / 2 + 1e-15):
        raise DomainError("kappa_n_closed needs y >= 1 and 0 <= theta <= pi/2")
    c2 = np.cos(theta) ** 2
    return c2 * radial_curvature(y) + (1.0 - c2) * tangential_curvature(y, exponent)


def orbit_parameter(q) -> np.ndarray:
    """``c(q) = (1 + |x|^2 + y^2) / 2y``, i.e. ``cosh`` of the distance to ``i``."""
    q = np.asarray(q, dtype=float)
    x, y = q[..., :-1], q[..., -1]
    return (1.0 + np.sum(x * x, axis=-1) + y * y) / (2.0 * y)


def radial_unit_vector(q, G) -> np.ndarray:
    """Unit outward normal of the orbit sphere through ``q`` (undefined at ``i``)."""
    q = np.asarray(q, dtype=float)
    x, y = q[..., :-1], q[..., -1]
    grad = np.concatenate(
        [x / y[..., None], ((y * y - 1.0 - np.sum(x * x, axis=-1)) / (2 * y * y))[..., None]], axis=-1
    )
    v = np.linalg.solve(G, grad[..., None])[..., 0]
    size = np.sqrt(np.einsum("...i,...i->...", v, grad))
    return v / np.where(size > 0.0, size, 1.0)[..., None]


def kappa_closed_general(q, G, u, v) -> np.ndarray:
    """Closed-form curvature of ``span{u, v}`` at an arbitrary chart point.

    Uses the warped-product structure: the compact group moves ``q`` to the
    axis point ``(0, t)`` with ``t = exp(dist(i, q))``, and the answer depends
    only on ``t`` and the angle between the plane and the radial direction.
    """
    q = np.asarray(q, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = orbit_parameter(q)
    t = np.exp(np.arccosh(np.maximum(c, 1.0)))
    nu = radial_unit_vector(q, G)

    def ip(a, b):
        return np.einsum("...i,...ij,...j->...", a, G, b)

    # G-orthonormalise {u, v} and project the radial normal onto the plane
    e1 = u / np.sqrt(ip(u, u))[..., None]
    v2 = v - ip(v, e1)[..., None] * e1
    e2 = v2 / np.sqrt(ip(v2, v2))[..., None]
    # at i itself nu vanishes, and f(1) = g(1) makes the weight irrelevant
    cos2 = np.clip(ip(nu, e1) ** 2 + ip(nu, e2) ** 2, 0.0, 1.0)
    return cos2 * radial_curvature(t) + (1.0 - cos2) * tangential_curvature(t)
