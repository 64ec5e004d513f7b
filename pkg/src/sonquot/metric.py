"""Submersion metric on ``K\\G`` in the upper half-space chart.

The metric is built from scratch at group level. At ``p = phi(x, y)`` tangent
vectors are written in left-invariant coordinates ``p^{-1} V`` with respect to
the orthonormal basis ``E_ij``. The vertical space is spanned by ``E p`` for
``E`` in so(n). Its orthogonal complement is the horizontal space. Each
horizontal unit vector ``h`` splits uniquely as ``dphi(w) + E p``, and the
chart vectors ``w`` form an orthonormal frame of the quotient.

All ``*_coords`` functions take coordinate arrays ``q = (x_1..x_{n-1}, y)``
with arbitrary leading batch axes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import lie
from .errors import DomainError, GeometryError
from .points import ChartPoint

ORTHONORMAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Components on ``d/dx_1, ..., d/dx_{n-1}, d/dy`` at ``base``."""

    base: ChartPoint
    components: np.ndarray

    def __post_init__(self):
        c = np.array(self.components, dtype=float).reshape(-1)
        if c.size != self.base.n or not np.all(np.isfinite(c)):
            raise DomainError("tangent vector components must be finite with length n")
        object.__setattr__(self, "components", c)


@dataclass(frozen=True, eq=False)
class MetricSample:
    """Metric tensor ``G`` at ``base`` with the frame that produced it.

    ``frame`` holds the frame vectors as columns, so ``G = (W W^T)^{-1}``.
    """

    base: ChartPoint
    G: np.ndarray
    frame: np.ndarray

    def frame_residual(self) -> float:
        """``max |W^T G W - I|``."""
        W = self.frame
        return float(np.max(np.abs(W.T @ self.G @ W - np.eye(W.shape[1]))))

    def vectors(self) -> list:
        return [TangentVector(self.base, self.frame[:, i]) for i in range(self.frame.shape[1])]


def _split(q):
    q = np.asarray(q, dtype=float)
    if q.shape[-1] < 2:
        raise DomainError("coordinate vectors need n >= 2 entries")
    if np.any(q[..., -1] <= 0.0):
        raise DomainError("chart points need y > 0")
    return q, q[..., :-1], q[..., -1]


@lru_cache(maxsize=None)
def _compact_stack(n):
    return np.stack(lie.iwasawa_basis(n).K)


def _boost_derivative(y, n):
    """``d/dy exp(ln(y) A_1)``."""
    dc = 0.5 * (1.0 - 1.0 / (y * y))
    ds = 0.5 * (1.0 + 1.0 / (y * y))
    da = np.zeros(y.shape + (n + 1, n + 1))
    da[..., n - 1, n - 1] = dc
    da[..., n, n] = dc
    da[..., n - 1, n] = ds
    da[..., n, n - 1] = ds
    return da


def vertical_coords(q) -> np.ndarray:
    """Left-invariant coefficients of the vertical vectors ``E phi(q)``, as columns."""
    q, x, y = _split(q)
    n = q.shape[-1]
    p = lie.na_matrix(x, y)
    pinv = lie.group_inverse(p)
    ad = pinv[..., None, :, :] @ _compact_stack(n) @ p[..., None, :, :]
    return np.swapaxes(lie.coefficients(ad), -1, -2)


def chart_differential_coords(q) -> np.ndarray:
    """Left-invariant coefficients of ``d phi(d/dq_i)``, as columns."""
    q, x, y = _split(q)
    n = q.shape[-1]
    a = lie.na_matrix(np.zeros(x.shape), y)
    a_inv = lie.group_inverse(a)
    N = np.stack(lie.iwasawa_basis(n).N)
    # d/dx_i [exp(x.N) a] = exp(x.N) N_i a because the N_i commute
    cols = a_inv[..., None, :, :] @ N @ a[..., None, :, :]
    dy = a_inv @ _boost_derivative(y, n)
    cols = np.concatenate([cols, dy[..., None, :, :]], axis=-3)
    return np.swapaxes(lie.coefficients(cols), -1, -2)


def horizontal_basis_coords(q) -> np.ndarray:
    """Orthonormal basis (columns) of the orthogonal complement of the vertical space."""
    V = vertical_coords(q)
    m = V.shape[-1]
    Q, _ = np.linalg.qr(V, mode="complete")
    return Q[..., m:]


def frame_coords(q) -> np.ndarray:
    """Quotient-orthonormal frame ``W`` (columns are chart vectors) at ``q``."""
    D = chart_differential_coords(q)
    V = vertical_coords(q)
    H = horizontal_basis_coords(q)
    n = D.shape[-1]
    M = np.concatenate([D, V], axis=-1)
    sol = np.linalg.solve(M, H)
    return sol[..., :n, :]


def quotient_metric_coords(q) -> np.ndarray:
    """Metric tensor ``G = (W W^T)^{-1}`` of ``K\\G`` at ``q``."""
    W = frame_coords(q)
    G = np.linalg.inv(W @ np.swapaxes(W, -1, -2))
    return 0.5 * (G + np.swapaxes(G, -1, -2))


def hyperbolic_metric_coords(q) -> np.ndarray:
    """Metric ``y^{-2} I`` of ``G/K`` (constant curvature -1) at ``q``."""
    q, _, y = _split(q)
    n = q.shape[-1]
    return np.eye(n) / (y * y)[..., None, None]


def na_subgroup_metric_coords(q) -> np.ndarray:
    """Left-invariant metric on ``NA`` induced by the algebra inner product.

    Here ``N_i/sqrt(2)`` and ``A_1`` are orthonormal at the identity.
    """
    D = chart_differential_coords(q)
    return np.swapaxes(D, -1, -2) @ D


def vertical_basis(p: ChartPoint) -> list:
    """The matrices ``E phi(p)`` for ``E`` running over the so(n) basis."""
    g = lie.na_matrix(p.x, p.y)
    return [E @ g for E in lie.iwasawa_basis(p.n).K]


def horizontal_frame(p: ChartPoint) -> MetricSample:
    """Metric and orthonormal frame at ``p`` from the horizontal projection."""
    W = frame_coords(p.coords)
    if abs(np.linalg.det(W)) < 1e-300:
        raise GeometryError(f"singular horizontal frame at {p}")
    G = np.linalg.inv(W @ W.T)
    return MetricSample(p, 0.5 * (G + G.T), W)


def metric_matrix(p: ChartPoint) -> MetricSample:
    """Canonical entry point for the quotient metric at ``p``."""
    return horizontal_frame(p)


def closed_frame_2d(p: ChartPoint) -> MetricSample:
    """Explicit orthonormal frame of ``K\\G`` for ``n = 2``."""
    if p.n != 2:
        raise DomainError("closed frame is only available for n = 2")
    x, y = float(p.x[0]), p.y
    s = np.sqrt((x * x + 1.0) ** 2 + y**4)
    w1 = np.array([-s / (np.sqrt(2.0) * y), -np.sqrt(2.0) * x * (x * x + 1.0) / s])
    w2 = np.array([0.0, y * np.sqrt(2.0 * x * x * y * y / (s * s) + 1.0)])
    W = np.column_stack([w1, w2])
    return MetricSample(p, np.linalg.inv(W @ W.T), W)


def axis_frame(y: float, n: int) -> MetricSample:
    """Closed orthonormal frame on the axis ``(0, y)``: ``c d/dx_i`` and ``y d/dy``.

    Here ``c = -sqrt(cosh(2 ln y))``.
    """
    c = -np.sqrt(np.cosh(2.0 * np.log(y)))
    W = np.diag([c] * (n - 1) + [y])
    return MetricSample(ChartPoint(np.zeros(n - 1), y), np.linalg.inv(W @ W.T), W)


def hyperbolic_metric(p: ChartPoint) -> MetricSample:
    W = np.eye(p.n) * p.y
    return MetricSample(p, hyperbolic_metric_coords(p.coords), W)


def norm(G, v) -> float:
    v = np.asarray(v, dtype=float)
    return float(np.sqrt(v @ G @ v))
