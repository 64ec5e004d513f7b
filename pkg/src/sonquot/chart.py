"""The global chart ``phi: R^(n-1) x R+ -> NA`` and the compact-group actions on it.

``r_action`` is the right action of ``K = SO(n)`` on ``K\\G`` and
``l_action`` the left action on ``G/K``; both are realised through the
Iwasawa factorisations, so one code path serves every rank. The closed
Moebius-type formulas for ``n = 2`` live alongside as ``*_2d`` oracles.
"""

from __future__ import annotations

import numpy as np

from . import lie
from .errors import DomainError
from .points import ChartPoint

STABILIZER_TOL = 1e-9


def phi(p: ChartPoint) -> np.ndarray:
    """Group element ``exp(sum x_i N_i) exp(ln(y) A_1)`` of ``NA``."""
    return lie.na_matrix(p.x, p.y)


def phi_inverse(g) -> ChartPoint:
    """Chart coordinates of the ``NA`` factor of ``g``."""
    return lie.nak_decompose(g)[0]


def chart_inverse(p: ChartPoint) -> ChartPoint:
    """Coordinates of ``phi(p)^{-1}``: ``(-x/y, 1/y)``."""
    return ChartPoint(-p.x / p.y, 1.0 / p.y)


def tau(p: ChartPoint) -> ChartPoint:
    """The involution carrying ``K\\G`` to ``G/K``; same map as :func:`chart_inverse`."""
    return chart_inverse(p)


def zhat(z: float, n: int = 2) -> np.ndarray:
    """Rotation ``exp(z (-E_{n-1,n}))`` of the last compact plane.

    For ``n = 2`` this is the circle parametrisation under which the actions
    below agree sign-for-sign with ordinary Moebius transformations.
    """
    k = np.eye(n + 1)
    c, s = np.cos(z), np.sin(z)
    k[n - 2, n - 2] = c
    k[n - 2, n - 1] = s
    k[n - 1, n - 2] = -s
    k[n - 1, n - 1] = c
    return k


def r_action(k, p: ChartPoint) -> ChartPoint:
    """Right action on ``K\\G``: the ``NA`` part of ``phi(p) k = k' phi(p')``."""
    k = lie.check_compact(k)
    return lie.kna_decompose(phi(p) @ k)[1]


def l_action(k, p: ChartPoint) -> ChartPoint:
    """Left action on ``G/K``: the ``NA`` part of ``k phi(p) = phi(p') k'``."""
    k = lie.check_compact(k)
    return lie.nak_decompose(k @ phi(p))[0]


def r_moebius_2d(z: float, x: float, y: float) -> tuple:
    """Closed form of ``r(zhat(z)) . (x, y)`` for ``n = 2``."""
    q = -x * x + y * y - 1.0
    return (
        (-q * np.sin(z) + 2 * x * y * np.cos(z)) / (2 * y),
        (q * np.cos(z) + 2 * x * y * np.sin(z) + x * x + y * y + 1.0) / (2 * y),
    )


def l_moebius_2d(z: float, x: float, y: float) -> tuple:
    """Closed form of ``l(zhat(z)) . (x, y)`` for ``n = 2``."""
    r2 = x * x + y * y
    L = -(r2 - 1.0) * np.cos(z) + 2 * x * np.sin(z) + r2 + 1.0
    return ((r2 - 1.0) * np.sin(z) + 2 * x * np.cos(z)) / L, 2 * y / L


def orbit_circle(p: ChartPoint) -> tuple:
    """Centre height and radius of the Euclidean sphere carrying the orbit of ``p``.

    The centre sits on the ``y`` axis at ``(1 + |x|^2 + y^2) / 2y``.
    """
    x2 = float(p.x @ p.x)
    c = (1.0 + x2 + p.y * p.y) / (2.0 * p.y)
    return c, float(np.sqrt(x2 + (p.y - c) ** 2))


def orbit_residual(p: ChartPoint, center: float, radius: float) -> float:
    return abs(float(p.x @ p.x) + (p.y - center) ** 2 - radius * radius)


def stabilizer_check(p: ChartPoint, k, tol: float = STABILIZER_TOL) -> bool:
    """Whether ``r(k)`` fixes the axis point ``p = (0, y)``, ``y != 1``."""
    if np.any(p.x != 0.0):
        raise DomainError("stabilizer check is defined on the axis x = 0 only")
    if p.y == 1.0:
        raise DomainError("the origin i = (0, 1) is fixed by all of K")
    return r_action(k, p).allclose(p, atol=tol)


def axis_stabilizer_element(R) -> np.ndarray:
    """Embed an ``(n-1) x (n-1)`` rotation as ``diag(R, 1, 1)``, an element of ``SO(n-1) x SO(1)``."""
    R = np.asarray(R, dtype=float)
    m = R.shape[0]
    k = np.eye(m + 2)
    k[:m, :m] = R
    return k
