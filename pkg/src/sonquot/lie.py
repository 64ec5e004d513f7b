"""Matrix kernel for SO_0(n,1): Lie algebra basis, exponential, Iwasawa factors.

Matrices are plain ``numpy`` arrays of shape ``(n+1, n+1)``. Indices in the
public API (``basis_E``) are 1-based to match the usual ``E_ij`` notation;
everything else is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .errors import DecompositionError, DomainError
from .points import ChartPoint

MAX_RANK = 8

ALGEBRA_TOL = 1e-12
GROUP_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-10


def _check_rank(n):
    if not isinstance(n, (int, np.integer)) or n < 2 or n > MAX_RANK:
        raise DomainError(f"rank n must be an integer in [2, {MAX_RANK}], got {n!r}")


@lru_cache(maxsize=None)
def _signature(n):
    J = np.diag([-1.0] * n + [1.0])
    J.setflags(write=False)
    return J


def signature_matrix(n: int) -> np.ndarray:
    """``J = diag(-1, ..., -1, 1)`` with ``n`` minus signs."""
    _check_rank(n)
    return _signature(n)


@lru_cache(maxsize=None)
def algebra_pairs(n: int) -> tuple:
    """Ordered 1-based index pairs ``(i, j)``, ``i < j <= n+1``, labelling the basis."""
    return tuple((i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2))


def basis_E(i: int, j: int, n: int) -> np.ndarray:
    """Basis element ``E_ij = eps_ij e_ij + e_ji`` of so(n,1).

    ``eps_ij`` is -1 for ``j <= n`` (a rotation generator) and +1 for
    ``j = n+1`` (a boost generator).
    """
    _check_rank(n)
    if not (1 <= i < j <= n + 1):
        raise DomainError(f"need 1 <= i < j <= n+1, got i={i}, j={j}, n={n}")
    M = np.zeros((n + 1, n + 1))
    M[i - 1, j - 1] = 1.0 if j == n + 1 else -1.0
    M[j - 1, i - 1] = 1.0
    return M


@dataclass(frozen=True)
class IwasawaBasis:
    """Generators of the Iwasawa factors ``n``, ``a`` and ``k`` of so(n,1)."""

    n: int
    N: tuple
    A: np.ndarray
    K: tuple
    K_labels: tuple


@lru_cache(maxsize=None)
def iwasawa_basis(n: int) -> IwasawaBasis:
    _check_rank(n)
    N = tuple(basis_E(i, n, n) + basis_E(i, n + 1, n) for i in range(1, n))
    A = basis_E(n, n + 1, n)
    labels = tuple((i, j) for (i, j) in algebra_pairs(n) if j <= n)
    K = tuple(basis_E(i, j, n) for (i, j) in labels)
    for M in (*N, A, *K):
        M.setflags(write=False)
    return IwasawaBasis(n=n, N=N, A=A, K=K, K_labels=labels)


def rank_of(M) -> int:
    M = np.asarray(M)
    if M.ndim < 2 or M.shape[-1] != M.shape[-2] or M.shape[-1] < 3:
        raise DomainError(f"expected square matrices of size >= 3, got shape {M.shape}")
    return M.shape[-1] - 1


# -- algebra -----------------------------------------------------------------


def algebra_residual(X) -> float:
    """``max |X^T J + J X|``; zero exactly on so(n,1)."""
    X = np.asarray(X, dtype=float)
    J = _signature(rank_of(X))
    return float(np.max(np.abs(np.swapaxes(X, -1, -2) @ J + J @ X)))


def is_algebra_element(X, tol: float = ALGEBRA_TOL) -> bool:
    return algebra_residual(X) <= tol


def check_algebra(X, tol: float = ALGEBRA_TOL) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    r = algebra_residual(X)
    if r > tol:
        raise DomainError(f"matrix is not in so(n,1): residual {r:.3e}")
    return X


def coefficients(X) -> np.ndarray:
    """Coordinates of ``X`` in the orthonormal basis ``E_ij``, ordered by ``algebra_pairs``.

    Works on stacks of matrices; the basis axis is appended last. Since
    ``E_ij`` has ``+1`` at entry ``(j, i)`` for every pair, the coefficient is
    simply that entry.
    """
    X = np.asarray(X, dtype=float)
    n = rank_of(X)
    rows, cols = _lower_index(n)
    return X[..., rows, cols]


@lru_cache(maxsize=None)
def _lower_index(n):
    pairs = algebra_pairs(n)
    rows = np.array([j - 1 for (i, j) in pairs])
    cols = np.array([i - 1 for (i, j) in pairs])
    return rows, cols


def from_coefficients(c, n: int) -> np.ndarray:
    """Inverse of :func:`coefficients`."""
    c = np.asarray(c, dtype=float)
    basis = np.stack([basis_E(i, j, n) for (i, j) in algebra_pairs(n)])
    return np.tensordot(c, basis, axes=([-1], [0]))


def inner(X, Y) -> float:
    """Inner product making ``{E_ij}`` orthonormal."""
    X = check_algebra(X)
    Y = check_algebra(Y)
    if X.shape != Y.shape:
        raise DomainError("inner product of algebra elements of different rank")
    return float(coefficients(X) @ coefficients(Y))


def bracket(X, Y) -> np.ndarray:
    return X @ Y - Y @ X


# -- group -------------------------------------------------------------------


def group_residual(g) -> float:
    """Largest violation among ``g J g^T = J``, ``det g = 1``, ``g[n,n] >= 1``."""
    g = np.asarray(g, dtype=float)
    n = rank_of(g)
    J = _signature(n)
    r = np.max(np.abs(g @ J @ g.T - J))
    r = max(r, abs(np.linalg.det(g) - 1.0))
    return float(max(r, 1.0 - g[n, n]))


def is_group_element(g, tol: float = GROUP_TOL) -> bool:
    g = np.asarray(g, dtype=float)
    return group_residual(g) <= tol * max(1.0, float(np.max(np.abs(g))) ** 2)


def check_group(g, tol: float = GROUP_TOL) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if not is_group_element(g, tol):
        raise DomainError(f"matrix is not in SO_0(n,1): residual {group_residual(g):.3e}")
    return g


def group_inverse(g) -> np.ndarray:
    """``g^{-1} = J g^T J``, exact for group elements; broadcasts over stacks."""
    g = np.asarray(g, dtype=float)
    d = np.diag(_signature(rank_of(g)))
    return d[:, None] * np.swapaxes(g, -1, -2) * d[None, :]


def expm(X) -> np.ndarray:
    """Matrix exponential by scaling and squaring (Pade)."""
    X = check_algebra(X)
    return scipy.linalg.expm(X)


def _sinhc(w: float) -> float:
    return 1.0 + w * w / 6.0 if w < 1e-4 else float(np.sinh(w) / w)


def expm_closed(X) -> np.ndarray:
    """Matrix exponential from exact closed forms.

    Handles the two families that occur in the Iwasawa factors:

    * ``X^3 = s X`` for a scalar ``s`` (any multiple of a single ``E_ij``,
      ``A_1`` boosts, and every element of the nilpotent factor, where
      ``s = 0``), via the Rodrigues-type series;
    * ``X`` in the compact factor so(n) (block skew-symmetric), via the
      spectral decomposition of the Hermitian matrix ``iX``.

    Raises :class:`DomainError` for anything else.
    """
    X = check_algebra(X)
    n = rank_of(X)
    I = np.eye(n + 1)
    X2 = X @ X
    m = float(np.max(np.abs(X)))
    if m == 0.0:
        return I
    # X^3 = s X is tested on X / m so tiny or huge entries cannot under- or overflow
    Y = X / m
    Y3 = Y @ Y @ Y
    sy = float(np.sum(Y3 * Y) / np.sum(Y * Y))
    if np.max(np.abs(Y3 - sy * Y)) <= 1e-13:
        s = sy * m * m
        # half-angle forms stay accurate as s -> 0 (rounding leaves s ~ 1e-17 on n)
        w = np.sqrt(abs(s))
        if s > 0:
            a, b = _sinhc(w), 0.5 * _sinhc(0.5 * w) ** 2
        else:
            a, b = np.sinc(w / np.pi), 0.5 * np.sinc(0.5 * w / np.pi) ** 2
        return I + a * X + b * X2
    if np.all(X[n, :] == 0) and np.all(X[:, n] == 0):
        lam, U = np.linalg.eigh(1j * X)
        E = (U * np.exp(-1j * lam)) @ U.conj().T
        return E.real
    raise DomainError("no closed form for this algebra element; use expm")


# -- Iwasawa factors ----------------------------------------------------------


@lru_cache(maxsize=None)
def _nilpotent_stack(n):
    return np.stack(iwasawa_basis(n).N)


def na_matrix(x, y) -> np.ndarray:
    """Closed-form ``exp(sum x_i N_i) exp(ln(y) A_1)``; broadcasts over leading axes.

    ``x`` has shape ``(..., n-1)`` and ``y`` shape ``(...)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.shape[-1] + 1
    _check_rank(n)
    Nx = np.tensordot(x, _nilpotent_stack(n), axes=([-1], [0]))
    eN = np.eye(n + 1) + Nx + 0.5 * (Nx @ Nx)
    c = 0.5 * (y + 1.0 / y)
    s = 0.5 * (y - 1.0 / y)
    a = np.broadcast_to(np.eye(n + 1), y.shape + (n + 1, n + 1)).copy()
    a[..., n - 1, n - 1] = c
    a[..., n, n] = c
    a[..., n - 1, n] = s
    a[..., n, n - 1] = s
    return eN @ a


def boost(y, n: int) -> np.ndarray:
    """``exp(ln(y) A_1)``."""
    return na_matrix(np.zeros(n - 1), y)


def compact_embed(R) -> np.ndarray:
    """Embed an ``n x n`` rotation as ``diag(R, 1)`` in SO_0(n,1)."""
    R = np.asarray(R, dtype=float)
    n = R.shape[0]
    k = np.eye(n + 1)
    k[:n, :n] = R
    return k


def is_compact(k, tol: float = GROUP_TOL) -> bool:
    """True when ``k`` lies in ``SO(n) x {1}``."""
    k = np.asarray(k, dtype=float)
    n = rank_of(k)
    e = np.zeros(n + 1)
    e[n] = 1.0
    ok = np.max(np.abs(k[n, :] - e)) <= tol and np.max(np.abs(k[:, n] - e)) <= tol
    R = k[:n, :n]
    ok = ok and np.max(np.abs(R.T @ R - np.eye(n))) <= tol
    return bool(ok and abs(np.linalg.det(R) - 1.0) <= tol)


def check_compact(k, tol: float = GROUP_TOL) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    if not is_compact(k, tol):
        raise DomainError("group element is not in SO(n) x {1}")
    return k


def _reconstruction_scale(g):
    # cond(g) = |g| |g^-1| = |g|^2 because g^-1 = J g^T J
    return max(1.0, float(np.max(np.abs(g)))) ** 2


def nak_decompose(g, tol: float = RECONSTRUCTION_TOL):
    """Factor ``g = phi(x, y) k`` with ``k`` in ``SO(n) x {1}``.

    ``k`` fixes ``e_{n+1}``, so the last column of ``g`` equals the last column
    of ``phi(x, y)``, which reads ``(x/y, sinh ln y + |x|^2/2y, cosh ln y +
    |x|^2/2y)``. That pins down ``y`` and ``x`` directly; ``k`` follows by
    multiplying with the inverse of ``phi``.

    The reconstruction residual ``max |phi k - g|`` is measured relative to
    ``max(1, max|g|)^2``, the condition number of ``g``;
    :class:`DecompositionError` is raised above ``tol``.
    """
    g = np.asarray(g, dtype=float)
    n = rank_of(g)
    v = g[:, n]
    gap = v[n] - v[n - 1]
    if not (np.isfinite(gap) and gap > 0.0):
        raise DecompositionError("last column is not future timelike; g is not in SO_0(n,1)")
    y = 1.0 / gap
    x = y * v[: n - 1]
    p = na_matrix(x, y)
    k = group_inverse(p) @ g
    residual = float(np.max(np.abs(p @ k - g)))
    if residual > tol * _reconstruction_scale(g) or not is_compact(k, 1e3 * tol * _reconstruction_scale(g)):
        raise DecompositionError(f"NAK reconstruction failed (residual {residual:.3e})")
    return ChartPoint(x, y), k


def kna_decompose(g, tol: float = RECONSTRUCTION_TOL):
    """Factor ``g = k phi(x, y)`` using the NAK factorisation of ``g^{-1}``."""
    g = np.asarray(g, dtype=float)
    q, k_inv = nak_decompose(group_inverse(g), tol)
    p = ChartPoint(-q.x / q.y, 1.0 / q.y)
    k = k_inv.T
    residual = float(np.max(np.abs(k @ na_matrix(p.x, p.y) - g)))
    if residual > tol * _reconstruction_scale(g):
        raise DecompositionError(f"KNA reconstruction failed (residual {residual:.3e})")
    return k, p
