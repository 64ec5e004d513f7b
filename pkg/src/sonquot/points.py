"""Coordinate carriers for the upper half-space chart."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class ChartPoint:
    """A point ``(x, y)`` with ``x`` in R^(n-1) and ``y > 0``.

    The same coordinates describe a point of the solvable group ``NA`` and of
    both quotients ``K\\G`` and ``G/K``.
    """

    x: np.ndarray
    y: float

    def __post_init__(self):
        x = np.array(self.x, dtype=float).reshape(-1)
        x.setflags(write=False)
        y = float(self.y)
        if x.size < 1:
            raise DomainError("chart point needs n >= 2 (x must be non-empty)")
        if not (np.isfinite(y) and y > 0.0) or not np.all(np.isfinite(x)):
            raise DomainError(f"invalid chart point x={x}, y={y}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.size + 1

    @property
    def coords(self) -> np.ndarray:
        """Concatenated coordinate vector ``(x_1, ..., x_{n-1}, y)``."""
        return np.append(self.x, self.y)

    @classmethod
    def from_coords(cls, q) -> ChartPoint:
        q = np.asarray(q, dtype=float)
        return cls(q[:-1], q[-1])

    @classmethod
    def origin(cls, n: int) -> ChartPoint:
        """The point ``i = (0, 1)``, image of the identity."""
        return cls(np.zeros(n - 1), 1.0)

    def allclose(self, other: ChartPoint, atol: float = 1e-10) -> bool:
        return self.n == other.n and bool(np.allclose(self.coords, other.coords, rtol=0, atol=atol))

    def __repr__(self):
        return f"ChartPoint(x={self.x.tolist()}, y={self.y!r})"
