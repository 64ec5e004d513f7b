"""Riemannian geometry of the quotient SO(n)\\SO_0(n, 1) in the upper half-space chart.

Submodules
----------
lie        matrix model of so(n, 1) and SO_0(n, 1), exponentials, Iwasawa factorisations
chart      chart map, involution ``tau`` and the two compact actions
metric     quotient metric from horizontal lifts, hyperbolic metric for comparison
curvature  finite-difference curvature and closed forms
geodesics  geodesic equations and adaptive integration
warped     warped-product model and its isometry onto the quotient
suites     seeded invariant suites behind ``sonquot verify``
"""

from .errors import (
    DecompositionError,
    DegeneratePlaneError,
    DomainError,
    GeometryError,
    IntegrationError,
    StepError,
)
from .points import ChartPoint

__version__ = "0.1.0"

__all__ = [
    "ChartPoint",
    "DecompositionError",
    "DegeneratePlaneError",
    "DomainError",
    "GeometryError",
    "IntegrationError",
    "StepError",
    "__version__",
]
