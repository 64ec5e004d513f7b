"""Exception hierarchy shared by all modules."""


class GeometryError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GeometryError, ValueError):
    """An argument lies outside the set on which an operation is defined."""


class DecompositionError(GeometryError):
    """An Iwasawa factorisation failed its reconstruction check."""


class StepError(GeometryError, ValueError):
    """A finite-difference stencil would leave the upper half-space."""


class DegeneratePlaneError(GeometryError, ValueError):
    """Two tangent vectors do not span a 2-plane."""


class IntegrationError(GeometryError):
    """Geodesic integration stopped early.

    The samples computed before the failure are kept on ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
