"""Exception types raised across the package."""

from __future__ import annotations


class QuatSurfError(Exception):
    """Base class for every error raised by quatsurf."""


class ZeroQuaternion(QuatSurfError, ZeroDivisionError):
    pass


class NotUnit(QuatSurfError, ValueError):
    pass


class NotPure(QuatSurfError, ValueError):
    pass


class NotOrthogonal(QuatSurfError, ValueError):
    pass


class BadRadii(QuatSurfError, ValueError):
    pass


class BadSeedFrame(QuatSurfError, ValueError):
    pass


class VanishingCurvature(QuatSurfError, ValueError):
    """A framed curve was requested where the curvature drops below threshold."""


class TooFewSamples(QuatSurfError, ValueError):
    pass


class MissingFrame(QuatSurfError, ValueError):
    """Normal/binormal fields were requested for a geodesic (kappa == 0)."""


class DegenerateTrace(QuatSurfError, ValueError):
    pass


class RegularityViolation(QuatSurfError, ValueError):
    """|<T_a, That_b>| exceeded 1 - delta on some grid nodes."""

    def __init__(self, message: str, nodes=None):
        super().__init__(message)
        self.nodes = [] if nodes is None else list(nodes)


class DegenerateTangents(QuatSurfError, ValueError):
    pass


class GaugeMismatch(QuatSurfError, ValueError):
    pass


class PoleCollision(QuatSurfError, ValueError):
    def __init__(self, message: str, nodes=None):
        super().__init__(message)
        self.nodes = [] if nodes is None else list(nodes)


class ConfigError(QuatSurfError, ValueError):
    pass
