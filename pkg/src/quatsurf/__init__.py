"""Translation surfaces in the 3-sphere built from quaternionic products of curves."""

from .curves import CurveSpec, CurveSpecR3, SampledCurve, integrate_frenet_r3, integrate_frenet_s3
from .frames import left_frame, right_frame
from .quaternion import PureUnit, Quat, UnitQuat, qconj, qinv, qmul
from .surface import analyze, build_surface

__all__ = [
    "CurveSpec",
    "CurveSpecR3",
    "PureUnit",
    "Quat",
    "SampledCurve",
    "UnitQuat",
    "analyze",
    "build_surface",
    "integrate_frenet_r3",
    "integrate_frenet_s3",
    "left_frame",
    "qconj",
    "qinv",
    "qmul",
    "right_frame",
]

__version__ = "0.1.0"
