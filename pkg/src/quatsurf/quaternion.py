"""Quaternion algebra on R^4 in (w, x, y, z) order.

The array kernels (:func:`qmul`, :func:`qconj`, :func:`qinv`, :func:`qdot`)
broadcast over leading axes, so a whole grid of products is one call.
The :class:`Quat` family wraps single values for readable scalar code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotOrthogonal, NotPure, NotUnit, ZeroQuaternion

UNIT_TOL = 1e-12
RENORM_TOL = 1e-8
ZERO_NORM = 1e-300

E1 = np.array([1.0, 0.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0, 0.0])
E4 = np.array([0.0, 0.0, 0.0, 1.0])

_CONJ = np.array([1.0, -1.0, -1.0, -1.0])


def qmul(a, b) -> np.ndarray:
    """Hamilton product, broadcasting over all but the last axis."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a1, a2, a3, a4 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b1, b2, b3, b4 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
            a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
            a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
            a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
        ],
        axis=-1,
    )


def qconj(a) -> np.ndarray:
    return np.asarray(a, dtype=float) * _CONJ


def qdot(a, b) -> np.ndarray:
    """Euclidean inner product of R^4, over the last axis."""
    return np.sum(np.asarray(a, dtype=float) * np.asarray(b, dtype=float), axis=-1)


def qnorm(a) -> np.ndarray:
    return np.sqrt(qdot(a, a))


def qinv(a) -> np.ndarray:
    """Inverse ``conj(a) / |a|^2``; raises :class:`ZeroQuaternion` near zero."""
    a = np.asarray(a, dtype=float)
    n2 = qdot(a, a)
    if np.any(np.sqrt(n2) <= ZERO_NORM):
        raise ZeroQuaternion("quaternion with norm <= 1e-300 has no inverse")
    return qconj(a) / n2[..., None]


def pure_product_as_cross(a, b, tol: float = 1e-10) -> np.ndarray:
    """Product of two orthogonal pure quaternions via the R^3 cross product.

    For pure ``a, b`` with ``<a, b> = 0`` the Hamilton product is
    ``(0, a_vec x b_vec)``. The identity is only claimed for orthogonal
    pairs, so anything else is rejected.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(np.abs(a[..., 0]) > tol) or np.any(np.abs(b[..., 0]) > tol):
        raise NotPure("both factors must be pure quaternions")
    if np.any(np.abs(qdot(a, b)) > tol):
        raise NotOrthogonal("factors are not orthogonal")
    vec = np.cross(a[..., 1:], b[..., 1:])
    return np.concatenate([np.zeros(vec.shape[:-1] + (1,)), vec], axis=-1)


def pure(a) -> np.ndarray:
    """Embed 3-vectors as pure quaternions."""
    a = np.asarray(a, dtype=float)
    return np.concatenate([np.zeros(a.shape[:-1] + (1,)), a], axis=-1)


def imag(a) -> np.ndarray:
    """Drop the real part: the identification of pure quaternions with R^3."""
    return np.asarray(a, dtype=float)[..., 1:]


@dataclass(frozen=True)
class Quat:
    """A single quaternion ``w + x i + y j + z k``."""

    w: float
    x: float
    y: float
    z: float

    @classmethod
    def from_array(cls, q) -> "Quat":
        q = np.asarray(q, dtype=float).reshape(4)
        return cls(*(float(v) for v in q))

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __mul__(self, other: "Quat") -> "Quat":
        return Quat.from_array(qmul(self.as_array(), other.as_array()))

    def __add__(self, other: "Quat") -> "Quat":
        return Quat.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: "Quat") -> "Quat":
        return Quat.from_array(self.as_array() - other.as_array())

    def __neg__(self) -> "Quat":
        return Quat.from_array(-self.as_array())

    def conj(self) -> "Quat":
        return Quat(self.w, -self.x, -self.y, -self.z)

    def inv(self) -> "Quat":
        return Quat.from_array(qinv(self.as_array()))

    def norm(self) -> float:
        return float(qnorm(self.as_array()))

    def dot(self, other: "Quat") -> float:
        return float(qdot(self.as_array(), other.as_array()))


class UnitQuat(Quat):
    """A point of S^3.

    Construction renormalises inputs whose norm is within 1e-8 of one
    (integrator drift) and rejects anything further away.
    """

    def __init__(self, w: float, x: float, y: float, z: float):
        q = np.array([w, x, y, z], dtype=float)
        n = float(qnorm(q))
        if abs(n - 1.0) > RENORM_TOL:
            raise NotUnit(f"|q| = {n!r} is not within {RENORM_TOL} of 1")
        if abs(n - 1.0) > UNIT_TOL:
            q = q / n
        super().__init__(*(float(v) for v in q))

    @classmethod
    def from_array(cls, q) -> "UnitQuat":
        q = np.asarray(q, dtype=float).reshape(4)
        return cls(*(float(v) for v in q))


class PureUnit(UnitQuat):
    """A point of the pure-imaginary unit sphere."""

    def __init__(self, w: float, x: float, y: float, z: float):
        if abs(w) > RENORM_TOL:
            raise NotPure(f"real part {w!r} is not zero")
        super().__init__(0.0, x, y, z)
