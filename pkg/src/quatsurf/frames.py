"""Left and right quaternionic frames of a curve in S^3.

Left-translating the Frenet frame back to the identity gives a triple
of pure unit quaternions

    T = conj(alpha) t,   N = conj(alpha) n,   B = conj(alpha) b,

which obeys Frenet-type equations in R^3 with torsion ``tau - 1``.
Right translation, ``That = alpha conj(t)`` and so on, gives torsion
``tau + 1``; that triple is negatively oriented as a basis of R^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curves import KAPPA_EPS, SampledCurve
from .errors import DegenerateTrace, MissingFrame, TooFewSamples
from .quaternion import qconj, qmul

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True, eq=False)
class QuatFrameSamples:
    """``(T, N, B)`` of one side, as ``(len, 4)`` arrays of pure quaternions."""

    side: str
    T: np.ndarray
    _N: Optional[np.ndarray] = None
    _B: Optional[np.ndarray] = None

    @property
    def framed(self) -> bool:
        return self._N is not None

    @property
    def N(self) -> np.ndarray:
        if self._N is None:
            raise MissingFrame("no normal field: the curve is a geodesic")
        return self._N

    @property
    def B(self) -> np.ndarray:
        if self._B is None:
            raise MissingFrame("no binormal field: the curve is a geodesic")
        return self._B

    @property
    def torsion_shift(self) -> float:
        return -1.0 if self.side == LEFT else 1.0

    def handedness(self) -> float:
        """Sign of ``det(T, N, B)`` in R^3: +1 for the left frame, -1 for the right."""
        return float(np.sign(np.linalg.det(np.stack([self.T[0, 1:], self.N[0, 1:], self.B[0, 1:]]))))


def _translate(side, alpha, v):
    if side == LEFT:
        return qmul(qconj(alpha), v)
    return qmul(alpha, qconj(v))


def _frame(curve: SampledCurve, side: str) -> QuatFrameSamples:
    T = _translate(side, curve.alpha, curve.t)
    if not curve.framed:
        return QuatFrameSamples(side, T)
    return QuatFrameSamples(
        side, T, _translate(side, curve.alpha, curve.n), _translate(side, curve.alpha, curve.b)
    )


def left_frame(curve: SampledCurve) -> QuatFrameSamples:
    return _frame(curve, LEFT)


def right_frame(curve: SampledCurve) -> QuatFrameSamples:
    return _frame(curve, RIGHT)


def frame_identity_residuals(curve: SampledCurve) -> dict:
    """Max-norm residuals of the six product identities relating the two frames.

    ``T = conj(b) n``, ``N = conj(t) b``, ``B = conj(n) t`` on the left and
    ``That = -b conj(n)``, ``Nhat = -t conj(b)``, ``Bhat = -n conj(t)`` on the right.
    """
    if not curve.framed:
        raise MissingFrame("frame identities need n and b")
    lf, rf = left_frame(curve), right_frame(curve)
    t, n, b = curve.t, curve.n, curve.b
    pairs = {
        "T": (lf.T, qmul(qconj(b), n)),
        "N": (lf.N, qmul(qconj(t), b)),
        "B": (lf.B, qmul(qconj(n), t)),
        "That": (rf.T, -qmul(b, qconj(n))),
        "Nhat": (rf.N, -qmul(t, qconj(b))),
        "Bhat": (rf.B, -qmul(n, qconj(t))),
    }
    return {k: float(np.max(np.abs(a - c))) for k, (a, c) in pairs.items()}


def frame_ode_residuals(curve: SampledCurve, frames: QuatFrameSamples) -> dict:
    """Central-difference residuals of the shifted-torsion frame equations.

    ``T' = kN``, ``N' = -kT + (tau + d)B``, ``B' = -(tau + d)N`` with
    ``d = -1`` on the left and ``+1`` on the right. Interior nodes only.
    """
    if len(curve) < 3:
        raise TooFewSamples("need at least 3 samples")
    h = curve.h
    k = curve.kappa[1:-1, None]
    w = (curve.tau[1:-1] + frames.torsion_shift)[:, None]

    def d(x):
        return (x[2:] - x[:-2]) / (2.0 * h)

    if not frames.framed:
        return {"T": float(np.max(np.abs(d(frames.T))))}
    T, N, B = frames.T, frames.N, frames.B
    c = slice(1, -1)
    return {
        "T": float(np.max(np.abs(d(T) - k * N[c]))),
        "N": float(np.max(np.abs(d(N) + k * T[c] - w * B[c]))),
        "B": float(np.max(np.abs(d(B) + w * N[c]))),
    }


# -- trace geometry -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TraceGeometry:
    """Geometry of the T-trace of a frame as a curve on the unit sphere.

    ``kappa_hat`` is the signed geodesic curvature on interior nodes,
    ``pole`` the axis of the fitted circle (a pure unit quaternion),
    ``cos_T``/``cos_B`` the cone cosines ``<T, u>`` and ``<B, u>``.
    """

    side: str
    s: np.ndarray
    kappa_hat: np.ndarray
    pole: np.ndarray
    pole_B: np.ndarray
    cos_T: np.ndarray
    cos_B: np.ndarray

    @property
    def pole_gap(self) -> float:
        """Distance between the T- and B-trace poles, up to sign."""
        return float(min(np.linalg.norm(self.pole - self.pole_B), np.linalg.norm(self.pole + self.pole_B)))


def fit_circle_pole(points: np.ndarray, spread_tol: float = 1e-9) -> Optional[np.ndarray]:
    """Unit normal of the least-squares plane through ``points`` (rows in R^3).

    Returns ``None`` when the points do not span a plane.
    """
    centred = points - points.mean(axis=0)
    _, sv, vt = np.linalg.svd(centred, full_matrices=False)
    if sv[1] <= spread_tol * np.sqrt(len(points)):
        return None
    return vt[2]


def trace_geometry(frames: QuatFrameSamples, curve: SampledCurve) -> TraceGeometry:
    if not frames.framed or np.any(curve.kappa < KAPPA_EPS):
        raise DegenerateTrace("trace geometry needs kappa > 0 on the whole curve")
    if len(curve) < 5:
        raise TooFewSamples("need at least 5 samples")
    T = frames.T[:, 1:]
    B = frames.B[:, 1:]
    pole = fit_circle_pole(T)
    if pole is None:
        raise DegenerateTrace("T-trace does not span a plane")
    pole_b = fit_circle_pole(B)
    if pole_b is None:
        # B stays put (shifted torsion zero): the point is its own pole
        pole_b = B.mean(axis=0)
        pole_b = pole_b / np.linalg.norm(pole_b)
    cos_b = B @ pole
    if cos_b.mean() < 0:
        pole = -pole
        cos_b = -cos_b
    if pole_b @ pole < 0:
        pole_b = -pole_b
    h = curve.h
    d1 = (T[2:] - T[:-2]) / (2.0 * h)
    d2 = (T[2:] - 2.0 * T[1:-1] + T[:-2]) / (h * h)
    speed = np.linalg.norm(d1, axis=-1)
    geo = np.linalg.det(np.stack([T[1:-1], d1, d2], axis=1)) / speed**3
    geo = geo * frames.handedness()
    z = np.zeros(1)
    return TraceGeometry(
        side=frames.side,
        s=curve.s[1:-1],
        kappa_hat=geo,
        pole=np.concatenate([z, pole]),
        pole_B=np.concatenate([z, pole_b]),
        cos_T=T @ pole,
        cos_B=cos_b,
    )
