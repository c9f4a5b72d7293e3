"""Partner translation surfaces in R^3 for translation surfaces in S^3.

The R^3 partner of ``alpha`` uses the left frame ``(T, N, B)`` as its
Frenet frame (torsion ``tau - 1``); the partner of ``beta`` uses the
negated right frame ``(-That, -Nhat, -Bhat)`` (torsion ``tau + 1``), which
is the positively oriented choice. Pure quaternions are read as vectors
of R^3 by dropping the real part, keeping the (x, y, z) order.

With this choice ``a~(s) + b~(t)`` has the same first fundamental form
as ``alpha(s) beta(t)``, the same Gaussian curvature, and mean curvature
``H~ = H + F / sqrt(1 - F^2)`` with ``F = <T_alpha, That_beta>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .curves import CurveSpec, SampledCurve, SampledCurveR3, Table
from .errors import GaugeMismatch, VanishingCurvature
from .frames import left_frame, right_frame
from .quaternion import imag
from .surface import (
    DEFAULT_DELTA,
    GeometryReport,
    R3Surface,
    SurfaceGrid,
    analyze,
    build_surface,
    r3_translation_surface,
)

ISOMETRY_TOL = 1e-8
SHIFT_TOL = 1e-5

NOTES = (
    "R^3 identification: pure quaternion (0, x, y, z) -> (x, y, z)",
    "beta partner uses the frame (-That, -Nhat, -Bhat); lifting along That itself is "
    "negatively oriented and flips the sign of the Gaussian curvature",
    "second-form terms use <B_alpha, That_beta>; <B_alpha, T_alpha> would vanish identically",
    "isometry compares the metric coefficient <X_s, X_t> = -<T_alpha, That_beta>",
)


def _cumulative_hermite(v: np.ndarray, dv: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral of ``v`` by the end-corrected trapezoid rule (uses ``v'``)."""
    out = np.zeros_like(v)
    steps = 0.5 * h * (v[1:] + v[:-1]) - (h * h / 12.0) * (dv[1:] - dv[:-1])
    out[1:] = np.cumsum(steps, axis=0)
    return out


def _lift(curve: SampledCurve, side: str) -> SampledCurveR3:
    if side == "left":
        fr = left_frame(curve)
        sign, shift = 1.0, -1.0
    else:
        fr = right_frame(curve)
        sign, shift = -1.0, 1.0
    t = sign * imag(fr.T)
    if not curve.framed:
        pos = _cumulative_hermite(t, np.zeros_like(t), curve.h)
        return SampledCurveR3(curve.s, pos, t, None, None, np.zeros(len(curve)), np.zeros(len(curve)),
                              notes=("straight line along the constant frame tangent",))
    n = sign * imag(fr.N)
    pos = _cumulative_hermite(t, curve.kappa[:, None] * n, curve.h)
    return SampledCurveR3(curve.s, pos, t, n, sign * imag(fr.B), curve.kappa, curve.tau + shift)


def lift_to_r3(alpha: SampledCurve, beta: SampledCurve) -> tuple[SampledCurveR3, SampledCurveR3]:
    """R^3 partner curves: ``(kappa, tau - 1)`` for alpha, ``(kappa, tau + 1)`` for beta."""
    return _lift(alpha, "left"), _lift(beta, "right")


@dataclass(frozen=True, eq=False)
class CorrespondencePair:
    grid: SurfaceGrid
    report: GeometryReport
    r3: R3Surface
    alpha_r3: SampledCurveR3
    beta_r3: SampledCurveR3
    residuals: dict
    notes: tuple = field(default=NOTES)

    @property
    def shift(self) -> np.ndarray:
        return self.grid.F / self.grid.root

    def passed(self, iso_tol=ISOMETRY_TOL, tol=SHIFT_TOL) -> dict:
        r = self.residuals
        return {
            "isometry": max(r["E"], r["F"], r["G"]) <= iso_tol,
            "gauss": r["K"] <= tol,
            "shift_law": r["shift_law"] <= tol,
        }

    def to_dict(self) -> dict:
        inner = (slice(1, -1), slice(1, -1))
        return {
            "torsion_shift": {"alpha": -1, "beta": 1},
            "residuals": dict(self.residuals),
            "pass": self.passed(),
            "H": {"min": float(self.report.H[inner].min()), "max": float(self.report.H[inner].max())},
            "H_r3": {"min": float(self.r3.H[inner].min()), "max": float(self.r3.H[inner].max())},
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def correspond(alpha: SampledCurve, beta: SampledCurve, delta: float = DEFAULT_DELTA) -> CorrespondencePair:
    grid = build_surface(alpha, beta, delta)
    report = analyze(grid)
    a3, b3 = lift_to_r3(alpha, beta)
    r3 = r3_translation_surface(a3, b3, delta)
    return verify_correspondence(grid, report, r3, a3, b3)


def verify_correspondence(grid, report, r3, a3, b3, iso_tol: float = ISOMETRY_TOL) -> CorrespondencePair:
    """Node-wise residuals of the isometry, the curvature match and the shift law."""
    s3 = report.forms
    inner = (slice(1, -1), slice(1, -1))
    res = {
        "E": float(np.max(np.abs(r3.forms.E - s3.E))),
        "F": float(np.max(np.abs(r3.forms.F - s3.F))),
        "G": float(np.max(np.abs(r3.forms.G - s3.G))),
        "K": float(np.max(np.abs(r3.K - report.K)[inner])),
        "shift_law": float(np.max(np.abs(r3.H - report.H - grid.F / grid.root)[inner])),
    }
    if res["F"] > iso_tol:
        raise GaugeMismatch(f"first forms differ by {res['F']:.3e}; frames are not gauge-aligned")
    return CorrespondencePair(grid, report, r3, a3, b3, res)


def _spec_from_arrays(s, kappa, tau, line: bool) -> CurveSpec:
    h = float(s[1] - s[0])
    if line:
        return CurveSpec.great_circle(float(s[0]), float(s[-1]), h)
    if np.any(kappa < 1e-8):
        raise VanishingCurvature("partner curve has vanishing curvature but is not a line")
    if np.ptp(kappa) <= 1e-12 and np.ptp(tau) <= 1e-12:
        return CurveSpec.proper_helix(float(kappa[0]), float(tau[0]), float(s[0]), float(s[-1]), h)
    ks = tuple(map(float, s))
    return CurveSpec.tabulated(Table(ks, tuple(map(float, kappa))), Table(ks, tuple(map(float, tau))),
                               h=h)


def reverse_lift(a3: SampledCurveR3, b3: SampledCurveR3) -> tuple[CurveSpec, CurveSpec]:
    """S^3 specs whose partners have the given curvature and torsion.

    The alpha slot gets ``tau = tau~ + 1``, the beta slot ``tau = tau~ - 1``;
    straight lines become great circles.
    """
    sa = _spec_from_arrays(a3.s, a3.kappa, a3.tau + 1.0, not a3.framed)
    sb = _spec_from_arrays(b3.s, b3.kappa, b3.tau - 1.0, not b3.framed)
    return sa, sb
