"""Translation surfaces ``X(s, t) = alpha(s) beta(t)`` in S^3 and their geometry.

Notation used below, with ``C = <T_alpha, That_beta>`` (left frame of
alpha against right frame of beta):

* metric: ``E = G = 1`` and ``<X_s, X_t> = -C``;
* unit normal: ``nu = (C X - alpha' beta') / sqrt(1 - C^2)``;
* second form w.r.t. ``nu``:
  ``e = -k_a <B_a, That_b> / r``, ``f = -r``, ``g = k_b <T_a, Bhat_b> / r``
  with ``r = sqrt(1 - C^2)``.

H and K_ext come from the coefficient formulas. ``SurfaceGrid.F`` holds
``C`` itself; ``FundForms.F`` holds the metric coefficient ``-C``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .curves import SampledCurve, SampledCurveR3
from .errors import RegularityViolation
from .frames import QuatFrameSamples, left_frame, right_frame
from .quaternion import qmul

DEFAULT_DELTA = 1e-3

CSV_COLUMNS = ("s", "t", "F", "e", "f", "g", "H", "K", "K_ext", "min_res", "umb_defect")


@dataclass(frozen=True, eq=False)
class SurfaceGrid:
    s: np.ndarray
    t: np.ndarray
    X: np.ndarray
    F: np.ndarray
    delta: float
    alpha: SampledCurve
    beta: SampledCurve
    left: QuatFrameSamples
    right: QuatFrameSamples

    @property
    def shape(self):
        return self.F.shape

    @property
    def root(self) -> np.ndarray:
        """``sqrt(1 - F^2)``, the area element."""
        return np.sqrt(1.0 - self.F**2)


@dataclass(frozen=True, eq=False)
class FundForms:
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray

    def sub(self, sl) -> "FundForms":
        return FundForms(*(getattr(self, k)[sl] for k in ("E", "F", "G", "e", "f", "g")))


@dataclass(frozen=True, eq=False)
class GeometryReport:
    forms: FundForms
    N: np.ndarray
    H: np.ndarray
    K: np.ndarray
    K_ext: np.ndarray
    minimality: np.ndarray
    flatness: np.ndarray
    umbilicity: np.ndarray
    expanded_H_deviation: np.ndarray = None
    expanded_K_ext_deviation: np.ndarray = None
    notes: tuple = field(default=())


def _offending(mask, s, t, limit=None):
    idx = np.argwhere(mask)
    if limit is not None:
        idx = idx[:limit]
    return [(float(s[i]), float(t[j])) for i, j in idx]


def build_surface(alpha: SampledCurve, beta: SampledCurve, delta: float = DEFAULT_DELTA,
                  strict: bool = True) -> SurfaceGrid:
    """Tensor grid of ``alpha(s) beta(t)`` on the curves' native nodes.

    With ``strict`` every node must satisfy ``|F| <= 1 - delta``; otherwise
    the grid is returned as is and the caller decides what to trim.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    lf = left_frame(alpha)
    rf = right_frame(beta)
    F = lf.T @ rf.T.T
    bad = np.abs(F) > 1.0 - delta
    if strict and bad.any():
        nodes = _offending(bad, alpha.s, beta.s)
        raise RegularityViolation(
            f"|<T_a, That_b>| > 1 - {delta} at {len(nodes)} node(s), first {nodes[0]}", nodes
        )
    X = qmul(alpha.alpha[:, None, :], beta.alpha[None, :, :])
    return SurfaceGrid(alpha.s, beta.s, X, F, delta, alpha, beta, lf, rf)


def regular_mask(grid: SurfaceGrid) -> np.ndarray:
    return np.abs(grid.F) <= 1.0 - grid.delta


def closed_form_normal(grid: SurfaceGrid) -> np.ndarray:
    Y = qmul(grid.alpha.t[:, None, :], grid.beta.t[None, :, :])
    return (grid.F[..., None] * grid.X - Y) / grid.root[..., None]


def _cross_terms(grid: SurfaceGrid):
    """``k_a <B_a, That_b>`` and ``k_b <T_a, Bhat_b>`` (zero for geodesics)."""
    shape = grid.shape
    if grid.left.framed:
        ea = grid.alpha.kappa[:, None] * (grid.left.B @ grid.right.T.T)
    else:
        ea = np.zeros(shape)
    if grid.right.framed:
        gb = grid.beta.kappa[None, :] * (grid.left.T @ grid.right.B.T)
    else:
        gb = np.zeros(shape)
    return ea, gb


def closed_form_second_form(grid: SurfaceGrid) -> FundForms:
    r = grid.root
    ea, gb = _cross_terms(grid)
    one = np.ones(grid.shape)
    return FundForms(E=one, F=-grid.F, G=one.copy(), e=-ea / r, f=-r, g=gb / r)


def mean_curvature(forms: FundForms) -> np.ndarray:
    E, F, G, e, f, g = forms.E, forms.F, forms.G, forms.e, forms.f, forms.g
    return (e * G - 2.0 * f * F + E * g) / (2.0 * (E * G - F * F))


def gauss_curvature(forms: FundForms):
    """``(K_ext, K)`` with ``K = K_ext + 1`` (Gauss equation in S^3)."""
    E, F, G, e, f, g = forms.E, forms.F, forms.G, forms.e, forms.f, forms.g
    k_ext = (e * g - f * f) / (E * G - F * F)
    return k_ext, k_ext + 1.0


def minimality_residual(grid: SurfaceGrid) -> np.ndarray:
    """Vanishes exactly where H does: ``H = -res / (2 (1 - F^2)^(3/2))``."""
    ea, gb = _cross_terms(grid)
    C = grid.F
    return ea - gb - 2.0 * C * (C * C - 1.0)


def flatness_residual(grid: SurfaceGrid) -> np.ndarray:
    """Vanishes exactly where K does: ``K = -res / (1 - F^2)^2``."""
    ea, gb = _cross_terms(grid)
    return ea * gb


def principal_curvatures(H, K_ext):
    disc = np.sqrt(np.maximum(H * H - K_ext, 0.0))
    return H + disc, H - disc


def umbilicity_defect(forms: FundForms) -> np.ndarray:
    """``|lambda_1 - lambda_2|`` from the Weingarten map of the forms."""
    H = mean_curvature(forms)
    k_ext = (forms.e * forms.g - forms.f**2) / (forms.E * forms.G - forms.F**2)
    l1, l2 = principal_curvatures(H, k_ext)
    return l1 - l2


def analyze(grid: SurfaceGrid) -> GeometryReport:
    forms = closed_form_second_form(grid)
    H = mean_curvature(forms)
    k_ext, K = gauss_curvature(forms)
    res = minimality_residual(grid)
    flat = flatness_residual(grid)
    r2 = 1.0 - grid.F**2
    # common expanded variants: opposite overall sign for H, first power of (1 - F^2) in K_ext
    alt_H = res / (2.0 * r2**1.5)
    alt_k_ext = -flat / r2 - 1.0
    return GeometryReport(
        forms=forms,
        N=closed_form_normal(grid),
        H=H,
        K=K,
        K_ext=k_ext,
        minimality=res,
        flatness=flat,
        umbilicity=umbilicity_defect(forms),
        expanded_H_deviation=H - alt_H,
        expanded_K_ext_deviation=k_ext - alt_k_ext,
    )


# -- R^3 translation surfaces ----------------------------------------------


@dataclass(frozen=True, eq=False)
class R3Surface:
    s: np.ndarray
    t: np.ndarray
    X: np.ndarray
    forms: FundForms
    N: np.ndarray
    H: np.ndarray
    K: np.ndarray


def r3_translation_surface(a: SampledCurveR3, b: SampledCurveR3, delta: float = DEFAULT_DELTA,
                           orientation: float = 1.0) -> R3Surface:
    """``a(s) + b(t)`` with normal ``orientation * t_b x t_a / |t_b x t_a|``."""
    F = a.t @ b.t.T
    bad = np.abs(F) > 1.0 - delta
    if bad.any():
        nodes = _offending(bad, a.s, b.s)
        raise RegularityViolation(f"|<t_a, t_b>| > 1 - {delta} at {len(nodes)} node(s)", nodes)
    X = a.position[:, None, :] + b.position[None, :, :]
    cr = np.cross(b.t[None, :, :], a.t[:, None, :]) * orientation
    N = cr / np.linalg.norm(cr, axis=-1, keepdims=True)
    shape = F.shape
    e = np.zeros(shape)
    g = np.zeros(shape)
    if a.framed:
        e = a.kappa[:, None] * np.einsum("ik,ijk->ij", a.n, N)
    if b.framed:
        g = b.kappa[None, :] * np.einsum("jk,ijk->ij", b.n, N)
    one = np.ones(shape)
    forms = FundForms(one, F, one.copy(), e, np.zeros(shape), g)
    H = mean_curvature(forms)
    K = (e * g) / (1.0 - F * F)
    return R3Surface(a.s, b.s, X, forms, N, H, K)


# -- serialization ----------------------------------------------------------


def _fmt(v: float) -> str:
    return repr(float(v))


def report_rows(grid: SurfaceGrid, report: GeometryReport):
    """Rows of :data:`CSV_COLUMNS` on interior nodes, s-major order."""
    fm = report.forms
    ns, nt = grid.shape
    for i in range(1, ns - 1):
        for j in range(1, nt - 1):
            yield (
                grid.s[i], grid.t[j], grid.F[i, j], fm.e[i, j], fm.f[i, j], fm.g[i, j],
                report.H[i, j], report.K[i, j], report.K_ext[i, j],
                report.minimality[i, j], report.umbilicity[i, j],
            )


def report_csv(grid: SurfaceGrid, report: GeometryReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in report_rows(grid, report):
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _stats(a: np.ndarray) -> dict:
    return {
        "min": float(np.min(a)),
        "max": float(np.max(a)),
        "mean": float(np.mean(a)),
        "absmax": float(np.max(np.abs(a))),
    }


def report_summary(grid: SurfaceGrid, report: GeometryReport, tol_h: float = 1e-8,
                   tol_k: float = 1e-6) -> dict:
    inner = (slice(1, -1), slice(1, -1))
    H = report.H[inner]
    K = report.K[inner]
    return {
        "grid": {"ns": int(grid.shape[0]), "nt": int(grid.shape[1]), "interior_nodes": int(H.size),
                 "delta": grid.delta},
        "F": _stats(grid.F[inner]),
        "H": _stats(H),
        "K": _stats(K),
        "K_ext": _stats(report.K_ext[inner]),
        "minimality_residual": _stats(report.minimality[inner]),
        "umbilicity_defect": _stats(report.umbilicity[inner]),
        "expanded_H_deviation": _stats(report.expanded_H_deviation[inner]),
        "expanded_K_ext_deviation": _stats(report.expanded_K_ext_deviation[inner]),
        "flags": {
            "regular": bool(np.all(regular_mask(grid))),
            "minimal": bool(np.max(np.abs(H)) <= tol_h),
            "cmc": bool(np.std(H) <= tol_h),
            "flat": bool(np.max(np.abs(K)) <= tol_k),
        },
        "normal_convention": "nu = (F X - alpha' beta') / sqrt(1 - F^2), F = <T_alpha, That_beta>",
        "metric_F": "<X_s, X_t> = -F",
    }


def report_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True) + "\n"
