"""Finite-difference fundamental forms of a sampled immersion.

Everything here works from the point grid alone: second-order central
differences for the derivatives and a Gram-Schmidt normal. None of the
closed forms in :mod:`quatsurf.surface` are used, so the two can be
compared as independent computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateTangents, TooFewSamples
from .surface import FundForms

S3 = "s3"
R3 = "r3"
AREA_EPS = 1e-8


@dataclass(frozen=True, eq=False)
class OracleForms:
    """Forms on interior nodes of the sampled grid."""

    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray
    H: np.ndarray
    K_ext: np.ndarray
    N: np.ndarray
    h_s: float
    h_t: float
    ambient: str

    def forms(self) -> FundForms:
        return FundForms(self.E, self.F, self.G, self.e, self.f, self.g)


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def _orthonormal_complement(span: list[np.ndarray]) -> tuple[np.ndarray, float]:
    """Unit vector orthogonal to ``span`` at each node, plus the worst residual."""
    q = []
    for v in span:
        w = v.copy()
        for u in q:
            w = w - _dot(w, u)[..., None] * u
        q.append(w / np.linalg.norm(w, axis=-1, keepdims=True))
    dim = span[0].shape[-1]
    best = None
    best_norm = None
    for k in range(dim):
        r = np.zeros_like(span[0])
        r[..., k] = 1.0
        for u in q:
            r = r - _dot(r, u)[..., None] * u
        rn = np.linalg.norm(r, axis=-1)
        if best is None:
            best, best_norm = r, rn
        else:
            pick = rn > best_norm
            best = np.where(pick[..., None], r, best)
            best_norm = np.where(pick, rn, best_norm)
    n = best / best_norm[..., None]
    resid = max(float(np.max(np.abs(_dot(n, u)))) for u in q)
    return n, resid


def fd_fundamental_forms(X: np.ndarray, h_s: float, h_t: float, ambient: str = S3,
                         reference_normal: Optional[np.ndarray] = None) -> OracleForms:
    """Fundamental forms of the sampled map ``X[i, j]`` by central differences.

    ``reference_normal`` (full grid or interior) fixes the sign of the
    normal; without it the normal completes ``(X, X_s, X_t)`` (or
    ``(X_s, X_t)`` in R^3) to a positive basis.
    """
    X = np.asarray(X, dtype=float)
    if X.shape[0] < 5 or X.shape[1] < 5:
        raise TooFewSamples("oracle needs at least a 5 x 5 grid")
    c = X[1:-1, 1:-1]
    Xs = (X[2:, 1:-1] - X[:-2, 1:-1]) / (2.0 * h_s)
    Xt = (X[1:-1, 2:] - X[1:-1, :-2]) / (2.0 * h_t)
    Xss = (X[2:, 1:-1] - 2.0 * c + X[:-2, 1:-1]) / (h_s * h_s)
    Xtt = (X[1:-1, 2:] - 2.0 * c + X[1:-1, :-2]) / (h_t * h_t)
    Xst = (X[2:, 2:] - X[2:, :-2] - X[:-2, 2:] + X[:-2, :-2]) / (4.0 * h_s * h_t)
    E, F, G = _dot(Xs, Xs), _dot(Xs, Xt), _dot(Xt, Xt)
    area = np.sqrt(np.maximum(E * G - F * F, 0.0))
    if np.any(area < AREA_EPS):
        i, j = np.argwhere(area < AREA_EPS)[0]
        raise DegenerateTangents(f"tangents degenerate at interior node ({i + 1}, {j + 1})")
    span = [c, Xs, Xt] if ambient == S3 else [Xs, Xt]
    N, _ = _orthonormal_complement(span)
    if reference_normal is not None:
        ref = np.asarray(reference_normal, dtype=float)
        if ref.shape[:2] == X.shape[:2]:
            ref = ref[1:-1, 1:-1]
        sign = np.sign(_dot(N, ref))
    else:
        sign = np.sign(np.linalg.det(np.stack(span + [N], axis=-2)))
    N = N * np.where(sign == 0, 1.0, sign)[..., None]
    e, f, g = _dot(Xss, N), _dot(Xst, N), _dot(Xtt, N)
    det = E * G - F * F
    H = (e * G - 2.0 * f * F + E * g) / (2.0 * det)
    K_ext = (e * g - f * f) / det
    return OracleForms(E, F, G, e, f, g, H, K_ext, N, float(h_s), float(h_t), ambient)


def normal_residual(forms: OracleForms, X: np.ndarray) -> float:
    """Worst ``|<N, v>|`` over the spanning set used to build the normal."""
    X = np.asarray(X, dtype=float)
    Xs = (X[2:, 1:-1] - X[:-2, 1:-1]) / (2.0 * forms.h_s)
    Xt = (X[1:-1, 2:] - X[1:-1, :-2]) / (2.0 * forms.h_t)
    vals = [_dot(forms.N, Xs), _dot(forms.N, Xt)]
    if forms.ambient == S3:
        vals.append(_dot(forms.N, X[1:-1, 1:-1]))
    return max(float(np.max(np.abs(v))) for v in vals)


def shape_operator(forms) -> tuple[np.ndarray, np.ndarray]:
    """Principal curvatures ``lambda_1 >= lambda_2``: eigenvalues of I^-1 II."""
    E, F, G, e, f, g = forms.E, forms.F, forms.G, forms.e, forms.f, forms.g
    det = E * G - F * F
    # W = I^{-1} II
    w11 = (G * e - F * f) / det
    w12 = (G * f - F * g) / det
    w21 = (E * f - F * e) / det
    w22 = (E * g - F * f) / det
    half = 0.5 * (w11 + w22)
    d = w11 * w22 - w12 * w21
    disc = np.sqrt(np.maximum(half * half - d, 0.0))
    return half + disc, half - disc


def richardson_check(op: Callable[[float], float], h: float, ratio: float = 2.0) -> float:
    """Observed convergence order from errors at step ``ratio * h`` and ``h``."""
    coarse = op(ratio * h)
    fine = op(h)
    if fine == 0.0:
        return math.inf
    return math.log(coarse / fine) / math.log(ratio)


def strided_error(X: np.ndarray, h: float, reference: np.ndarray, quantity: str,
                  stride: int, ambient: str = S3, reference_normal=None) -> float:
    """Max oracle error of ``quantity`` on ``X[::stride, ::stride]``.

    Only nodes interior to the coarsest grid (stride 2) are compared so
    errors at different strides refer to the same points.
    """
    sub = X[::stride, ::stride]
    ref_n = None if reference_normal is None else reference_normal[::stride, ::stride]
    of = fd_fundamental_forms(sub, stride * h, stride * h, ambient, ref_n)
    val = getattr(of, quantity)
    ref = np.asarray(reference)[::stride, ::stride][1:-1, 1:-1]
    err = np.abs(val - ref)
    # align on the nodes shared with the stride-2 interior: original indices 2, 4, ..., 2m-2
    k = 2 // stride
    m = (X.shape[0] - 1) // 2
    n = (X.shape[1] - 1) // 2
    rows = np.arange(1, m) * k - 1
    cols = np.arange(1, n) * k - 1
    return float(np.max(err[np.ix_(rows, cols)]))


def observed_order(X: np.ndarray, h: float, reference: np.ndarray, quantity: str,
                   ambient: str = S3, reference_normal=None) -> float:
    """Richardson order of the oracle ``quantity`` using strides 1 and 2."""
    e1 = strided_error(X, h, reference, quantity, 1, ambient, reference_normal)
    e2 = strided_error(X, h, reference, quantity, 2, ambient, reference_normal)
    if e1 == 0.0:
        return math.inf
    return math.log(e2 / e1) / math.log(2.0)
