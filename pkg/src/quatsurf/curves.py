"""Arc-length curves in S^3 and R^3 built from prescribed curvature and torsion.

Curves in S^3 are integrated on the 4x4 frame matrix ``F = [alpha t n b]``
(columns), which satisfies ``F' = F A(s)`` with ``A`` skew-symmetric:

    alpha' = t,  t' = kappa n - alpha,  n' = -kappa t + tau b,  b' = -tau n.

Classical RK4 advances ``F`` and modified Gram-Schmidt pulls it back onto
SO(4) after every step. The R^3 integrator uses the same scheme on the
homogeneous matrix ``[[t n b, p], [0, 1]]``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .errors import BadRadii, BadSeedFrame, TooFewSamples, VanishingCurvature
from .quaternion import UnitQuat

KAPPA_EPS = 1e-8
DEFAULT_STEP = 1e-3

GREAT_CIRCLE = "great_circle"
PROPER_HELIX = "proper_helix"
GENERAL_HELIX = "general_helix"
CLIFFORD_FACTOR = "clifford_factor"
TABULATED = "tabulated"
FAMILIES = (GREAT_CIRCLE, PROPER_HELIX, GENERAL_HELIX, CLIFFORD_FACTOR, TABULATED)


# -- curvature / torsion profiles -------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: float

    def __call__(self, s):
        return np.full(np.shape(s), float(self.value))


@dataclass(frozen=True)
class Sinusoid:
    """``mean + amplitude * sin(frequency * s + phase)``."""

    mean: float
    amplitude: float
    frequency: float
    phase: float = 0.0

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        return self.mean + self.amplitude * np.sin(self.frequency * s + self.phase)


@dataclass(frozen=True)
class Table:
    """Piecewise-linear profile through tabulated ``(s, value)`` nodes."""

    s: tuple
    values: tuple

    def __post_init__(self):
        if len(self.s) != len(self.values) or len(self.s) < 2:
            raise ValueError("a table needs at least two (s, value) rows")
        if np.any(np.diff(self.s) <= 0):
            raise ValueError("table s column must be strictly increasing")

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        lo, hi = self.s[0], self.s[-1]
        span = 1e-9 * max(1.0, abs(hi - lo))
        if np.any(s < lo - span) or np.any(s > hi + span):
            raise ValueError(f"table covers [{lo}, {hi}] only")
        return np.interp(s, self.s, self.values)


def read_table_csv(path) -> tuple[Table, Table]:
    """Read a ``s, kappa, tau`` CSV (header row required) into two profiles."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:3]] != ["s", "kappa", "tau"]:
            raise ValueError(f"{path}: expected header 's,kappa,tau'")
        for lineno, row in enumerate(reader, start=2):
            if not row or not "".join(row).strip():
                continue
            if len(row) < 3:
                raise ValueError(f"{path}:{lineno}: expected 3 columns")
            rows.append(tuple(float(v) for v in row[:3]))
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least two data rows")
    s, k, t = zip(*rows)
    return Table(tuple(s), tuple(k)), Table(tuple(s), tuple(t))


# -- seed frames ------------------------------------------------------------

IDENTITY4 = tuple(np.eye(4).ravel())


def check_seed(m: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    k = m.shape[0]
    if m.shape != (k, k):
        raise BadSeedFrame("seed frame must be square")
    if np.max(np.abs(m.T @ m - np.eye(k))) > tol:
        raise BadSeedFrame("seed frame columns are not orthonormal")
    if np.linalg.det(m) <= 0:
        raise BadSeedFrame("seed frame must be positively oriented")
    return m


def complete_frame(alpha0, t0) -> np.ndarray:
    """A positively oriented orthonormal 4-frame whose first columns are ``alpha0, t0``."""
    alpha0 = np.asarray(alpha0, dtype=float)
    t0 = np.asarray(t0, dtype=float)
    cols = [alpha0 / np.linalg.norm(alpha0)]
    t0 = t0 - (t0 @ cols[0]) * cols[0]
    cols.append(t0 / np.linalg.norm(t0))
    for e in np.eye(4):
        if len(cols) == 4:
            break
        v = e - sum((e @ c) * c for c in cols)
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            cols.append(v / nv)
    m = np.column_stack(cols)
    if np.linalg.det(m) < 0:
        m[:, 3] = -m[:, 3]
    return m


def random_seed(seed: int) -> np.ndarray:
    """Deterministic random element of SO(4)."""
    rng = np.random.default_rng(int(seed))
    q, r = np.linalg.qr(rng.normal(size=(4, 4)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


# -- specs ------------------------------------------------------------------


@dataclass(frozen=True)
class CurveSpec:
    """Recipe for an arc-length curve in S^3.

    Use the named constructors; ``seed`` is the flattened 4x4 frame
    ``[alpha t n b]`` at ``s_min``.
    """

    family: str
    s_min: float = 0.0
    s_max: float = 1.0
    h: float = DEFAULT_STEP
    kappa: Optional[Callable] = None
    tau: Optional[Callable] = None
    b: float = 0.0
    sign: int = 1
    radii: tuple = ()
    seed: tuple = IDENTITY4

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown curve family {self.family!r}")
        if not self.h > 0:
            raise ValueError("step h must be positive")
        if not self.s_max > self.s_min:
            raise ValueError("need s_max > s_min")
        if self.family == CLIFFORD_FACTOR:
            r1, r2 = self.radii
            if abs(r1 * r1 + r2 * r2 - 1.0) > 1e-10:
                raise BadRadii(f"R1^2 + R2^2 = {r1 * r1 + r2 * r2!r} != 1")
        if self.family == GENERAL_HELIX and self.sign not in (1, -1):
            raise ValueError("general helix sign must be +1 or -1")
        check_seed(self.seed_matrix())

    @classmethod
    def great_circle(cls, s_min=0.0, s_max=2 * math.pi, h=DEFAULT_STEP, seed=None):
        return cls(GREAT_CIRCLE, s_min, s_max, h, seed=_seed_tuple(seed))

    @classmethod
    def proper_helix(cls, kappa0, tau0, s_min=0.0, s_max=1.0, h=DEFAULT_STEP, seed=None):
        return cls(PROPER_HELIX, s_min, s_max, h, kappa=Constant(kappa0), tau=Constant(tau0),
                   seed=_seed_tuple(seed))

    @classmethod
    def general_helix(cls, b, sign=1, kappa=1.0, s_min=0.0, s_max=1.0, h=DEFAULT_STEP, seed=None):
        """Helix with ``tau = b * kappa + sign``; ``kappa`` is a number or a profile."""
        if not callable(kappa):
            kappa = Constant(float(kappa))
        return cls(GENERAL_HELIX, s_min, s_max, h, kappa=kappa, b=float(b), sign=int(sign),
                   seed=_seed_tuple(seed))

    @classmethod
    def clifford_factor(cls, r1, r2, s_min=0.0, s_max=2 * math.pi, h=DEFAULT_STEP):
        return cls(CLIFFORD_FACTOR, s_min, s_max, h, radii=(float(r1), float(r2)))

    @classmethod
    def tabulated(cls, kappa: Table, tau: Table, s_min=None, s_max=None, h=DEFAULT_STEP, seed=None):
        s_min = kappa.s[0] if s_min is None else s_min
        s_max = kappa.s[-1] if s_max is None else s_max
        return cls(TABULATED, s_min, s_max, h, kappa=kappa, tau=tau, seed=_seed_tuple(seed))

    @classmethod
    def from_rows(cls, rows, **kw):
        s, k, t = zip(*rows)
        return cls.tabulated(Table(tuple(s), tuple(k)), Table(tuple(s), tuple(t)), **kw)

    @classmethod
    def from_csv(cls, path, **kw):
        k, t = read_table_csv(path)
        return cls.tabulated(k, t, **kw)

    @property
    def framed(self) -> bool:
        return self.family not in (GREAT_CIRCLE, CLIFFORD_FACTOR)

    def seed_matrix(self) -> np.ndarray:
        return np.array(self.seed, dtype=float).reshape(4, 4)

    def nodes(self, h=None) -> np.ndarray:
        h = self.h if h is None else h
        n = int(round((self.s_max - self.s_min) / h))
        return self.s_min + h * np.arange(n + 1)

    def curvature(self, s) -> np.ndarray:
        if not self.framed:
            return np.zeros(np.shape(s))
        return np.asarray(self.kappa(s), dtype=float)

    def torsion(self, s) -> np.ndarray:
        if not self.framed:
            return np.zeros(np.shape(s))
        if self.family == GENERAL_HELIX:
            return self.b * self.curvature(s) + self.sign
        return np.asarray(self.tau(s), dtype=float)

    def with_range(self, s_min, s_max, h=None) -> "CurveSpec":
        from dataclasses import replace

        return replace(self, s_min=s_min, s_max=s_max, h=self.h if h is None else h)

    def describe(self) -> dict:
        d = {"family": self.family, "s_min": self.s_min, "s_max": self.s_max, "h": self.h}
        if self.family == PROPER_HELIX:
            d.update(kappa=self.kappa.value, tau=self.tau.value)
        elif self.family == GENERAL_HELIX:
            d.update(b=self.b, sign=self.sign, kappa=_describe_profile(self.kappa))
        elif self.family == CLIFFORD_FACTOR:
            d.update(r1=self.radii[0], r2=self.radii[1])
        elif self.family == TABULATED:
            d.update(rows=len(self.kappa.s))
        d["seed"] = [list(map(float, row)) for row in self.seed_matrix()]
        return d


def _describe_profile(p):
    if isinstance(p, Constant):
        return p.value
    if isinstance(p, Sinusoid):
        return {"sinusoid": [p.mean, p.amplitude, p.frequency, p.phase]}
    if isinstance(p, Table):
        return {"table_rows": len(p.s)}
    return repr(p)


def _seed_tuple(seed) -> tuple:
    if seed is None:
        return IDENTITY4
    return tuple(float(v) for v in np.asarray(seed, dtype=float).ravel())


@dataclass(frozen=True)
class CurveSpecR3:
    """Recipe for an arc-length curve in R^3 (classical Frenet equations)."""

    kappa: Callable
    tau: Callable
    s_min: float = 0.0
    s_max: float = 1.0
    h: float = DEFAULT_STEP
    line: bool = False

    @classmethod
    def constant(cls, kappa, tau, **kw):
        return cls(Constant(kappa), Constant(tau), line=(kappa == 0), **kw)

    def nodes(self) -> np.ndarray:
        n = int(round((self.s_max - self.s_min) / self.h))
        return self.s_min + self.h * np.arange(n + 1)


# -- samples ----------------------------------------------------------------


@dataclass(frozen=True)
class FrenetSample:
    s: float
    alpha: UnitQuat
    t: np.ndarray
    n: Optional[np.ndarray]
    b: Optional[np.ndarray]
    kappa: float
    tau: float


def _frozen(a):
    if a is None:
        return None
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """A curve in S^3 sampled on a uniform arc-length grid.

    ``n`` and ``b`` are ``None`` for geodesics, where the normal is undefined.
    """

    spec: CurveSpec
    s: np.ndarray
    alpha: np.ndarray
    t: np.ndarray
    n: Optional[np.ndarray]
    b: Optional[np.ndarray]
    kappa: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        for name in ("s", "alpha", "t", "n", "b", "kappa", "tau"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def framed(self) -> bool:
        return self.n is not None

    @property
    def h(self) -> float:
        return float(self.s[1] - self.s[0])

    def __len__(self):
        return len(self.s)

    def sample(self, i: int) -> FrenetSample:
        return FrenetSample(
            float(self.s[i]),
            UnitQuat.from_array(self.alpha[i]),
            self.t[i],
            None if self.n is None else self.n[i],
            None if self.b is None else self.b[i],
            float(self.kappa[i]),
            float(self.tau[i]),
        )

    def frame_matrices(self) -> np.ndarray:
        """Stack of ``[alpha t n b]`` matrices, shape ``(len, 4, 4)``."""
        if not self.framed:
            raise ValueError("geodesic samples carry no (n, b)")
        return np.stack([self.alpha, self.t, self.n, self.b], axis=-1)

    def window(self, start: int, stop: int) -> "SampledCurve":
        """Samples ``start:stop`` as a curve of their own."""
        sl = slice(start, stop)
        return SampledCurve(
            self.spec, self.s[sl], self.alpha[sl], self.t[sl],
            None if self.n is None else self.n[sl],
            None if self.b is None else self.b[sl],
            self.kappa[sl], self.tau[sl],
        )

    def reversed(self) -> "SampledCurve":
        """The same curve traversed backwards, ``s -> -s``.

        The tangent and binormal flip, so the frame stays positively oriented
        and curvature and torsion are unchanged.
        """
        r = slice(None, None, -1)
        return SampledCurve(
            self.spec, -self.s[r], self.alpha[r], -self.t[r],
            None if self.n is None else self.n[r],
            None if self.b is None else -self.b[r],
            self.kappa[r], self.tau[r],
        )


@dataclass(frozen=True, eq=False)
class SampledCurveR3:
    s: np.ndarray
    position: np.ndarray
    t: np.ndarray
    n: Optional[np.ndarray]
    b: Optional[np.ndarray]
    kappa: np.ndarray
    tau: np.ndarray
    spec: Optional[CurveSpecR3] = None
    notes: tuple = field(default=())

    def __post_init__(self):
        for name in ("s", "position", "t", "n", "b", "kappa", "tau"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def framed(self) -> bool:
        return self.n is not None

    @property
    def h(self) -> float:
        return float(self.s[1] - self.s[0])

    def __len__(self):
        return len(self.s)


# -- integration ------------------------------------------------------------


def gram_schmidt(m: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt on the columns of ``m`` (order preserved)."""
    q = np.array(m, dtype=float)
    k = q.shape[1]
    for j in range(k):
        for i in range(j):
            q[:, j] -= (q[:, i] @ q[:, j]) * q[:, i]
        q[:, j] /= math.sqrt(q[:, j] @ q[:, j])
    return q


def _generators_s3(kappa: np.ndarray, tau: np.ndarray) -> np.ndarray:
    a = np.zeros(kappa.shape + (4, 4))
    a[..., 1, 0] = 1.0
    a[..., 0, 1] = -1.0
    a[..., 2, 1] = kappa
    a[..., 1, 2] = -kappa
    a[..., 3, 2] = tau
    a[..., 2, 3] = -tau
    return a


def _generators_r3(kappa: np.ndarray, tau: np.ndarray) -> np.ndarray:
    # homogeneous [[T N B, p], [0, 1]]: frame block F A3, translation column t
    a = np.zeros(kappa.shape + (4, 4))
    a[..., 1, 0] = kappa
    a[..., 0, 1] = -kappa
    a[..., 2, 1] = tau
    a[..., 1, 2] = -tau
    a[..., 0, 3] = 1.0
    return a


def _rk4(f0: np.ndarray, gens: np.ndarray, h: float, reortho) -> np.ndarray:
    """Integrate ``F' = F A`` with ``gens[2i], gens[2i+1], gens[2i+2]`` at node/mid/node."""
    n = (len(gens) - 1) // 2
    out = np.empty((n + 1,) + f0.shape)
    f = f0.copy()
    out[0] = f
    for i in range(n):
        a0, am, a1 = gens[2 * i], gens[2 * i + 1], gens[2 * i + 2]
        k1 = f @ a0
        k2 = (f + 0.5 * h * k1) @ am
        k3 = (f + 0.5 * h * k2) @ am
        k4 = (f + h * k3) @ a1
        f = reortho(f + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        out[i + 1] = f
    return out


def integrate_frenet_s3(spec: CurveSpec) -> SampledCurve:
    """Sample the arc-length curve in S^3 described by ``spec``."""
    if spec.family == CLIFFORD_FACTOR:
        r1, r2 = spec.radii
        return clifford_factor_curve(r1, r2, spec.s_min, spec.s_max, spec.h)
    s = spec.nodes()
    h = spec.h
    half = s[0] + 0.5 * h * np.arange(2 * len(s) - 1)
    kappa = spec.curvature(half)
    tau = spec.torsion(half)
    if spec.framed:
        bad = np.nonzero(kappa[::2] < KAPPA_EPS)[0]
        if len(bad):
            raise VanishingCurvature(
                f"kappa < {KAPPA_EPS} at s = {s[bad[0]]!r} ({len(bad)} nodes)"
            )
    frames = _rk4(spec.seed_matrix(), _generators_s3(kappa, tau), h, gram_schmidt)
    framed = spec.framed
    return SampledCurve(
        spec=spec,
        s=s,
        alpha=frames[:, :, 0],
        t=frames[:, :, 1],
        n=frames[:, :, 2] if framed else None,
        b=frames[:, :, 3] if framed else None,
        kappa=kappa[::2],
        tau=tau[::2] if framed else np.zeros(len(s)),
    )


def clifford_factor_curve(r1, r2, s_min=0.0, s_max=2 * math.pi, h=DEFAULT_STEP) -> SampledCurve:
    """The great circle ``(cos t, (R1^2 - R2^2) sin t, 0, 2 R1 R2 sin t)``.

    Multiplying the circle ``(cos s, sin s, 0, 0)`` on the right by this
    curve gives a rotated copy of the Clifford torus with radii R1, R2.
    """
    spec = CurveSpec.clifford_factor(r1, r2, s_min, s_max, h)
    c = r1 * r1 - r2 * r2
    d = 2.0 * r1 * r2
    s = spec.nodes()
    cs, sn = np.cos(s), np.sin(s)
    z = np.zeros_like(s)
    alpha = np.stack([cs, c * sn, z, d * sn], axis=-1)
    t = np.stack([-sn, c * cs, z, d * cs], axis=-1)
    return SampledCurve(spec, s, alpha, t, None, None, np.zeros_like(s), np.zeros_like(s))


def integrate_frenet_r3(spec: CurveSpecR3, seed=None, origin=None) -> SampledCurveR3:
    """Integrate ``p' = T, T' = kN, N' = -kT + tB, B' = -tN`` from a seed frame."""
    seed = np.eye(3) if seed is None else check_seed(seed)
    origin = np.zeros(3) if origin is None else np.asarray(origin, dtype=float)
    s = spec.nodes()
    h = spec.h
    half = s[0] + 0.5 * h * np.arange(2 * len(s) - 1)
    kappa = np.asarray(spec.kappa(half), dtype=float)
    tau = np.asarray(spec.tau(half), dtype=float)
    if not spec.line:
        bad = np.nonzero(kappa[::2] < KAPPA_EPS)[0]
        if len(bad):
            raise VanishingCurvature(f"kappa < {KAPPA_EPS} at s = {s[bad[0]]!r}")
    g0 = np.eye(4)
    g0[:3, :3] = seed
    g0[:3, 3] = origin

    def reortho(g):
        g = g.copy()
        g[:3, :3] = gram_schmidt(g[:3, :3])
        return g

    gs = _rk4(g0, _generators_r3(kappa, tau), h, reortho)
    framed = not spec.line
    return SampledCurveR3(
        s=s,
        position=gs[:, :3, 3],
        t=gs[:, :3, 0],
        n=gs[:, :3, 1] if framed else None,
        b=gs[:, :3, 2] if framed else None,
        kappa=kappa[::2],
        tau=tau[::2] if framed else np.zeros(len(s)),
        spec=spec,
    )


# -- finite-difference invariants -----------------------------------------


def fd_curve_invariants(curve) -> tuple[np.ndarray, np.ndarray]:
    """Curvature and torsion recovered by central differences of the frame.

    In S^3: ``kappa = |t' + alpha|`` and ``tau = -<b', n>``; in R^3 the
    ``alpha`` term is absent. Values are for interior nodes only; the
    torsion is NaN for curves without a normal.
    """
    if len(curve) < 5:
        raise TooFewSamples("need at least 5 samples for central differences")
    h = curve.h
    dt = (curve.t[2:] - curve.t[:-2]) / (2.0 * h)
    if isinstance(curve, SampledCurve):
        dt = dt + curve.alpha[1:-1]
    kappa_hat = np.linalg.norm(dt, axis=-1)
    if not curve.framed:
        return kappa_hat, np.full_like(kappa_hat, np.nan)
    db = (curve.b[2:] - curve.b[:-2]) / (2.0 * h)
    tau_hat = -np.sum(db * curve.n[1:-1], axis=-1)
    return kappa_hat, tau_hat


def orthonormality_drift(curve: SampledCurve) -> np.ndarray:
    """Per-node ``max |F^T F - I|`` for the frame matrix (or the [alpha, t] pair)."""
    if curve.framed:
        f = curve.frame_matrices()
    else:
        f = np.stack([curve.alpha, curve.t], axis=-1)
    eye = np.eye(f.shape[-1])
    return np.max(np.abs(np.einsum("nki,nkj->nij", f, f) - eye), axis=(1, 2))


def rigid_motion_residual(c1: SampledCurve, c2: SampledCurve) -> float:
    """Fit ``R`` in SO(4) from the first frames and return ``max |F2 - R F1|``."""
    if c1.framed and c2.framed:
        f1, f2 = c1.frame_matrices(), c2.frame_matrices()
        r = f2[0] @ f1[0].T
        return float(np.max(np.abs(f2 - np.einsum("ij,njk->nik", r, f1))))
    # geodesics: the rotation is fixed on span{alpha0, t0}
    a1 = np.stack([c1.alpha, c1.t], axis=-1)
    a2 = np.stack([c2.alpha, c2.t], axis=-1)
    r = a2[0] @ np.linalg.pinv(a1[0])
    return float(np.max(np.abs(a2 - np.einsum("ij,njk->nik", r, a1))))


def load_curve_csv(path: Path | str, **kw) -> CurveSpec:
    return CurveSpec.from_csv(path, **kw)
