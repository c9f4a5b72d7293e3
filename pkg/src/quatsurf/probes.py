"""Numerical probes of rigidity and non-existence statements.

A probe runs a set of configurations that satisfy a statement's
hypotheses and checks its conclusion on each grid. It also runs negative
controls, which break a hypothesis and are expected to fail the check.
Sampling can only support a statement, so the best verdict is
``supports`` and the message reads "consistent with Theorem".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .curves import (
    Constant,
    CurveSpec,
    SampledCurve,
    Sinusoid,
    complete_frame,
    integrate_frenet_s3,
    random_seed,
)
from .frames import left_frame, right_frame, trace_geometry
from .oracle import fd_fundamental_forms
from .quaternion import E1
from .surface import (
    DEFAULT_DELTA,
    FundForms,
    analyze,
    build_surface,
    regular_mask,
    umbilicity_defect,
)

SUPPORTS = "supports"
VIOLATES = "violates"
INCONCLUSIVE = "inconclusive"

SCAN_STEP = 0.01
SCAN_LENGTH = 2.0
ORACLE_STEP = 1e-3
ORACLE_LENGTH = 0.1


@dataclass
class ProbeResult:
    theorem_id: str
    statement: str
    config: dict
    observed: dict
    verdict: str
    message: str
    cases: list = field(default_factory=list)
    controls: list = field(default_factory=list)
    offending: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "statement": self.statement,
            "config": self.config,
            "observed": self.observed,
            "verdict": self.verdict,
            "message": self.message,
            "offending": self.offending,
            "cases": self.cases,
            "controls": self.controls,
        }


def _verdict(theorem_id, statement, config, cases, controls, observed=None) -> ProbeResult:
    observed = dict(observed or {})
    observed.setdefault("cases", len(cases))
    observed.setdefault("controls", len(controls))
    failed = [c for c in cases if not c["pass"]]
    stray = [c for c in controls if not c["as_designed"]]
    offending = None
    if failed:
        verdict = VIOLATES
        offending = failed[0]
        message = f"{len(failed)} of {len(cases)} cases contradict: {statement}"
    elif not cases or stray:
        verdict = INCONCLUSIVE
        what = "no cases ran" if not cases else f"{len(stray)} negative control(s) did not fail"
        message = f"inconclusive ({what}): {statement}"
    else:
        verdict = SUPPORTS
        message = f"consistent with Theorem: {statement} ({len(cases)} cases, {len(controls)} controls)"
    return ProbeResult(theorem_id, statement, config, observed, verdict, message, cases, controls, offending)


# -- helpers --------------------------------------------------------------


def parse_profile(token) -> Callable:
    """``"1.5"`` -> constant, ``"sin:mean:amp:freq[:phase]"`` -> sinusoid."""
    if callable(token):
        return token
    if isinstance(token, (int, float)):
        return Constant(float(token))
    token = str(token).strip()
    if token.startswith("sin:"):
        parts = [float(v) for v in token.split(":")[1:]]
        if len(parts) not in (3, 4):
            raise ValueError(f"bad sinusoid profile {token!r}")
        return Sinusoid(*parts)
    return Constant(float(token))


def profile_label(p) -> str:
    if isinstance(p, Constant):
        return repr(p.value)
    if isinstance(p, Sinusoid):
        return f"sin:{p.mean!r}:{p.amplitude!r}:{p.frequency!r}:{p.phase!r}"
    return repr(p)


def largest_regular_square(mask: np.ndarray) -> tuple[int, int, int]:
    """Top-left corner and side of the largest all-True square block of ``mask``."""
    bad = np.zeros((mask.shape[0] + 1, mask.shape[1] + 1))
    bad[1:, 1:] = np.cumsum(np.cumsum(~mask, axis=0), axis=1)

    def find(k):
        blocks = bad[k:, k:] - bad[:-k, k:] - bad[k:, :-k] + bad[:-k, :-k]
        hits = np.argwhere(blocks == 0)
        return None if len(hits) == 0 else tuple(hits[0])

    lo, hi, best = 0, min(mask.shape), (0, 0)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        hit = find(mid)
        if hit is None:
            hi = mid - 1
        else:
            lo, best = mid, hit
    return int(best[0]), int(best[1]), int(lo)


def trimmed_surface(a: SampledCurve, b: SampledCurve, delta: float, min_side: int = 5):
    """Surface on the largest square sub-grid where ``|F| <= 1 - delta``.

    Returns ``(grid, window)`` with ``window = None`` when nothing was
    trimmed, or ``(None, window)`` when the regular block is too small.
    """
    g = build_surface(a, b, delta, strict=False)
    mask = regular_mask(g)
    if mask.all():
        return g, None
    i, j, k = largest_regular_square(mask)
    window = {"s_index": [i, i + k], "t_index": [j, j + k], "irregular_nodes": int((~mask).sum())}
    if k < min_side:
        return None, window
    return build_surface(a.window(i, i + k), b.window(j, j + k), delta), window


def oracle_gap(a: CurveSpec, b: CurveSpec, delta: float = DEFAULT_DELTA, length: float = ORACLE_LENGTH,
               h: float = ORACLE_STEP) -> dict:
    """Closed form against finite differences on a small patch at the start of both curves."""
    ca = integrate_frenet_s3(a.with_range(a.s_min, a.s_min + length, h))
    cb = integrate_frenet_s3(b.with_range(b.s_min, b.s_min + length, h))
    g = build_surface(ca, cb, delta)
    r = analyze(g)
    o = fd_fundamental_forms(g.X, h, h, reference_normal=r.N)
    inner = (slice(1, -1), slice(1, -1))
    return {
        "H": float(np.max(np.abs(o.H - r.H[inner]))),
        "K": float(np.max(np.abs(o.K_ext + 1.0 - r.K[inner]))),
        "K_ext_oracle_absmax_dev_from_minus_one": float(np.max(np.abs(o.K_ext + 1.0))),
        "e": float(np.max(np.abs(o.e - r.forms.e[inner]))),
        "g": float(np.max(np.abs(o.g - r.forms.g[inner]))),
    }


def _pure(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return np.concatenate([[0.0], v / np.linalg.norm(v)])


def great_circle_with_tangent(w, s_max=SCAN_LENGTH, h=SCAN_STEP) -> CurveSpec:
    """Great circle through 1 with initial tangent ``w`` (pure); its right frame is ``-w``."""
    return CurveSpec.great_circle(0.0, s_max, h, seed=complete_frame(E1, w))


def flat_seed(theta: float) -> np.ndarray:
    """Seed ``(1, t, n, k)`` with ``t`` at angle ``theta`` in the (i, j) plane."""
    c, s = math.cos(theta), math.sin(theta)
    return np.column_stack([E1, [0, c, s, 0], [0, -s, c, 0], [0, 0, 0, 1]])


def clifford_radii(C: float) -> tuple[float, float]:
    """Radii whose Clifford factor gives ``<T_a, That_b> = C`` against the standard circle."""
    return math.sqrt((1.0 - C) / 2.0), math.sqrt((1.0 + C) / 2.0)


def _inner(a):
    return a[1:-1, 1:-1]


# -- probe: constant F forces flatness ---------------------------------------


def probe_flat_constant_F(b_values=(0.5, 1.0, 2.0), kappa_profiles=("1", "sin:1:0.3:2"),
                          C_values=(0.0, -0.5, 0.3), s_max=SCAN_LENGTH, step=SCAN_STEP,
                          delta=DEFAULT_DELTA) -> ProbeResult:
    statement = "a translation surface with constant <T_alpha, That_beta> is flat"
    cases, controls = [], []

    def measure(a_spec, b_spec, expected_F=None):
        g = build_surface(integrate_frenet_s3(a_spec), integrate_frenet_s3(b_spec), delta)
        r = analyze(g)
        Fi, Ki = _inner(g.F), _inner(r.K)
        obs = {"F_mean": float(Fi.mean()), "F_std": float(Fi.std()), "K_absmax": float(np.abs(Ki).max())}
        if expected_F is not None:
            obs["F_expected"] = expected_F
        return obs

    for C in C_values:
        r1, r2 = clifford_radii(C)
        a = CurveSpec.great_circle(0.0, s_max, step)
        b = CurveSpec.clifford_factor(r1, r2, 0.0, s_max, step)
        obs = measure(a, b, C)
        obs["oracle"] = oracle_gap(a, b, delta)
        ok = obs["F_std"] <= 1e-6 and obs["K_absmax"] <= 1e-6 and obs["oracle"]["K"] <= 1e-5
        cases.append({"case": f"great circles, C={C!r}", "config": {"R1": r1, "R2": r2},
                      "observed": obs, "pass": ok})
    for bv in b_values:
        for token in kappa_profiles:
            prof = parse_profile(token)
            a = CurveSpec.general_helix(bv, 1, prof, 0.0, s_max, step)
            # the pole of the T-trace is (b T + B) / sqrt(1 + b^2) = (0, b, 0, 1) / sqrt(1 + b^2)
            u = _pure([bv, 0.0, 1.0])
            b = great_circle_with_tangent(-u, s_max, step)
            C = bv / math.sqrt(1.0 + bv * bv)
            obs = measure(a, b, C)
            obs["oracle"] = oracle_gap(a, b, delta)
            ok = (obs["F_std"] <= 1e-6 and obs["K_absmax"] <= 1e-6
                  and abs(obs["F_mean"] - C) <= 1e-6 and obs["oracle"]["K"] <= 1e-5)
            cases.append({"case": f"general helix b={bv!r}, kappa={token} vs great circle along the pole",
                          "config": {"b": bv, "kappa": token}, "observed": obs, "pass": ok})
    # negative controls: torsion off the helix law, and a fixed beta off the pole
    u = _pure([1.0, 0.0, 1.0])
    beta = great_circle_with_tangent(-u, s_max, step)
    for name, a in (
        ("tau = b kappa + 1.3 (not a general helix)", CurveSpec.proper_helix(1.0, 2.3, 0.0, s_max, step)),
        ("kappa sinusoidal, tau constant", CurveSpec.tabulated(
            *_tab(Sinusoid(1.0, 0.3, 2.0), Constant(2.0), s_max), h=step)),
    ):
        obs = measure(a, beta)
        controls.append({"control": name, "observed": obs, "as_designed": obs["F_std"] > 1e-3})
    config = {"b": list(b_values), "kappa_profiles": list(kappa_profiles), "C": list(C_values),
              "s_max": s_max, "step": step, "delta": delta}
    worst = max(c["observed"]["F_std"] for c in cases)
    return _verdict("flat_constant_F", statement, config, cases, controls, {"max_F_std": worst})


def _tab(kappa, tau, s_max, n=401):
    from .curves import Table

    s = np.linspace(0.0, s_max, n)
    return Table(tuple(map(float, s)), tuple(map(float, kappa(s)))), Table(
        tuple(map(float, s)), tuple(map(float, tau(s))))


# -- probe: great-circle pairs are CMC ----------------------------------------


def probe_cmc_great_circles(C_values=(0.0, 0.3, -0.3, 0.5, -0.5, 0.9, -0.9), seeds=(11, 12),
                            s_max=SCAN_LENGTH, step=SCAN_STEP, delta=DEFAULT_DELTA) -> ProbeResult:
    statement = "great-circle generators give a CMC Clifford torus with H = -C/sqrt(1 - C^2)"
    cases, controls = [], []

    def check(name, a, b, config, C_expected=None):
        g = build_surface(integrate_frenet_s3(a), integrate_frenet_s3(b), delta)
        r = analyze(g)
        C = float(_inner(g.F).mean())
        H = _inner(r.H)
        law = -C / math.sqrt(1.0 - C * C)
        obs = {"C": C, "H_mean": float(H.mean()), "H_std": float(H.std()),
               "H_law_dev": float(np.abs(H - law).max()), "oracle": oracle_gap(a, b, delta)}
        ok = obs["H_std"] <= 1e-8 and obs["H_law_dev"] <= 1e-8 and obs["oracle"]["H"] <= 1e-5
        if C_expected is not None:
            obs["C_dev"] = abs(C - C_expected)
            ok = ok and obs["C_dev"] <= 1e-10
        cases.append({"case": name, "config": config, "observed": obs, "pass": ok})

    for C in C_values:
        r1, r2 = clifford_radii(C)
        check(f"Clifford factor, C={C!r}", CurveSpec.great_circle(0.0, s_max, step),
              CurveSpec.clifford_factor(r1, r2, 0.0, s_max, step), {"R1": r1, "R2": r2}, C)
    if len(seeds) >= 2:
        check(f"random great circles, seeds {seeds[0]}/{seeds[1]}",
              CurveSpec.great_circle(0.0, s_max, step, seed=random_seed(seeds[0])),
              CurveSpec.great_circle(0.0, s_max, step, seed=random_seed(seeds[1])),
              {"seeds": list(seeds[:2])})
    # negative control: a curved generator is not CMC
    a = CurveSpec.proper_helix(1.0, 0.0, 0.0, s_max, step)
    b = CurveSpec.great_circle(0.0, s_max, step, seed=random_seed(3))
    g = build_surface(integrate_frenet_s3(a), integrate_frenet_s3(b), delta)
    H = _inner(analyze(g).H)
    controls.append({"control": "kappa_alpha = 1 against a great circle",
                     "observed": {"H_std": float(H.std())}, "as_designed": float(H.std()) > 1e-3})
    config = {"C": list(C_values), "seeds": list(seeds), "s_max": s_max, "step": step, "delta": delta}
    return _verdict("cmc_great_circles", statement, config, cases, controls)


# -- probe: helix frames trace circles --------------------------------------


def probe_helix_frame_circles(b_values=(0.0, 0.5, 1.0, 2.0), kappa_profiles=("1", "sin:1:0.3:2"),
                              s_max=SCAN_LENGTH, step=ORACLE_STEP) -> ProbeResult:
    statement = "the frame fields of a general helix trace circles with a common pole in the unit sphere"
    cases, controls = [], []
    for bv in b_values:
        for token in kappa_profiles:
            prof = parse_profile(token)
            for side, sign, frame in (("left", 1, left_frame), ("right", -1, right_frame)):
                c = integrate_frenet_s3(CurveSpec.general_helix(bv, sign, prof, 0.0, s_max, step))
                tg = trace_geometry(frame(c), c)
                obs = {
                    "kappa_hat_dev": float(np.abs(tg.kappa_hat - bv).max()),
                    "pole_gap": tg.pole_gap,
                    "cos_T_spread": float(np.ptp(tg.cos_T)),
                    "cos_B_spread": float(np.ptp(tg.cos_B)),
                    "pole": [float(v) for v in tg.pole],
                }
                ok = (obs["kappa_hat_dev"] <= 1e-5 and obs["pole_gap"] <= 1e-4
                      and obs["cos_T_spread"] <= 1e-6 and obs["cos_B_spread"] <= 1e-6)
                cases.append({"case": f"{side} frame, b={bv!r}, kappa={token}",
                              "config": {"b": bv, "sign": sign, "kappa": token, "side": side},
                              "observed": obs, "pass": ok})
    k, t = _tab(Sinusoid(1.0, 0.3, 2.0), Constant(2.0), s_max)
    c = integrate_frenet_s3(CurveSpec.tabulated(k, t, h=step))
    tg = trace_geometry(left_frame(c), c)
    spread = float(np.ptp(tg.kappa_hat))
    controls.append({"control": "kappa sinusoidal, tau constant (not a general helix)",
                     "observed": {"kappa_hat_spread": spread}, "as_designed": spread > 1e-3})
    config = {"b": list(b_values), "kappa_profiles": list(kappa_profiles), "s_max": s_max, "step": step}
    return _verdict("helix_frame_circles", statement, config, cases, controls)


# -- probe: unit torsion pairs give flat patches ---------------------------


def probe_flat_patch_unit_torsion(kappa_pairs=(("1", "1"), ("1", "sin:1:0.3:2"), ("0", "1")),
                                  thetas=(math.pi / 6, math.pi / 4, math.pi / 3), s_max=SCAN_LENGTH,
                                  step=SCAN_STEP, delta=DEFAULT_DELTA) -> ProbeResult:
    statement = ("tau_alpha = 1 and tau_beta = -1 with co-axial constant binormals give "
                 "asymptotic generators (e = g = 0) and a flat surface")
    cases, controls = [], []

    def specs(ka, kb, theta, tau_b=None):
        pa, pb = parse_profile(ka), parse_profile(kb)
        if isinstance(pa, Constant) and pa.value == 0.0:
            a = CurveSpec.great_circle(0.0, s_max, step)
        else:
            a = CurveSpec.general_helix(0.0, 1, pa, 0.0, s_max, step)
        if tau_b is None:
            b = CurveSpec.general_helix(0.0, -1, pb, 0.0, s_max, step, seed=flat_seed(theta))
        else:
            b = CurveSpec.proper_helix(pb.value, tau_b, 0.0, s_max, step, seed=flat_seed(theta))
        return a, b

    for ka, kb in kappa_pairs:
        for theta in thetas:
            a, b = specs(ka, kb, theta)
            g, window = trimmed_surface(integrate_frenet_s3(a), integrate_frenet_s3(b), delta)
            name = f"kappa=({ka}, {kb}), theta={theta!r}"
            if g is None:
                cases.append({"case": name, "config": {"theta": theta}, "pass": False,
                              "observed": {"window": window, "reason": "no regular block"}})
                continue
            r = analyze(g)
            obs = {
                "e_absmax": float(np.abs(r.forms.e).max()),
                "g_absmax": float(np.abs(r.forms.g).max()),
                "K_absmax": float(np.abs(r.K).max()),
                "K_ext_dev": float(np.abs(r.K_ext + 1.0).max()),
                "grid": list(g.shape),
                "window": window,
                "oracle": oracle_gap(a, b, delta),
            }
            ok = (obs["e_absmax"] <= 1e-6 and obs["g_absmax"] <= 1e-6 and obs["K_absmax"] <= 1e-6
                  and obs["K_ext_dev"] <= 1e-5
                  and obs["oracle"]["K_ext_oracle_absmax_dev_from_minus_one"] <= 1e-5)
            cases.append({"case": name, "config": {"kappa_alpha": ka, "kappa_beta": kb, "theta": theta},
                          "observed": obs, "pass": ok})
    a, b = specs("1", "1", math.pi / 4, tau_b=-0.9)
    g, window = trimmed_surface(integrate_frenet_s3(a), integrate_frenet_s3(b), delta)
    gmax = float(np.abs(analyze(g).forms.g).max())
    controls.append({"control": "tau_beta = -1 + 0.1", "observed": {"g_absmax": gmax, "window": window},
                     "as_designed": gmax > 1e-3})
    config = {"kappa_pairs": [list(p) for p in kappa_pairs], "thetas": list(thetas), "s_max": s_max,
              "step": step, "delta": delta}
    return _verdict("flat_patch_unit_torsion", statement, config, cases, controls,
                    {"note": "headline claim tau_alpha = 1, tau_beta = -1 checked; domains trimmed to "
                             "the largest regular square block"})


# -- scan: no minimal surfaces from constant-invariant helices ---------------


def scan_nonexistence_minimal(kappas=(0.5, 1.0, 2.0), taus=(-2.0, -1.0, 0.0, 1.0, 2.0), seeds=(1, 2),
                              s_max=SCAN_LENGTH, step=SCAN_STEP, delta=DEFAULT_DELTA,
                              threshold=1e-4) -> ProbeResult:
    statement = ("no minimal translation surface has generators with nonzero constant curvature "
                 "and constant torsion")
    cases, controls = [], []
    alphas = {(k, t): integrate_frenet_s3(CurveSpec.proper_helix(k, t, 0.0, s_max, step))
              for k in kappas for t in taus}
    best = None
    for seed in seeds:
        rot = random_seed(seed)
        betas = {(k, t): integrate_frenet_s3(CurveSpec.proper_helix(k, t, 0.0, s_max, step, seed=rot))
                 for k in kappas for t in taus}
        for (ka, ta), ca in alphas.items():
            for (kb, tb), cb in betas.items():
                config = {"alpha": [ka, ta], "beta": [kb, tb], "seed": seed}
                g, window = trimmed_surface(ca, cb, delta)
                if g is None:
                    cases.append({"case": "skipped", "config": config, "pass": True,
                                  "observed": {"window": window, "skipped": True}})
                    continue
                H = np.abs(analyze(g).H)
                sup = float(H.max())
                i, j = np.unravel_index(int(np.argmin(H)), H.shape)
                obs = {"sup_abs_H": sup, "min_abs_H": float(H[i, j]),
                       "min_node": [float(g.s[i]), float(g.t[j])], "window": window}
                case = {"case": f"({ka}, {ta}) x ({kb}, {tb}) seed {seed}", "config": config,
                        "observed": obs, "pass": sup > threshold}
                cases.append(case)
                if best is None or sup < best["observed"]["sup_abs_H"]:
                    best = case
    ran = [c for c in cases if not c["observed"].get("skipped")]
    # control: the minimal Clifford torus has kappa = 0 and must trip the detector
    r1 = r2 = math.sqrt(0.5)
    g = build_surface(integrate_frenet_s3(CurveSpec.great_circle(0.0, s_max, step)),
                      integrate_frenet_s3(CurveSpec.clifford_factor(r1, r2, 0.0, s_max, step)), delta)
    sup = float(np.abs(analyze(g).H).max())
    controls.append({"control": "minimal Clifford torus (kappa = 0, excluded by hypothesis)",
                     "observed": {"sup_abs_H": sup}, "as_designed": sup <= 1e-8})
    observed = {
        "configurations": len(cases),
        "evaluated": len(ran),
        "skipped": len(cases) - len(ran),
        "min_sup_abs_H": None if best is None else best["observed"]["sup_abs_H"],
        "minimizing_case": None if best is None else best["case"],
        "minimizing_node": None if best is None else best["observed"]["min_node"],
    }
    config = {"kappas": list(kappas), "taus": list(taus), "seeds": list(seeds), "s_max": s_max,
              "step": step, "delta": delta, "threshold": threshold}
    return _verdict("nonexistence_minimal", statement, config, ran, controls, observed)


# -- probe: no umbilic translation surfaces ----------------------------------


def default_corpus(length: float = 0.2, step: float = ORACLE_STEP) -> list[tuple[str, CurveSpec, CurveSpec]]:
    """Small patches covering circle x circle, helix x circle and helix x helix."""
    L, h = length, step
    r = math.sqrt(0.5)
    rows = ((0.0, 1.0, 0.5), (length, 1.0 + length, 0.5 - length))
    return [
        ("minimal Clifford", CurveSpec.great_circle(0, L, h), CurveSpec.clifford_factor(r, r, 0, L, h)),
        ("CMC Clifford", CurveSpec.great_circle(0, L, h),
         CurveSpec.clifford_factor(math.sqrt(0.75), 0.5, 0, L, h)),
        ("random great circles", CurveSpec.great_circle(0, L, h, seed=random_seed(11)),
         CurveSpec.great_circle(0, L, h, seed=random_seed(12))),
        ("helix x circle", CurveSpec.proper_helix(1.0, 0.4, 0, L, h),
         CurveSpec.great_circle(0, L, h, seed=random_seed(3))),
        ("general helix x Clifford factor", CurveSpec.general_helix(1.5, 1, Sinusoid(1.0, 0.3, 2.0), 0, L, h),
         CurveSpec.clifford_factor(math.sqrt(0.75), 0.5, 0, L, h)),
        ("circle x helix", CurveSpec.great_circle(0, L, h),
         CurveSpec.proper_helix(0.8, -0.5, 0, L, h, seed=random_seed(4))),
        ("helix x helix", CurveSpec.proper_helix(1.0, 0.4, 0, L, h),
         CurveSpec.proper_helix(0.7, -0.3, 0, L, h, seed=random_seed(5))),
        ("helix x helix, shifted torsion zero", CurveSpec.proper_helix(2.0, 1.0, 0, L, h),
         CurveSpec.proper_helix(1.0, -1.0, 0, L, h, seed=random_seed(6))),
        ("general helix x helix", CurveSpec.general_helix(0.5, -1, Sinusoid(1.2, 0.4, 3.0), 0, L, h),
         CurveSpec.proper_helix(1.5, 2.0, 0, L, h, seed=random_seed(7))),
        ("helix x general helix", CurveSpec.proper_helix(0.5, -2.0, 0, L, h),
         CurveSpec.general_helix(1.0, 1, Sinusoid(0.8, 0.2, 1.0), 0, L, h, seed=random_seed(8))),
        ("tabulated x helix", CurveSpec.from_rows(rows, h=h),
         CurveSpec.proper_helix(1.0, 0.0, 0, L, h, seed=random_seed(9))),
        ("unit torsion flat patch", CurveSpec.proper_helix(1.0, 1.0, 0, L, h),
         CurveSpec.proper_helix(1.0, -1.0, 0, L, h, seed=flat_seed(math.pi / 4))),
    ]


def probe_no_umbilic(corpus=None, delta=DEFAULT_DELTA, threshold=1e-3) -> ProbeResult:
    statement = "no translation surface in S^3 is totally umbilic or totally geodesic"
    corpus = default_corpus() if corpus is None else corpus
    cases, controls = [], []
    for name, a, b in corpus:
        g = build_surface(integrate_frenet_s3(a), integrate_frenet_s3(b), delta)
        d = _inner(analyze(g).umbilicity)
        obs = {"min_defect": float(d.min()), "max_defect": float(d.max())}
        cases.append({"case": name, "config": {"alpha": a.describe(), "beta": b.describe()},
                      "observed": obs, "pass": obs["min_defect"] > threshold})
    one = np.ones((3, 3))
    synthetic = FundForms(one, 0.2 * one, one, one, 0.2 * one, one)
    d = float(np.abs(umbilicity_defect(synthetic)).max())
    controls.append({"control": "synthetic umbilic forms e=E, f=F, g=G (not a translation surface)",
                     "observed": {"max_defect": d, "flag": "NotATranslationSurface"},
                     "as_designed": d <= 1e-12})
    config = {"surfaces": [c[0] for c in corpus], "delta": delta, "threshold": threshold}
    worst = min(c["observed"]["min_defect"] for c in cases) if cases else None
    return _verdict("no_umbilic", statement, config, cases, controls, {"min_defect": worst})


PROBES = {
    "flat_constant_F": probe_flat_constant_F,
    "cmc_great_circles": probe_cmc_great_circles,
    "helix_frame_circles": probe_helix_frame_circles,
    "flat_patch_unit_torsion": probe_flat_patch_unit_torsion,
    "nonexistence_minimal": scan_nonexistence_minimal,
    "no_umbilic": probe_no_umbilic,
}


def run_probes(manifest: dict, only: Optional[str] = None) -> list[ProbeResult]:
    """Run ``{probe_id: kwargs}`` in manifest order."""
    out = []
    for pid, kwargs in manifest.items():
        if only is not None and pid != only:
            continue
        out.append(PROBES[pid](**kwargs))
    return out


def summary_table(results: list[ProbeResult]) -> str:
    width = max([len(r.theorem_id) for r in results] + [8])
    lines = [f"{'probe':<{width}}  {'verdict':<12}  cases  controls", "-" * (width + 33)]
    for r in results:
        lines.append(f"{r.theorem_id:<{width}}  {r.verdict:<12}  {len(r.cases):>5}  {len(r.controls):>8}")
    for r in results:
        lines.append(f"{r.theorem_id}: {r.message}")
    return "\n".join(lines) + "\n"
