"""Command-line front end.

Exit codes: 0 success, 1 configuration error, 2 regularity violation,
3 a probe verdict of ``violates``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .config import Config, curve_spec, default_manifest, probe_manifest
from .correspondence import correspond
from .curves import fd_curve_invariants, integrate_frenet_s3, orthonormality_drift
from .errors import ConfigError, PoleCollision, QuatSurfError, RegularityViolation
from .mesh import angle_defect, grid_mesh, parse_pole, pole_label, stereographic_project
from .oracle import fd_fundamental_forms
from .probes import VIOLATES, run_probes, summary_table
from .surface import DEFAULT_DELTA, analyze, build_surface, report_csv, report_json, report_summary

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_REGULARITY = 2
EXIT_VIOLATES = 3

COMMANDS = ("curve", "surface", "analyze", "verify", "correspond", "export")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quatsurf",
        description="Translation surfaces in S^3: curves, surface geometry, oracle checks and probes.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="INI run configuration (optional for verify)")
    p.add_argument("--out", default="out", help="output directory (default: ./out)")
    p.add_argument("--step", type=float, help="arc-length step h, overrides the config")
    p.add_argument("--delta", type=float, help="regularity margin, overrides the config")
    p.add_argument("--pole", default=None, help="projection pole: auto or +-e1..+-e4")
    p.add_argument("--probe", help="run a single probe id (verify only)")
    return p


def _write(out: Path, name: str, text: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _delta(args, cfg: Config) -> float:
    if args.delta is not None:
        if not 0.0 < args.delta < 1.0:
            raise ConfigError(f"--delta {args.delta!r}: must lie in (0, 1)")
        return args.delta
    if cfg.has("surface"):
        return cfg.number("surface", "delta", DEFAULT_DELTA, lo=0.0, hi=1.0, open_lo=True)
    return DEFAULT_DELTA


def _need_config(args) -> Config:
    if not args.config:
        raise ConfigError(f"{args.command}: --config is required")
    if args.step is not None and not args.step > 0:
        raise ConfigError(f"--step {args.step!r}: must be positive")
    return Config.from_file(args.config)


def _surface(args, cfg):
    a = integrate_frenet_s3(curve_spec(cfg, "alpha", args.step))
    b = integrate_frenet_s3(curve_spec(cfg, "beta", args.step))
    grid = build_surface(a, b, _delta(args, cfg))
    return grid, analyze(grid)


def cmd_curve(args, out: Path) -> int:
    cfg = _need_config(args)
    section = "curve" if cfg.has("curve") else "alpha"
    spec = curve_spec(cfg, section, args.step)
    c = integrate_frenet_s3(spec)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = ["s", "alpha_w", "alpha_x", "alpha_y", "alpha_z", "t_w", "t_x", "t_y", "t_z", "kappa", "tau"]
    w.writerow(cols)
    for i in range(len(c)):
        w.writerow([repr(float(v)) for v in (c.s[i], *c.alpha[i], *c.t[i], c.kappa[i], c.tau[i])])
    _write(out, "curve.csv", buf.getvalue())
    summary = {"spec": spec.describe(), "samples": len(c),
               "max_frame_drift": float(orthonormality_drift(c).max()),
               "max_norm_dev": float(np.abs(np.linalg.norm(c.alpha, axis=1) - 1.0).max())}
    if len(c) >= 5:
        k, t = fd_curve_invariants(c)
        summary["kappa_fd_dev"] = float(np.abs(k - c.kappa[1:-1]).max())
        if c.framed:
            summary["tau_fd_dev"] = float(np.abs(t - c.tau[1:-1]).max())
    _write(out, "curve.json", _dumps(summary))
    print(f"curve: {len(c)} samples -> {out}")
    return EXIT_OK


def cmd_surface(args, out: Path) -> int:
    cfg = _need_config(args)
    grid, report = _surface(args, cfg)
    _write(out, "surface.csv", report_csv(grid, report))
    summary = report_summary(grid, report)
    _write(out, "surface.json", report_json(summary))
    print(f"surface: {summary['grid']['interior_nodes']} interior nodes, "
          f"H in [{summary['H']['min']:.6g}, {summary['H']['max']:.6g}] -> {out}")
    return EXIT_OK


def cmd_analyze(args, out: Path) -> int:
    cfg = _need_config(args)
    grid, report = _surface(args, cfg)
    h_s = float(grid.s[1] - grid.s[0])
    h_t = float(grid.t[1] - grid.t[0])
    o = fd_fundamental_forms(grid.X, h_s, h_t, reference_normal=report.N)
    inner = (slice(1, -1), slice(1, -1))
    fm = report.forms
    gaps = {k: float(np.abs(getattr(o, k) - getattr(fm, k)[inner]).max()) for k in "EFGefg"}
    gaps["H"] = float(np.abs(o.H - report.H[inner]).max())
    gaps["K"] = float(np.abs(o.K_ext + 1.0 - report.K[inner]).max())
    gaps["N"] = float(np.abs(o.N - report.N[inner]).max())
    result = {"surface": report_summary(grid, report), "oracle_gap": gaps,
              "oracle_pass": bool(gaps["H"] <= 1e-5 and gaps["K"] <= 1e-5)}
    _write(out, "analysis.json", _dumps(result))
    print(f"analyze: max |H - H_oracle| = {gaps['H']:.3e}, max |K - K_oracle| = {gaps['K']:.3e}")
    return EXIT_OK


def cmd_verify(args, out: Path) -> int:
    cfg = Config.from_file(args.config) if args.config else default_manifest()
    manifest = probe_manifest(cfg, args.delta)
    if args.probe and args.probe not in manifest:
        raise ConfigError(f"--probe {args.probe!r}: not in manifest ({', '.join(manifest)})")
    results = run_probes(manifest, args.probe)
    _write(out, "probes.json", _dumps([r.to_dict() for r in results]))
    table = summary_table(results)
    _write(out, "probes.txt", table)
    sys.stdout.write(table)
    return EXIT_VIOLATES if any(r.verdict == VIOLATES for r in results) else EXIT_OK


def cmd_correspond(args, out: Path) -> int:
    cfg = _need_config(args)
    a = integrate_frenet_s3(curve_spec(cfg, "alpha", args.step))
    b = integrate_frenet_s3(curve_spec(cfg, "beta", args.step))
    pair = correspond(a, b, _delta(args, cfg))
    _write(out, "correspondence.json", pair.to_json())
    print(f"correspond: {json.dumps(pair.passed(), sort_keys=True)}")
    return EXIT_OK


def cmd_export(args, out: Path) -> int:
    cfg = _need_config(args)
    grid, report = _surface(args, cfg)
    token = args.pole or (cfg.get("export", "pole") if cfg.has("export") else None) or "auto"
    try:
        pole = parse_pole(token)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    mesh = grid_mesh(grid.X, {"H": report.H, "K": report.K}, pole)
    _write(out, "mesh.obj", mesh.obj_text())
    _write(out, "mesh_scalars.csv", mesh.scalars_csv())
    Y, _ = stereographic_project(grid.X, mesh.pole)
    info = {"pole": pole_label(mesh.pole), "vertices": int(len(mesh.vertices)), "faces": int(len(mesh.faces)),
            "min_quad_area": mesh.min_quad_area(), "angle_defect": angle_defect(grid.X, Y)}
    _write(out, "mesh.json", _dumps(info))
    print(f"export: {info['vertices']} vertices, pole {info['pole']} -> {out}")
    return EXIT_OK


HANDLERS = {
    "curve": cmd_curve,
    "surface": cmd_surface,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "correspond": cmd_correspond,
    "export": cmd_export,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Path(args.out)
    try:
        return HANDLERS[args.command](args, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RegularityViolation as exc:
        print(f"regularity violation: {exc}", file=sys.stderr)
        for s, t in exc.nodes[:20]:
            print(f"  (s, t) = ({s!r}, {t!r})", file=sys.stderr)
        return EXIT_REGULARITY
    except PoleCollision as exc:
        print(f"pole collision: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuatSurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
