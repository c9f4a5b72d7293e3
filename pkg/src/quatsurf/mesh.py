"""Stereographic projection of S^3 grids and OBJ export."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import PoleCollision

POLE_CLEARANCE = 1e-3


def parse_pole(token: str) -> np.ndarray | None:
    """``"auto"`` -> None, ``"+e2"``/``"-e4"``/``"e1"`` -> unit vector."""
    token = token.strip().lower()
    if token == "auto":
        return None
    sign = -1.0 if token.startswith("-") else 1.0
    body = token.lstrip("+-")
    if len(body) != 2 or body[0] != "e" or body[1] not in "1234":
        raise ValueError(f"pole must be auto or one of +-e1..+-e4, got {token!r}")
    p = np.zeros(4)
    p[int(body[1]) - 1] = sign
    return p


def candidate_poles() -> list[np.ndarray]:
    out = []
    for k in range(4):
        for sign in (1.0, -1.0):
            p = np.zeros(4)
            p[k] = sign
            out.append(p)
    return out


def pole_label(p: np.ndarray) -> str:
    k = int(np.argmax(np.abs(p)))
    return f"{'+' if p[k] > 0 else '-'}e{k + 1}"


def _complement_basis(p: np.ndarray) -> np.ndarray:
    """Orthonormal basis (rows) of the hyperplane orthogonal to ``p``.

    For a coordinate pole this keeps the remaining axes in order, so the
    projection simply drops the pole coordinate.
    """
    rows = []
    for e in np.eye(4):
        v = e - (e @ p) * p
        for r in rows:
            v = v - (v @ r) * r
        n = np.linalg.norm(v)
        if n > 1e-9:
            rows.append(v / n)
        if len(rows) == 3:
            break
    return np.array(rows)


def choose_pole(points: np.ndarray) -> np.ndarray:
    """Coordinate pole farthest from every point (first one wins ties)."""
    flat = points.reshape(-1, 4)
    best, best_d = None, -1.0
    for p in candidate_poles():
        d = float(np.min(np.linalg.norm(flat - p, axis=-1)))
        if d > best_d + 1e-15:
            best, best_d = p, d
    return best


def stereographic_project(points: np.ndarray, pole=None) -> tuple[np.ndarray, np.ndarray]:
    """Project unit 4-vectors from ``pole`` onto the hyperplane orthogonal to it.

    ``pole=None`` picks the best coordinate pole. Returns the R^3 points and
    the pole used. Raises :class:`PoleCollision` when a point lies within
    1e-3 of the pole.
    """
    points = np.asarray(points, dtype=float)
    p = choose_pole(points) if pole is None else np.asarray(pole, dtype=float)
    p = p / np.linalg.norm(p)
    dist = np.linalg.norm(points - p, axis=-1)
    close = dist < POLE_CLEARANCE
    if close.any():
        nodes = [tuple(int(v) for v in idx) for idx in np.argwhere(close)]
        raise PoleCollision(f"{len(nodes)} point(s) within {POLE_CLEARANCE} of pole {pole_label(p)}", nodes)
    basis = _complement_basis(p)
    denom = 1.0 - points @ p
    return (points @ basis.T) / denom[..., None], p


def angle_defect(X: np.ndarray, Y: np.ndarray, stride: int = 1) -> float:
    """Max change of the angle between grid tangents under a map ``X -> Y``."""
    def angles(P):
        Ps = P[2:, 1:-1] - P[:-2, 1:-1]
        Pt = P[1:-1, 2:] - P[1:-1, :-2]
        c = np.sum(Ps * Pt, axis=-1) / (np.linalg.norm(Ps, axis=-1) * np.linalg.norm(Pt, axis=-1))
        return np.arccos(np.clip(c, -1.0, 1.0))

    a, b = angles(X[::stride, ::stride]), angles(Y[::stride, ::stride])
    return float(np.max(np.abs(a - b)))


@dataclass(frozen=True, eq=False)
class MeshArtifact:
    vertices: np.ndarray
    faces: np.ndarray
    scalars: dict
    pole: np.ndarray

    def min_quad_area(self) -> float:
        v = self.vertices
        f = self.faces
        d1 = v[f[:, 2]] - v[f[:, 0]]
        d2 = v[f[:, 3]] - v[f[:, 1]]
        return float(np.min(0.5 * np.linalg.norm(np.cross(d1, d2), axis=-1)))

    def obj_text(self) -> str:
        buf = io.StringIO()
        buf.write(f"# stereographic projection from {pole_label(self.pole)}\n")
        for x, y, z in self.vertices:
            buf.write(f"v {x!r} {y!r} {z!r}\n")
        for a, b, c, d in self.faces + 1:
            buf.write(f"f {a} {b} {c} {d}\n")
        return buf.getvalue()

    def scalars_csv(self) -> str:
        buf = io.StringIO()
        names = sorted(self.scalars)
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["vertex"] + names)
        for i in range(len(self.vertices)):
            w.writerow([i + 1] + [repr(float(self.scalars[k][i])) for k in names])
        return buf.getvalue()


def grid_mesh(X: np.ndarray, scalars: dict, pole=None) -> MeshArtifact:
    """Quad mesh of a ``(ns, nt, 4)`` grid after stereographic projection."""
    ns, nt = X.shape[:2]
    Y, p = stereographic_project(X, pole)
    idx = np.arange(ns * nt).reshape(ns, nt)
    faces = np.stack([idx[:-1, :-1], idx[1:, :-1], idx[1:, 1:], idx[:-1, 1:]], axis=-1).reshape(-1, 4)
    flat = {k: np.asarray(v, dtype=float).reshape(-1) for k, v in scalars.items()}
    return MeshArtifact(Y.reshape(-1, 3), faces, flat, p)
