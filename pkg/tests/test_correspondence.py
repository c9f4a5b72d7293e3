import dataclasses
import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from quatsurf.correspondence import correspond, lift_to_r3, reverse_lift, verify_correspondence
from quatsurf.curves import (
    CurveSpec,
    CurveSpecR3,
    Sinusoid,
    clifford_factor_curve,
    fd_curve_invariants,
    integrate_frenet_r3,
    integrate_frenet_s3,
    random_seed,
)
from quatsurf.errors import GaugeMismatch
from quatsurf.oracle import R3, fd_fundamental_forms
from quatsurf.probes import flat_seed
from quatsurf.surface import analyze, build_surface, r3_translation_surface

INNER = (slice(1, -1), slice(1, -1))
L = 0.2

PAIRS = [
    ("helix x helix", CurveSpec.proper_helix(1.0, 0.4, 0, L), CurveSpec.proper_helix(0.7, -0.3, 0, L, seed=random_seed(5))),
    ("unit torsion pair", CurveSpec.proper_helix(1.0, 1.0, 0, L),
     CurveSpec.proper_helix(1.0, -1.0, 0, L, seed=flat_seed(math.pi / 4))),
    ("helix x circle", CurveSpec.proper_helix(1.0, 0.4, 0, L), CurveSpec.great_circle(0, L, seed=random_seed(3))),
    ("circle x helix", CurveSpec.great_circle(0, L), CurveSpec.proper_helix(0.8, -0.5, 0, L, seed=random_seed(4))),
    ("general helix x helix", CurveSpec.general_helix(0.5, -1, Sinusoid(1.2, 0.4, 3.0), 0, L),
     CurveSpec.proper_helix(1.5, 2.0, 0, L, seed=random_seed(7))),
    ("helix x general helix", CurveSpec.proper_helix(0.5, -2.0, 0, L),
     CurveSpec.general_helix(1.0, 1, Sinusoid(0.8, 0.2, 1.0), 0, L, seed=random_seed(8))),
    ("great circles", CurveSpec.great_circle(0, L, seed=random_seed(11)),
     CurveSpec.great_circle(0, L, seed=random_seed(12))),
]


@pytest.mark.parametrize("name,a,b", PAIRS, ids=[p[0] for p in PAIRS])
def test_correspondence_residuals(name, a, b):
    pair = correspond(integrate_frenet_s3(a), integrate_frenet_s3(b))
    r = pair.residuals
    assert max(r["E"], r["F"], r["G"]) <= 1e-8
    assert r["K"] <= 1e-5
    assert r["shift_law"] <= 1e-5
    assert all(pair.passed().values())


@pytest.mark.parametrize("name,a,b", PAIRS[:3], ids=[p[0] for p in PAIRS[:3]])
def test_partner_surface_matches_r3_oracle(name, a, b):
    pair = correspond(integrate_frenet_s3(a), integrate_frenet_s3(b))
    h = pair.grid.alpha.h
    o = fd_fundamental_forms(pair.r3.X, h, h, R3, reference_normal=pair.r3.N)
    assert np.max(np.abs(o.H - pair.r3.H[INNER])) <= 1e-5
    assert np.max(np.abs(o.K_ext - pair.r3.K[INNER])) <= 1e-5
    assert np.max(np.abs(o.F - pair.r3.forms.F[INNER])) <= 1e-5


def test_unit_torsion_helix_lifts_to_circle():
    a = integrate_frenet_s3(CurveSpec.proper_helix(1.0, 1.0, 0, 2 * math.pi, 1e-3))
    b = integrate_frenet_s3(CurveSpec.proper_helix(1.0, -1.0, 0, 2 * math.pi, 1e-3))
    a3, b3 = lift_to_r3(a, b)
    for c in (a3, b3):
        assert_allclose(c.tau, 0.0)
        k, t = fd_curve_invariants(c)
        assert np.max(np.abs(k - 1.0)) <= 1e-5
        assert np.max(np.abs(t)) <= 1e-5
        # a full turn of a unit circle closes up
        assert np.linalg.norm(c.position[-1] - c.position[0]) <= 1e-2


def test_great_circle_lifts_to_line():
    a = integrate_frenet_s3(CurveSpec.great_circle(0, 1.0, 0.01))
    a3, _ = lift_to_r3(a, a)
    assert not a3.framed
    assert_allclose(a3.position, np.outer(a3.s, [1.0, 0.0, 0.0]), atol=1e-14)


def test_great_circle_pair_partner_is_a_plane():
    # for CMC great-circle tori the partner is a plane, so H = -shift
    C = 0.3
    r1, r2 = math.sqrt((1 - C) / 2), math.sqrt((1 + C) / 2)
    a = integrate_frenet_s3(CurveSpec.great_circle(0, 1.0, 0.01))
    pair = correspond(a, clifford_factor_curve(r1, r2, 0, 1.0, 0.01))
    assert np.max(np.abs(pair.r3.H)) == 0.0
    assert np.max(np.abs(pair.r3.K)) == 0.0
    assert_allclose(pair.report.H, -C / math.sqrt(1 - C * C), atol=1e-12)


def test_lifted_curves_have_shifted_torsion():
    a = integrate_frenet_s3(PAIRS[0][1])
    b = integrate_frenet_s3(PAIRS[0][2])
    a3, b3 = lift_to_r3(a, b)
    _, ta = fd_curve_invariants(a3)
    _, tb = fd_curve_invariants(b3)
    assert np.max(np.abs(ta - (0.4 - 1.0))) <= 1e-5
    assert np.max(np.abs(tb - (-0.3 + 1.0))) <= 1e-5
    for c in (a3, b3):
        f = np.stack([c.t, c.n, c.b], axis=-1)
        assert np.all(np.linalg.det(f) > 0)


def test_unaligned_lift_is_a_gauge_mismatch():
    a = integrate_frenet_s3(PAIRS[0][1])
    b = integrate_frenet_s3(PAIRS[0][2])
    g = build_surface(a, b)
    a3, b3 = lift_to_r3(a, b)
    flipped = dataclasses.replace(b3, t=-b3.t, n=-b3.n, b=-b3.b, position=-b3.position)
    r3 = r3_translation_surface(a3, flipped)
    with pytest.raises(GaugeMismatch):
        verify_correspondence(g, analyze(g), r3, a3, flipped)


def test_reverse_lift_examples():
    circle = integrate_frenet_r3(CurveSpecR3.constant(1.0, 0.0, s_max=1.0, h=0.01))
    line = integrate_frenet_r3(CurveSpecR3.constant(0.0, 0.0, s_max=1.0, h=0.01))
    sa, sb = reverse_lift(circle, circle)
    assert (sa.family, sa.kappa.value, sa.tau.value) == ("proper_helix", 1.0, 1.0)
    assert (sb.family, sb.kappa.value, sb.tau.value) == ("proper_helix", 1.0, -1.0)
    sa, _ = reverse_lift(line, circle)
    assert sa.family == "great_circle"


def test_round_trip_through_partner_curves():
    a = integrate_frenet_s3(CurveSpec.proper_helix(1.0, 0.4, 0, L))
    b = integrate_frenet_s3(CurveSpec.general_helix(1.0, 1, Sinusoid(0.8, 0.2, 1.0), 0, L))
    sa, sb = reverse_lift(*lift_to_r3(a, b))
    assert sa.family == "proper_helix"
    assert sa.kappa.value == pytest.approx(1.0) and sa.tau.value == pytest.approx(0.4)
    assert sb.family == "tabulated"
    s = b.s[::10]
    assert_allclose(sb.curvature(s), b.kappa[::10], atol=1e-12)
    assert_allclose(sb.torsion(s), b.tau[::10], atol=1e-12)


def test_report_json():
    pair = correspond(integrate_frenet_s3(PAIRS[0][1]), integrate_frenet_s3(PAIRS[0][2]))
    data = json.loads(pair.to_json())
    assert data["torsion_shift"] == {"alpha": -1, "beta": 1}
    assert all(data["pass"].values())
    assert len(data["notes"]) == 4
    assert pair.to_json() == correspond(pair.grid.alpha, pair.grid.beta).to_json()
