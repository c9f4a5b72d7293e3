import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from quatsurf.curves import CurveSpec, Sinusoid, clifford_factor_curve, integrate_frenet_s3, random_seed
from quatsurf.errors import DegenerateTrace, MissingFrame
from quatsurf.frames import (
    frame_identity_residuals,
    frame_ode_residuals,
    left_frame,
    right_frame,
    trace_geometry,
)
from quatsurf.quaternion import qconj, qmul

E2, E3, E4 = np.eye(4)[1], np.eye(4)[2], np.eye(4)[3]


def test_great_circle_left_tangent_is_constant_i():
    c = integrate_frenet_s3(CurveSpec.great_circle(0.0, 2 * math.pi))
    T = left_frame(c).T
    assert_allclose(T, np.tile(E2, (len(c), 1)), atol=1e-12)
    with pytest.raises(MissingFrame):
        left_frame(c).N


def test_frames_at_gauge_node():
    c = integrate_frenet_s3(CurveSpec.proper_helix(1.0, 2.0, 0.0, 0.1))
    lf, rf = left_frame(c), right_frame(c)
    assert_allclose(np.stack([lf.T[0], lf.N[0], lf.B[0]]), np.stack([E2, E3, E4]), atol=1e-15)
    # right translation conjugates: alpha conj(t) = e1 conj(e2) = -e2
    assert_allclose(np.stack([rf.T[0], rf.N[0], rf.B[0]]), -np.stack([E2, E3, E4]), atol=1e-15)
    assert_allclose(qmul(qconj(c.b[0]), c.n[0]), E2, atol=1e-15)


def test_clifford_factor_right_tangent():
    for r1 in (0.3, math.sqrt(0.75), 0.9):
        r2 = math.sqrt(1 - r1 * r1)
        c = clifford_factor_curve(r1, r2, 0.0, 1.0)
        That = right_frame(c).T
        assert That[0, 1] == pytest.approx(-(r1 * r1 - r2 * r2), abs=1e-15)
        # a great circle: the right tangent never moves
        assert np.max(np.abs(That - That[0])) <= 1e-12


def test_geodesic_right_tangent_constant_and_pure():
    c = integrate_frenet_s3(CurveSpec.great_circle(0.0, 3.0, seed=random_seed(2)))
    That = right_frame(c).T
    assert np.max(np.abs(That - That[0])) <= 1e-8
    c = integrate_frenet_s3(CurveSpec.general_helix(1.0, 1, Sinusoid(1.0, 0.3, 2.0), 0.0, 2.0,
                                                    seed=random_seed(3)))
    for fr in (left_frame(c), right_frame(c)):
        for v in (fr.T, fr.N, fr.B):
            assert np.max(np.abs(v[:, 0])) <= 1e-10
            assert np.max(np.abs(np.linalg.norm(v, axis=1) - 1.0)) <= 1e-10
        gram = np.einsum("nk,nk->n", fr.T, fr.N), np.einsum("nk,nk->n", fr.N, fr.B)
        assert max(np.abs(g).max() for g in gram) <= 1e-9


def test_handedness():
    c = integrate_frenet_s3(CurveSpec.proper_helix(1.0, 0.0, 0.0, 0.1))
    assert left_frame(c).handedness() == 1.0
    assert right_frame(c).handedness() == -1.0


@pytest.mark.parametrize("spec", [
    CurveSpec.proper_helix(1.0, 2.0, 0.0, 2.0),
    CurveSpec.proper_helix(0.4, -1.5, 0.0, 2.0, seed=random_seed(5)),
    CurveSpec.general_helix(0.5, -1, Sinusoid(1.2, 0.4, 3.0), 0.0, 2.0, seed=random_seed(6)),
])
def test_product_identities(spec):
    res = frame_identity_residuals(integrate_frenet_s3(spec))
    assert set(res) == {"T", "N", "B", "That", "Nhat", "Bhat"}
    assert max(res.values()) <= 1e-10


def test_product_identities_need_a_frame():
    with pytest.raises(MissingFrame):
        frame_identity_residuals(integrate_frenet_s3(CurveSpec.great_circle(0.0, 1.0)))


def test_shifted_torsion_equations():
    c = integrate_frenet_s3(CurveSpec.proper_helix(1.0, 1.0, 0.0, 2.0))
    res = frame_ode_residuals(c, left_frame(c))
    assert res["B"] <= 1e-6
    assert np.max(np.abs(left_frame(c).B - left_frame(c).B[0])) <= 1e-9
    c = integrate_frenet_s3(CurveSpec.proper_helix(1.0, -1.0, 0.0, 2.0))
    rf = right_frame(c)
    assert frame_ode_residuals(c, rf)["B"] <= 1e-6
    assert np.max(np.abs(rf.B - rf.B[0])) <= 1e-9
    c = integrate_frenet_s3(CurveSpec.general_helix(1.0, 1, Sinusoid(1.0, 0.3, 2.0), 0.0, 2.0))
    for fr in (left_frame(c), right_frame(c)):
        assert max(frame_ode_residuals(c, fr).values()) <= 1e-5


def test_wrong_torsion_shift_is_detected():
    # the right frame does not satisfy the left-frame equations
    c = integrate_frenet_s3(CurveSpec.proper_helix(1.0, 0.5, 0.0, 1.0))
    rf = right_frame(c)
    fake = type(rf)("left", rf.T, rf.N, rf.B)
    assert frame_ode_residuals(c, fake)["B"] > 0.1


def test_trace_of_general_helix():
    c = integrate_frenet_s3(CurveSpec.general_helix(2.0, 1, 1.0, 0.0, 3.0))
    tg = trace_geometry(left_frame(c), c)
    assert np.max(np.abs(tg.kappa_hat - 2.0)) <= 1e-5
    ratio = tg.cos_B.mean() / tg.cos_T.mean()
    assert ratio == pytest.approx(0.5, abs=1e-4)
    assert np.ptp(tg.cos_T) <= 1e-6 and np.ptp(tg.cos_B) <= 1e-6
    # the pole is (b T + B) / sqrt(1 + b^2) at the seed
    assert_allclose(tg.pole, np.array([0.0, 2.0, 0.0, 1.0]) / math.sqrt(5.0), atol=1e-8)
    assert tg.pole_gap <= 1e-4


def test_trace_of_unit_torsion_helix_is_great_circle():
    c = integrate_frenet_s3(CurveSpec.proper_helix(1.0, 1.0, 0.0, 3.0))
    tg = trace_geometry(left_frame(c), c)
    assert np.max(np.abs(tg.kappa_hat)) <= 1e-8
    assert_allclose(np.abs(tg.pole), E4, atol=1e-8)


def test_right_trace_uses_plus_one_shift():
    c = integrate_frenet_s3(CurveSpec.general_helix(0.5, -1, Sinusoid(1.0, 0.3, 2.0), 0.0, 2.0))
    tg = trace_geometry(right_frame(c), c)
    assert np.max(np.abs(tg.kappa_hat - 0.5)) <= 1e-5


def test_trace_needs_curvature():
    c = integrate_frenet_s3(CurveSpec.great_circle(0.0, 1.0))
    with pytest.raises(DegenerateTrace):
        trace_geometry(left_frame(c), c)
