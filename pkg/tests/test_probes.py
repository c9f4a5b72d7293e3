import json

import numpy as np
import pytest

from quatsurf.curves import Constant, Sinusoid
from quatsurf.probes import (
    INCONCLUSIVE,
    PROBES,
    SUPPORTS,
    VIOLATES,
    clifford_radii,
    default_corpus,
    largest_regular_square,
    parse_profile,
    probe_cmc_great_circles,
    probe_flat_constant_F,
    probe_flat_patch_unit_torsion,
    probe_helix_frame_circles,
    probe_no_umbilic,
    run_probes,
    scan_nonexistence_minimal,
    summary_table,
)


def assert_supports(result):
    assert result.verdict == SUPPORTS, result.offending
    assert result.message.startswith("consistent with Theorem")
    assert result.cases and result.controls
    assert all(c["as_designed"] for c in result.controls)


def test_flat_constant_F():
    r = probe_flat_constant_F(b_values=(0.5, 2.0), C_values=(0.0, -0.5))
    assert_supports(r)
    assert r.observed["max_F_std"] <= 1e-6
    for c in r.cases:
        assert c["observed"]["K_absmax"] <= 1e-6


def test_cmc_great_circles():
    r = probe_cmc_great_circles(C_values=(0.0, 0.5, -0.9))
    assert_supports(r)
    for c in r.cases:
        assert c["observed"]["H_law_dev"] <= 1e-8


def test_helix_frame_circles():
    r = probe_helix_frame_circles(b_values=(0.5, 1.0, 2.0), kappa_profiles=("1",), s_max=1.0)
    assert_supports(r)
    assert len(r.cases) == 6


def test_flat_patch_unit_torsion():
    r = probe_flat_patch_unit_torsion(kappa_pairs=(("1", "1"), ("0", "1")), thetas=(0.7,))
    assert_supports(r)
    for c in r.cases:
        assert c["observed"]["e_absmax"] <= 1e-6 and c["observed"]["g_absmax"] <= 1e-6


def test_nonexistence_scan():
    r = scan_nonexistence_minimal(kappas=(1.0, 2.0), taus=(-1.0, 0.0, 1.0), seeds=(1,))
    assert_supports(r)
    assert r.observed["min_sup_abs_H"] > 1e-4
    assert r.observed["evaluated"] + r.observed["skipped"] == 36


def test_nonexistence_scan_reports_violation_when_threshold_is_absurd():
    r = scan_nonexistence_minimal(kappas=(1.0,), taus=(0.0,), seeds=(1,), threshold=1e6)
    assert r.verdict == VIOLATES
    assert r.offending is not None
    assert "contradict" in r.message


def test_no_umbilic():
    r = probe_no_umbilic()
    assert_supports(r)
    assert r.observed["min_defect"] > 1e-3
    assert len(r.cases) >= 10


def test_inconclusive_without_cases():
    r = probe_cmc_great_circles(C_values=(), seeds=())
    assert r.verdict == INCONCLUSIVE


def test_probe_results_are_deterministic():
    a = json.dumps(probe_cmc_great_circles(C_values=(0.3,)).to_dict(), sort_keys=True)
    b = json.dumps(probe_cmc_great_circles(C_values=(0.3,)).to_dict(), sort_keys=True)
    assert a == b


def test_run_probes_and_summary():
    results = run_probes({"no_umbilic": {}, "cmc_great_circles": {"C_values": (0.0,)}}, only="no_umbilic")
    assert [r.theorem_id for r in results] == ["no_umbilic"]
    table = summary_table(results)
    assert "no_umbilic" in table and SUPPORTS in table
    assert set(PROBES) == {"flat_constant_F", "cmc_great_circles", "helix_frame_circles",
                           "flat_patch_unit_torsion", "nonexistence_minimal", "no_umbilic"}


def test_largest_regular_square():
    mask = np.ones((6, 8), dtype=bool)
    assert largest_regular_square(mask) == (0, 0, 6)
    mask[2, :] = False
    assert largest_regular_square(mask) == (3, 0, 3)
    mask[:] = False
    assert largest_regular_square(mask)[2] == 0


def test_helpers():
    assert parse_profile("1.5") == Constant(1.5)
    assert parse_profile("sin:1:0.3:2") == Sinusoid(1.0, 0.3, 2.0)
    with pytest.raises(ValueError):
        parse_profile("sin:1")
    r1, r2 = clifford_radii(0.5)
    assert r1 * r1 + r2 * r2 == pytest.approx(1.0)
    assert -(r1 * r1 - r2 * r2) == pytest.approx(0.5)
    assert len(default_corpus()) >= 10
