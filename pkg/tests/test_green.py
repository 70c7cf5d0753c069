import math

import numpy as np
import pytest

from planar_qed.errors import ConvergenceError, LosslessMediumError, ValidationError
from planar_qed.green import (QuadratureConfig, green_scattering_diag, green_solution,
                              oracle_green)
from planar_qed.ideal import ideal_green
from planar_qed.units import MediumResponse, lhm


def rel(a, b):
    return abs(a - b) / abs(b)


def test_mirror_collapse_matches_closed_form():
    g = green_scattering_diag(1.0, lhm(0.1), 0.0)
    ref = ideal_green(1.0, 0.0)
    assert rel(g.gxx, ref.gxx) < 1e-8
    assert rel(g.gzz, ref.gzz) < 1e-8


def test_matches_oracle_retarded():
    m = lhm(0.1)
    g = green_scattering_diag(6.0, m, 5.0)
    o = oracle_green(6.0, m, 5.0, n_nodes=1_000_000)
    assert rel(g.gxx, o.gxx) < 1e-6
    assert rel(g.gzz, o.gzz) < 1e-6


def test_far_field_decay():
    g = green_scattering_diag(100.0, lhm(1e-3), 5.0)
    assert abs(g.gxx) < 1e-2 and abs(g.gzz) < 1e-2


def test_oracle_self_convergence():
    m = lhm(1e-2)
    a = oracle_green(2.0, m, 5.0, n_nodes=1_000_000)
    b = oracle_green(2.0, m, 5.0, n_nodes=2_000_000)
    assert rel(a.gxx, b.gxx) < 1e-7
    assert rel(a.gzz, b.gzz) < 1e-7


def test_oracle_mirror_collapse():
    o = oracle_green(0.7, lhm(0.2), 0.0, n_nodes=200_000)
    ref = ideal_green(0.7, 0.0)
    assert rel(o.gxx, ref.gxx) < 1e-6
    assert rel(o.gzz, ref.gzz) < 1e-6


def test_oracle_needs_enough_nodes():
    with pytest.raises(ValidationError):
        oracle_green(1.0, lhm(0.1), 5.0, n_nodes=100)


def test_gyy_equals_gxx():
    g = green_scattering_diag(0.4, lhm(1e-2), 5.0)
    assert g.gyy == g.gxx


@pytest.mark.parametrize("z", [0.05, 1.0, 4.9, 5.0, 5.1])
def test_finite_inside_focal_region(z):
    g = green_scattering_diag(z, lhm(1e-4), 5.0)
    assert all(math.isfinite(v) for v in (g.gxx.real, g.gxx.imag, g.gzz.real, g.gzz.imag))


def test_evanescent_dominates_near_surface():
    sol = green_solution(0.05, lhm(1e-2), 5.0)
    ev = sol.sector("evanescent").gzz.real
    assert abs(ev) > 0.9 * abs(sol.gzz.real)


def test_propagating_dominates_far_away():
    # pointwise share at z_A = d + 5
    sol = green_solution(10.0, lhm(1e-2), 5.0)
    pr = sol.sector("propagating").gxx.imag
    assert abs(pr) > 0.9 * abs(sol.gxx.imag)


def test_lossless_rejected():
    with pytest.raises(LosslessMediumError):
        green_scattering_diag(1.0, MediumResponse(-1, -1), 5.0)


@pytest.mark.parametrize("z,d", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.5)])
def test_geometry_rejected(z, d):
    with pytest.raises(ValidationError):
        green_scattering_diag(z, lhm(0.1), d)


def test_non_convergence_reports_worst_interval():
    cfg = QuadratureConfig(rel_tol=1e-14, abs_tol=1e-300, max_subdivisions=2)
    with pytest.raises(ConvergenceError) as info:
        green_scattering_diag(0.05, lhm(1e-3), 5.0, cfg)
    lo, hi = info.value.worst_interval
    assert lo < hi


@pytest.mark.parametrize("kw", [dict(rel_tol=0), dict(abs_tol=-1), dict(max_subdivisions=0),
                                dict(evanescent_cutoff_factor=0)])
def test_config_validation(kw):
    with pytest.raises(ValidationError):
        QuadratureConfig(**kw)


def test_pole_guiding_default_threshold():
    cfg = QuadratureConfig()
    assert cfg.use_poles(lhm(1e-4))
    assert not cfg.use_poles(lhm(1e-2))
    assert QuadratureConfig(pole_guided=False).use_poles(lhm(1e-6)) is False


def test_pole_guided_and_plain_agree():
    m = lhm(1e-5)
    a = green_solution(0.1, m, 5.0, QuadratureConfig(pole_guided=True))
    b = green_solution(0.1, m, 5.0, QuadratureConfig(pole_guided=False))
    assert len(a.splits) > 0 and b.splits == ()
    assert rel(a.gxx, b.gxx) < 1e-7
    assert rel(a.gzz, b.gzz) < 1e-7


def test_short_cutoff_is_extended_by_tail_check():
    m = lhm(1e-2)
    a = green_solution(0.2, m, 5.0, QuadratureConfig(evanescent_cutoff_factor=2.0))
    b = green_solution(0.2, m, 5.0)
    assert a.b_max > 10.0
    assert rel(a.gzz, b.gzz) < 1e-8


def test_eta_convergence_towards_ideal():
    ref = ideal_green(7.5, 5.0)
    devs = []
    for eta in (1e-2, 1e-3, 1e-4):
        g = green_scattering_diag(7.5, lhm(eta), 5.0)
        devs.append(max(abs(g.gxx - ref.gxx), abs(g.gzz - ref.gzz)))
    assert devs[0] > devs[1] > devs[2]


def test_derivative_columns_match_finite_difference():
    m, d, z, h = lhm(1e-2), 5.0, 1.3, 1e-4
    cfg = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-15)
    sol = green_solution(z, m, d, cfg)
    up = green_solution(z + h, m, d, cfg)
    dn = green_solution(z - h, m, d, cfg)
    fd = (up.total[:3] - dn.total[:3]) / (2 * h)
    np.testing.assert_allclose(sol.total[3:], fd, rtol=1e-6)
