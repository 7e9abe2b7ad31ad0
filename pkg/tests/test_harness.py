import math

import numpy as np
import pytest

from lksub.harness import (
    ExperimentConfig,
    clenshaw_curtis_weights,
    convergence_rate,
    discrete_l2_norm,
    example1_problem,
    run_convergence_study,
)
from lksub.spatial import cgl_grid
from lksub.timestepper import ConfigurationError


def test_cc_weights_exactness():
    for P in (8, 16):
        w = clenshaw_curtis_weights(P)
        x = cgl_grid(P).nodes
        assert abs(np.sum(w) - 2.0) < 1e-14
        assert abs(np.dot(w, x**2) - 2.0 / 3.0) < 1e-13
        assert abs(np.dot(w, x**4) - 2.0 / 5.0) < 1e-13
        assert abs(np.dot(w, x**5)) < 1e-13
    with pytest.raises(ConfigurationError):
        clenshaw_curtis_weights(1)


def test_discrete_l2_norm():
    grid = cgl_grid(64)
    zero = np.zeros(63)
    assert discrete_l2_norm(zero, grid) == 0.0
    ones = np.ones(63)
    assert abs(discrete_l2_norm(ones, grid) - math.sqrt(2.0)) < 1e-3
    v = np.sin(grid.interior)
    assert abs(discrete_l2_norm(3.0 * v, grid) - 3.0 * discrete_l2_norm(v, grid)) < 1e-14
    got = discrete_l2_norm(ones, grid, mode="rms")
    assert abs(got - math.sqrt(2.0 / 64.0 * 63.0)) < 1e-14
    with pytest.raises(ConfigurationError):
        discrete_l2_norm(np.ones(10), grid)
    with pytest.raises(ConfigurationError):
        discrete_l2_norm(ones, grid, mode="sup")


def test_convergence_rate():
    assert abs(convergence_rate(4e-4, 1e-4) - 2.0) < 1e-14
    assert convergence_rate(1e-3, 1e-3) == 0.0
    assert math.isnan(convergence_rate(0.0, 1e-4))
    assert math.isnan(convergence_rate(1e-4, -1.0))


def test_example1_data():
    p = example1_problem(alpha=0.5, k=4, P=32, N=8)
    x = p.operator.grid.interior
    mid = int(np.argmin(np.abs(x)))
    assert x[mid] == 0.0
    assert p.v[mid] == 1.0
    # chi is 1 only on the open interval (0, 1)
    neg = x < 0.0
    inside = (x > 0.0) & (x < 1.0)
    assert np.all(p.f_time_derivs_at_zero[0][neg] == 1.0)
    assert np.all(p.f_time_derivs_at_zero[0][inside] == 2.0)
    assert p.f_time_derivs_at_zero[0][mid] == 1.0
    # third time derivative of (t+1)^8 at 0 is 8*7*6 = 336, times g
    assert np.all(p.f_time_derivs_at_zero[3][inside] == 672.0)
    assert np.all(p.f_time_derivs_at_zero[3][neg] == 336.0)
    assert np.max(np.abs(p.f(0.0) - p.f_time_derivs_at_zero[0])) == 0.0


def test_config_validation():
    with pytest.raises(ConfigurationError):
        ExperimentConfig(k=2, alpha=0.5, N_list=(10, 20))
    with pytest.raises(ConfigurationError):
        ExperimentConfig(k=2, alpha=0.5, N_list=(10, 20, 30))
    with pytest.raises(ConfigurationError):
        ExperimentConfig(k=2, alpha=0.5, N_list=(10, 20, 40), scheme="fancy")
    with pytest.raises(ConfigurationError):
        ExperimentConfig(k=2, alpha=0.5, N_list=(10, 20, 40), norm="sup")


def test_corrected_study_rates():
    cfg = ExperimentConfig(k=2, alpha=0.5, N_list=(20, 40, 80, 160), P=32,
                           scheme="corrected")
    report = run_convergence_study(cfg)
    assert report.theoretical_order == 2.5
    assert abs(report.final_rate - 2.5) < 0.4
    assert not any(report.floor_flags)


def test_corrected_beats_standard():
    # needs step counts deep enough that the standard scheme has dropped to
    # its first-order plateau while the corrected one is still high order
    for k, alpha in ((3, 0.5), (4, 0.2)):
        kwargs = dict(k=k, alpha=alpha, N_list=(80, 160, 320, 640), P=32)
        std = run_convergence_study(ExperimentConfig(scheme="standard", **kwargs))
        cor = run_convergence_study(ExperimentConfig(scheme="corrected", **kwargs))
        assert cor.diff_norms[-1] * 10.0 < std.diff_norms[-1], (k, alpha)


def test_spatial_error_cancellation():
    # differences of time refinements share the spatial error, so the rates
    # barely move when the grid is doubled
    rates = {}
    for P in (64, 128):
        cfg = ExperimentConfig(k=4, alpha=0.5, N_list=(20, 40, 80, 160), P=P,
                               scheme="corrected")
        rates[P] = run_convergence_study(cfg).rates
    for a, b in zip(rates[64], rates[128]):
        assert abs(a - b) < 0.05


def test_study_determinism():
    cfg = ExperimentConfig(k=2, alpha=0.3, N_list=(10, 20, 40), P=16)
    r1 = run_convergence_study(cfg)
    r2 = run_convergence_study(cfg)
    assert r1.diff_norms == r2.diff_norms
    assert r1.rates == r2.rates
