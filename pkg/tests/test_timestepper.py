import numpy as np
import pytest

from lksub.special_functions import DomainError
from lksub.timestepper import (
    ConfigurationError,
    ProblemSpec,
    corrected_rhs_collapsed,
    corrected_rhs_expanded,
    history_convolution,
    solve_corrected,
    solve_standard,
)
from lksub.weights import SchemeParams, weights_explicit

# Mittag-Leffler value E_{1/2}(-1), frozen from a 300-term high-precision
# series oracle
E_HALF_AT_MINUS_ONE = 0.427583576155807


def _random_operator(rng, dim):
    # symmetric negative definite, safely away from singularity
    M = rng.uniform(-1.0, 1.0, (dim, dim))
    return -(M @ M.T) - 0.5 * np.eye(dim)


def test_zero_data_zero_solution():
    A = -np.eye(3)
    p = ProblemSpec(alpha=0.5, k=2, T=1.0, N=20, operator=A,
                    v=np.zeros(3), f=lambda t: np.zeros(3),
                    f_time_derivs_at_zero=[np.zeros(3), np.zeros(3)])
    for solve in (solve_standard, solve_corrected):
        hist = solve(p)
        assert np.all(hist.V == 0.0)
        assert np.all(hist.u_final == 0.0)


def test_history_convolution_small_n():
    w = weights_explicit(SchemeParams(k=2, alpha=0.5), 8)
    V = np.arange(16.0).reshape(8, 2)
    assert np.array_equal(history_convolution(w, V, 1), np.zeros(2))
    assert np.allclose(history_convolution(w, V, 2), w.omegas[1] * V[1])
    with pytest.raises(DomainError):
        history_convolution(w, V, 0)


def test_history_convolution_scalar_ones():
    w = weights_explicit(SchemeParams(k=2, alpha=0.3), 8)
    V = np.ones((6, 1))
    got = history_convolution(w, V, 5)[0]
    want = w.omegas[1] + w.omegas[2] + w.omegas[3] + w.omegas[4]
    assert abs(got - want) < 1e-15


def test_rhs_dual_computation_identity():
    # collapsed and literal right-hand sides agree for arbitrary data
    rng = np.random.default_rng(3)
    dim = 4
    A = _random_operator(rng, dim)
    derivs = [rng.uniform(-2.0, 2.0, dim) for _ in range(5)]
    coef = rng.uniform(-1.0, 1.0, dim)

    def f(t):
        return derivs[0] + t * derivs[1] + np.sin(3.0 * t) * coef

    p = ProblemSpec(alpha=0.7, k=5, T=1.0, N=40, operator=A,
                    v=rng.uniform(-1.0, 1.0, dim), f=f,
                    f_time_derivs_at_zero=derivs)
    for n in (1, 2, 3, 4, 5, 6, 17):
        a = corrected_rhs_collapsed(p, n)
        b = corrected_rhs_expanded(p, n)
        assert np.max(np.abs(a - b)) < 1e-13 * max(1.0, np.max(np.abs(a))), n


def test_corrected_equals_standard_when_corrections_vanish():
    # v = 0 and all source derivatives zero at t = 0: the corrections drop out
    rng = np.random.default_rng(5)
    dim = 3
    A = _random_operator(rng, dim)
    vec = rng.uniform(-1.0, 1.0, dim)

    def f(t):
        return t**5 * vec

    p = ProblemSpec(alpha=0.4, k=3, T=1.0, N=24, operator=A,
                    v=np.zeros(dim), f=f,
                    f_time_derivs_at_zero=[np.zeros(dim)] * 3)
    hs = solve_standard(p)
    hc = solve_corrected(p)
    scale = max(1.0, float(np.max(np.abs(hs.V))))
    assert np.max(np.abs(hs.V - hc.V)) < 1e-13 * scale


def test_linearity_superposition():
    rng = np.random.default_rng(9)
    dim = 3
    A = _random_operator(rng, dim)
    v1, v2 = rng.uniform(-1.0, 1.0, (2, dim))
    c1, c2 = rng.uniform(-1.0, 1.0, (2, dim))

    def make(v, c):
        derivs = [c] + [np.zeros(dim)] * 2
        return ProblemSpec(alpha=0.6, k=3, T=1.0, N=20, operator=A, v=v,
                           f=lambda t: (t + 1.0) * c,
                           f_time_derivs_at_zero=derivs)

    h1 = solve_corrected(make(v1, c1))
    h2 = solve_corrected(make(v2, c2))
    hsum = solve_corrected(make(v1 + v2, c1 + c2))
    lhs = h1.V[-1] + h2.V[-1]
    assert np.max(np.abs(lhs - hsum.V[-1])) < 1e-12 * max(1.0, np.max(np.abs(lhs)))


def test_scalar_mode_mittag_leffler():
    # lambda = -1, v = 1, f = 0: u(t) approximates E_alpha(-t^alpha)
    p = ProblemSpec(alpha=0.5, k=1, T=1.0, N=1024, operator=-1.0,
                    v=np.array([1.0]), f=lambda t: np.zeros(1),
                    f_time_derivs_at_zero=[np.zeros(1)])
    hist = solve_standard(p)
    assert abs(hist.u_final[0] - E_HALF_AT_MINUS_ONE) < 5e-2


def test_configuration_errors():
    A = -np.eye(2)
    with pytest.raises(ConfigurationError):
        ProblemSpec(alpha=0.5, k=4, T=1.0, N=3, operator=A,
                    v=np.zeros(2), f=lambda t: np.zeros(2))
    with pytest.raises(ConfigurationError):
        ProblemSpec(alpha=0.5, k=2, T=1.0, N=10, operator=A,
                    v=np.zeros(3), f=lambda t: np.zeros(3))
    with pytest.raises(ConfigurationError):
        ProblemSpec(alpha=0.5, k=2, T=-1.0, N=10, operator=A,
                    v=np.zeros(2), f=lambda t: np.zeros(2))
    p = ProblemSpec(alpha=0.5, k=2, T=1.0, N=10, operator=A,
                    v=np.zeros(2), f=lambda t: np.zeros(2),
                    f_time_derivs_at_zero=[np.zeros(2)])
    with pytest.raises(ConfigurationError):
        solve_corrected(p)


def test_determinism():
    rng = np.random.default_rng(13)
    dim = 3
    A = _random_operator(rng, dim)
    v = rng.uniform(-1.0, 1.0, dim)
    g = rng.uniform(-1.0, 1.0, dim)

    def build():
        return ProblemSpec(alpha=0.5, k=2, T=1.0, N=30, operator=A, v=v,
                           f=lambda t: (t + 1.0) ** 2 * g,
                           f_time_derivs_at_zero=[g, 2.0 * g])

    h1 = solve_corrected(build())
    h2 = solve_corrected(build())
    assert np.array_equal(h1.V, h2.V)
