"""Time marching for the subdiffusion problem in the shifted unknown
V(t) = u(t) - v, using the degree-k convolution-quadrature discretization of
the Caputo derivative:

    tau^(-alpha) sum_{j=1..n} omega_{n-j} V^j - A V^n = rhs(n),  V^0 = 0.

`solve_standard` uses rhs(n) = A v + f(t_n).  `solve_corrected` additionally
perturbs the first k right-hand sides so that high-order accuracy survives
nonsmooth data.  Substituting the truncation remainder
R(t_n) = f(t_n) - f(0) - sum_l t_n^l/l! f_l(0) into the corrected scheme
collapses its right-hand side to

    (1 + a_n) A v + a_n f(0) + f(t_n) + sum_l d_{l,n} tau^l f_l(0),  n <= k,
    A v + f(t_n),                                                    n > k,

which is the form marched here; `corrected_rhs_expanded` retains the literal
pre-collapse form for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .spatial import LaplacianOperator
from .special_functions import DomainError
from .weights import SchemeParams, WeightSequence, correction_a, correction_d, weights_explicit


class ConfigurationError(ValueError):
    """Inconsistent problem setup."""


class SolverError(RuntimeError):
    """The march produced a singular system or a non-finite state."""


def _operator_matrix(operator) -> np.ndarray:
    mat = getattr(operator, "matrix", operator)
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.shape[0] != mat.shape[1]:
        raise ConfigurationError(f"operator matrix must be square, got {mat.shape}")
    return mat


@dataclass
class ProblemSpec:
    """Run configuration: orders, horizon, operator and data.

    `f` maps a time t to the source vector on the interior grid;
    `f_time_derivs_at_zero[l]` is the l-th time derivative of the source at
    t = 0 (l = 0..k-1, required by the corrected scheme).
    """

    alpha: float
    k: int
    T: float
    N: int
    operator: LaplacianOperator | np.ndarray | float
    v: np.ndarray
    f: Callable[[float], np.ndarray]
    f_time_derivs_at_zero: Sequence[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        self.v = np.atleast_1d(np.asarray(self.v, dtype=float))
        self.matrix = _operator_matrix(self.operator)
        dim = self.matrix.shape[0]
        if self.v.shape != (dim,):
            raise ConfigurationError(
                f"v has shape {self.v.shape}, operator dimension is {dim}"
            )
        if self.T <= 0:
            raise ConfigurationError("T must be positive")
        if self.N < self.k:
            raise ConfigurationError(
                f"N={self.N} < k={self.k}: the correction window exceeds the run"
            )
        self.params = SchemeParams(k=self.k, alpha=self.alpha)
        self.f_time_derivs_at_zero = [
            np.atleast_1d(np.asarray(d, dtype=float)) for d in self.f_time_derivs_at_zero
        ]
        for d in self.f_time_derivs_at_zero:
            if d.shape != (dim,):
                raise ConfigurationError("derivative vector dimension mismatch")

    @property
    def tau(self) -> float:
        return self.T / self.N


@dataclass(frozen=True)
class SolutionHistory:
    tau: float
    V: np.ndarray  # shape (N+1, dim), V[0] == 0
    u_final: np.ndarray


def history_convolution(weights: WeightSequence, V: np.ndarray, n: int) -> np.ndarray:
    """Known-history part sum_{j=1..n-1} omega_{n-j} V^j (omega_0 V^n is kept
    on the system-matrix side)."""
    if n < 1:
        raise DomainError(f"history_convolution: n={n} must be >= 1")
    if n == 1:
        return np.zeros_like(V[0])
    return np.dot(weights.omegas[1:n], V[n - 1:0:-1])


def corrected_rhs_collapsed(p: ProblemSpec, n: int) -> np.ndarray:
    """Right-hand side of the corrected scheme at step n, collapsed form."""
    t_n = n * p.tau
    Av = p.matrix @ p.v
    if n > p.k:
        return Av + p.f(t_n)
    a_n = float(correction_a(p.k, n))
    rhs = (1.0 + a_n) * Av + a_n * p.f_time_derivs_at_zero[0] + p.f(t_n)
    for l in range(1, p.k):
        d = float(correction_d(p.k, l, n)) if p.k >= 2 else 0.0
        if d != 0.0:
            rhs = rhs + d * p.tau**l * p.f_time_derivs_at_zero[l]
    return rhs


def corrected_rhs_expanded(p: ProblemSpec, n: int) -> np.ndarray:
    """Literal pre-collapse right-hand side: correction terms plus the Taylor
    polynomial of the source plus the truncation remainder R(t_n)."""
    t_n = n * p.tau
    Av = p.matrix @ p.v
    f0 = p.f_time_derivs_at_zero[0]
    taylor = np.zeros_like(f0)
    for l in range(1, p.k):
        taylor = taylor + t_n**l / math.factorial(l) * p.f_time_derivs_at_zero[l]
    remainder = p.f(t_n) - f0 - taylor
    if n > p.k:
        return Av + f0 + taylor + remainder
    a_n = float(correction_a(p.k, n))
    rhs = (1.0 + a_n) * (Av + f0) + remainder
    for l in range(1, p.k):
        d = float(correction_d(p.k, l, n))
        rhs = rhs + (t_n**l / math.factorial(l) + d * p.tau**l) * p.f_time_derivs_at_zero[l]
    return rhs


def _march(p: ProblemSpec, rhs_fn) -> SolutionHistory:
    tau = p.tau
    dim = p.matrix.shape[0]
    weights = weights_explicit(p.params, p.N + 1)
    omega = weights.omegas
    scale = tau ** (-p.alpha)
    system = scale * omega[0] * np.eye(dim) - p.matrix
    try:
        lu, piv = lu_factor(system)
    except Exception as exc:  # singular factorization
        raise SolverError(f"system matrix factorization failed: {exc}") from exc
    cond = np.linalg.cond(system)
    if not np.isfinite(cond) or cond > 1e15:
        raise SolverError(f"system matrix numerically singular (cond={cond:.3g})")

    # extended-precision copy for iterative refinement; the spectral operator
    # reaches ~P^4 in magnitude, and without refinement the per-step forward
    # error cond*eps accumulates to ~1e-9, masking the high-order rates
    system_ld = system.astype(np.longdouble)
    V = np.zeros((p.N + 1, dim))
    for n in range(1, p.N + 1):
        rhs = rhs_fn(p, n) - scale * history_convolution(weights, V, n)
        x = lu_solve((lu, piv), rhs)
        for _ in range(2):
            residual = rhs.astype(np.longdouble) - system_ld @ x.astype(np.longdouble)
            x = x + lu_solve((lu, piv), residual.astype(float))
        V[n] = x
        if not np.all(np.isfinite(V[n])):
            raise SolverError(
                f"non-finite state at step n={n} (k={p.k}, alpha={p.alpha}, N={p.N})"
            )
    return SolutionHistory(tau=tau, V=V, u_final=V[p.N] + p.v)


def standard_rhs(p: ProblemSpec, n: int) -> np.ndarray:
    return p.matrix @ p.v + p.f(n * p.tau)


def solve_standard(p: ProblemSpec) -> SolutionHistory:
    """March the uncorrected scheme; the system matrix is factorized once."""
    return _march(p, standard_rhs)


def solve_corrected(p: ProblemSpec) -> SolutionHistory:
    """March the scheme with corrected starting steps; requires all k source
    derivative vectors at t = 0."""
    if len(p.f_time_derivs_at_zero) != p.k:
        raise ConfigurationError(
            f"corrected scheme needs {p.k} derivative vectors (l=0..{p.k - 1}), "
            f"got {len(p.f_time_derivs_at_zero)}"
        )
    return _march(p, corrected_rhs_collapsed)
