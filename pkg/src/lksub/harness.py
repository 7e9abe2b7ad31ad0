"""Refinement-study driver for the nonsmooth-data test problem
v(x) = sqrt(1 - x^2), f(x, t) = (t+1)^8 (1 + chi_(0,1)(x)) on (-1, 1) with
homogeneous Dirichlet conditions.  No closed-form solution exists, so errors
are successive-refinement differences ||u^{N} - u^{2N}|| at the final time,
all levels sharing one spatial grid, and rates come from halving the step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spatial import SpectralGrid, cgl_grid, laplacian_dirichlet
from .timestepper import (
    ConfigurationError,
    ProblemSpec,
    SolverError,
    solve_corrected,
    solve_standard,
)

ERROR_FLOOR = 1e-11

_SCHEMES = ("standard", "corrected")
_NORMS = ("clenshaw_curtis", "rms")


@dataclass(frozen=True)
class ExperimentConfig:
    k: int
    alpha: float
    N_list: tuple
    P: int = 64
    T: float = 1.0
    scheme: str = "standard"
    norm: str = "clenshaw_curtis"

    def __post_init__(self):
        object.__setattr__(self, "N_list", tuple(int(n) for n in self.N_list))
        if len(self.N_list) < 3:
            raise ConfigurationError("N_list needs at least 3 levels for rates")
        for a, b in zip(self.N_list, self.N_list[1:]):
            if b != 2 * a:
                raise ConfigurationError(f"N_list must double at each level, got {a} -> {b}")
        if self.scheme not in _SCHEMES:
            raise ConfigurationError(f"scheme must be one of {_SCHEMES}")
        if self.norm not in _NORMS:
            raise ConfigurationError(f"norm must be one of {_NORMS}")


@dataclass(frozen=True)
class ConvergenceReport:
    config: ExperimentConfig
    diff_norms: tuple  # e_i = ||u^{N_i} - u^{N_{i+1}}||, len(N_list) - 1 entries
    rates: tuple       # r_i = log2(e_{i-1}/e_i); nan where either side floors
    floor_flags: tuple
    theoretical_order: float = field(default=float("nan"))

    @property
    def final_rate(self) -> float:
        for r in reversed(self.rates):
            if math.isfinite(r):
                return r
        return float("nan")

    @property
    def mean_rate(self) -> float:
        finite = [r for r in self.rates if math.isfinite(r)]
        return sum(finite) / len(finite) if finite else float("nan")


def example1_problem(alpha: float, k: int, P: int, N: int, T: float = 1.0) -> ProblemSpec:
    """Problem setup on the degree-P collocation grid; the source indicator
    is 1 on the open interval (0, 1) and 0 at its endpoints."""
    grid = cgl_grid(P)
    op = laplacian_dirichlet(grid)
    x = grid.interior
    v = np.sqrt(1.0 - x**2)
    g = 1.0 + ((x > 0) & (x < 1)).astype(float)

    def f(t: float) -> np.ndarray:
        return (t + 1.0) ** 8 * g

    derivs = []
    for l in range(k):
        factor = math.factorial(8) / math.factorial(8 - l) if l <= 8 else 0.0
        derivs.append(factor * g)
    return ProblemSpec(alpha=alpha, k=k, T=T, N=N, operator=op, v=v, f=f,
                       f_time_derivs_at_zero=derivs)


def clenshaw_curtis_weights(P: int) -> np.ndarray:
    """Quadrature weights on the full P+1 point CGL grid, exact for
    polynomials of degree P; cosine-sum form."""
    if P < 2:
        raise ConfigurationError(f"clenshaw_curtis_weights: P={P} must be >= 2")
    w = np.zeros(P + 1)
    jmax = P // 2
    for idx in range(P + 1):
        acc = 0.0
        for j in range(1, jmax + 1):
            bj = 1.0 if 2 * j < P else 0.5
            acc += bj * math.cos(2.0 * j * idx * math.pi / P) / (4.0 * j * j - 1.0)
        w[idx] = 2.0 / P * (1.0 - 2.0 * acc)
    w[0] *= 0.5
    w[P] *= 0.5
    return w


def discrete_l2_norm(vec: np.ndarray, grid: SpectralGrid, mode: str = "clenshaw_curtis") -> float:
    """Discrete L2 norm of an interior-node vector: quadrature-weighted
    (integral-consistent) or plain RMS scaled by the interval length."""
    vec = np.asarray(vec, dtype=float)
    if vec.shape != (grid.P - 1,):
        raise ConfigurationError(
            f"vector shape {vec.shape} does not match interior size {grid.P - 1}"
        )
    if mode == "clenshaw_curtis":
        w = clenshaw_curtis_weights(grid.P)[1:-1]
        return float(np.sqrt(np.dot(w, vec**2)))
    if mode == "rms":
        return float(np.sqrt(2.0 / grid.P * np.dot(vec, vec)))
    raise ConfigurationError(f"unknown norm mode {mode!r}")


def convergence_rate(e_coarse: float, e_fine: float) -> float:
    """log2 of the error reduction between consecutive refinement levels;
    nan if either error is nonpositive (undefined-rate marker)."""
    if e_coarse <= 0 or e_fine <= 0:
        return float("nan")
    return math.log(e_coarse / e_fine) / math.log(2.0)


def run_convergence_study(cfg: ExperimentConfig) -> ConvergenceReport:
    solve = solve_corrected if cfg.scheme == "corrected" else solve_standard
    grid = cgl_grid(cfg.P)
    finals = []
    for N in cfg.N_list:
        problem = example1_problem(cfg.alpha, cfg.k, cfg.P, N, cfg.T)
        try:
            finals.append(solve(problem).u_final)
        except SolverError as exc:
            raise SolverError(
                f"study aborted at k={cfg.k}, alpha={cfg.alpha}, N={N}: {exc}"
            ) from exc
    diffs = [discrete_l2_norm(a - b, grid, cfg.norm) for a, b in zip(finals, finals[1:])]
    flags = [e < ERROR_FLOOR for e in diffs]
    rates = []
    for i in range(1, len(diffs)):
        if flags[i - 1] or flags[i]:
            rates.append(float("nan"))
        else:
            rates.append(convergence_rate(diffs[i - 1], diffs[i]))
    theory = cfg.k + 1 - cfg.alpha if cfg.scheme == "corrected" else 1.0
    return ConvergenceReport(
        config=cfg,
        diff_norms=tuple(diffs),
        rates=tuple(rates),
        floor_flags=tuple(flags),
        theoretical_order=theory,
    )
