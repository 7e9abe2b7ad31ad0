"""Sampled verification that the discrete symbol z_tau^alpha stays inside a
sector of half-angle theta0 < pi, via two independent routes: the boundary
locus of the truncated weight series on the unit circle, and the order-8
rational polylogarithm route on a truncated integration contour.  Also the
empirical fit of the symbol's leading expansion order."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .special_functions import DomainError, polylog_series
from .weights import SchemeParams, _explicit_omegas, symbol_delta_alpha, weights_explicit


@dataclass(frozen=True)
class ContourSpec:
    """Truncated sector contour: an arc of radius kappa joining two rays at
    angles +-theta, cut at |Im z| <= pi/tau."""

    theta: float
    kappa: float
    tau: float
    n_ray: int = 64
    n_arc: int = 33

    def __post_init__(self):
        if not math.pi / 2 < self.theta < math.pi:
            raise DomainError(f"theta={self.theta} outside (pi/2, pi)")
        if self.kappa <= 0 or self.tau <= 0:
            raise DomainError("kappa and tau must be positive")
        if self.n_ray < 2 or self.n_arc < 3:
            raise DomainError("too few contour samples")

    def points(self) -> np.ndarray:
        psi = np.linspace(-self.theta, self.theta, self.n_arc)
        arc = self.kappa * np.exp(1j * psi)
        r_max = math.pi / (self.tau * math.sin(self.theta))
        if r_max <= self.kappa:
            return arc
        r = np.geomspace(self.kappa, r_max, self.n_ray + 1)[1:]
        rays = np.concatenate([r * np.exp(1j * self.theta),
                               r * np.exp(-1j * self.theta)])
        return np.concatenate([arc, rays])


@dataclass(frozen=True)
class LocusReport:
    samples: list  # (input point, symbol value, arg)
    theta0_estimate: float
    contained: bool
    method: str
    params: SchemeParams
    truncation: int | None = None
    tail_bound: float = 0.0
    metadata: dict = field(default_factory=dict)


def _assemble_report(points, values, method, params, truncation=None, tail_bound=0.0,
                     metadata=None) -> LocusReport:
    args = np.angle(values)
    # angular uncertainty induced by the truncation tail, per sample
    mags = np.abs(values)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.minimum(1.0, np.where(mags > 0, tail_bound / mags, 1.0))
    uncertainty = np.arcsin(ratio)
    theta0 = float(np.max(np.abs(args)))
    contained = bool(np.max(np.abs(args) + uncertainty) < math.pi)
    samples = list(zip(points.tolist(), values.tolist(), args.tolist()))
    return LocusReport(
        samples=samples,
        theta0_estimate=theta0,
        contained=contained,
        method=method,
        params=params,
        truncation=truncation,
        tail_bound=tail_bound,
        metadata=metadata or {},
    )


def boundary_locus(params: SchemeParams, n_phi: int = 64,
                   truncation_M: int = 200000) -> LocusReport:
    """Trace tau^alpha z_tau^alpha = sum_{j<=M} omega_j e^(-i j phi) for phi
    uniform in (0, 2pi), recording the argument of every sample."""
    if n_phi < 16:
        raise DomainError(f"n_phi={n_phi} must be >= 16")
    if truncation_M < 10**4:
        raise DomainError(f"truncation_M={truncation_M} must be >= 1e4")
    omega = weights_explicit(params, truncation_M + 1).omegas
    phi = np.linspace(0.0, 2.0 * math.pi, n_phi + 2)[1:-1]
    j = np.arange(truncation_M + 1)
    values = np.empty(phi.size, dtype=complex)
    chunk = max(1, int(4e6 // (truncation_M + 1)))
    for start in range(0, phi.size, chunk):
        block = phi[start:start + chunk]
        values[start:start + chunk] = np.exp(-1j * np.outer(block, j)) @ omega
    # tail of the unit-circle series: |omega_j| ~ C j^(-1-alpha)
    last_decade = omega[truncation_M // 10 * 9:]
    jd = np.arange(truncation_M // 10 * 9, truncation_M + 1)
    C = float(np.median(np.abs(last_decade) * jd ** (1.0 + params.alpha)))
    tail = C * truncation_M ** (-params.alpha) / params.alpha
    xi = np.exp(-1j * phi)
    return _assemble_report(xi, values, "locus", params, truncation=truncation_M,
                            tail_bound=tail)


def sector_check_tau8(params: SchemeParams, contour: ContourSpec,
                      cross_check_tol: float = 1e-4) -> LocusReport:
    """Evaluate z_tau^alpha = tau^(-alpha) delta_alpha(e^(-z tau)) through the
    order-8 polylogarithm route on the contour; samples with Re z > 0 are
    cross-validated against the direct series."""
    z = contour.points()
    tau = contour.tau
    values = np.empty(z.size, dtype=complex)
    checked = 0
    worst = 0.0
    for idx, zi in enumerate(z):
        ztau = zi * tau
        val = symbol_delta_alpha(params, ztau=ztau, backend="tau8") * tau ** (-params.alpha)
        values[idx] = val
        if ztau.real > 0.005 and abs(math.e ** (-ztau.real)) < 0.995:
            ref = symbol_delta_alpha(params, xi=np.exp(-ztau),
                                     backend="polylog_series") * tau ** (-params.alpha)
            rel = abs(val - ref) / max(abs(ref), 1e-300)
            worst = max(worst, rel)
            checked += 1
            if rel > cross_check_tol:
                raise DomainError(
                    f"tau8/series disagreement {rel:.3g} at z={zi} "
                    f"(k={params.k}, alpha={params.alpha})"
                )
    return _assemble_report(z, values, "tau8", params,
                            metadata={"cross_checked": checked,
                                      "cross_check_worst": worst,
                                      "contour": contour})


def expansion_order_fit(params: SchemeParams, h_values) -> float:
    """Least-squares slope of log|delta_alpha(e^-h) - h^alpha| against log h;
    the expected value is k + 1."""
    h_values = [float(h) for h in h_values]
    if len(h_values) < 4:
        raise DomainError("need at least 4 step sizes")
    if any(not 1e-3 <= h <= 0.5 for h in h_values):
        raise DomainError("h values must lie in [1e-3, 0.5]")
    if any(b >= a for a, b in zip(h_values, h_values[1:])):
        raise DomainError("h values must be strictly descending")
    logs_h, logs_r = [], []
    for h in h_values:
        M = max(20000, int(60.0 / h))
        # the subtraction below cancels h^alpha down to the residual C h^(k+1),
        # a ratio of up to ~1e13 at the small-h end, so the symbol is summed
        # in extended precision
        omega = _explicit_omegas(params.k, params.alpha, M + 1, np.longdouble)
        h_ld = np.longdouble(h)
        delta = np.polynomial.polynomial.polyval(np.exp(-h_ld), omega)
        r = float(abs(delta - h_ld**np.longdouble(params.alpha)))
        if r < 1e-15:  # below the attainable noise floor
            continue
        logs_h.append(math.log(h))
        logs_r.append(math.log(r))
    if len(logs_h) < 3:
        raise DomainError("fewer than 3 step sizes above the noise floor")
    slope = np.polyfit(logs_h, logs_r, 1)[0]
    return float(slope)
