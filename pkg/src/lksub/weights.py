"""Convolution-quadrature weights of the degree-k Lagrange time stepper for
the Caputo derivative of order alpha, the starting-step correction
coefficient tables, and the generating symbol

    delta_alpha(xi) = sum_{j>=0} omega_j xi^j.

Three independent weight constructions are provided: the closed forms with
hardcoded per-k coefficient rows (`weights_explicit`), the generic
binomial-sum form (`weights_generic`), and a Gauss-Legendre quadrature of
the defining kernel integrals (`weights_quadrature_oracle`).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .special_functions import (
    DomainError,
    polylog_series,
    polylog_tau8,
)

MAX_ORDER = 6


@dataclass(frozen=True)
class SchemeParams:
    """Interpolation degree k (1..6) and fractional order alpha in (0, 1];
    alpha = 1 is admitted only for the multistep-reduction checks."""

    k: int
    alpha: float

    def __post_init__(self):
        if not 1 <= self.k <= MAX_ORDER:
            raise DomainError(f"k={self.k} outside 1..{MAX_ORDER}")
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha={self.alpha} outside (0, 1]")


@dataclass(frozen=True)
class WeightSequence:
    params: SchemeParams
    omegas: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "omegas", np.asarray(self.omegas, dtype=float))
        self.omegas.setflags(write=False)


# Multipliers of rho_k(j, l, m)/Gamma(m+1-alpha), m = k..1; equivalently the
# generating-polynomial coefficients b_1..b_k (b_1 = 1 always).
GENERATING_B = {
    1: [Fraction(1)],
    2: [Fraction(1), Fraction(1, 2)],
    3: [Fraction(1), Fraction(1), Fraction(1, 3)],
    4: [Fraction(1), Fraction(3, 2), Fraction(11, 12), Fraction(1, 4)],
    5: [Fraction(1), Fraction(2), Fraction(7, 4), Fraction(5, 6), Fraction(1, 5)],
    6: [Fraction(1), Fraction(5, 2), Fraction(17, 6), Fraction(15, 8),
        Fraction(137, 180), Fraction(1, 6)],
}

# Classical backward-differentiation rows: the alpha = 1 limit of the weights.
BDF_ROWS = {
    1: [Fraction(1), Fraction(-1)],
    2: [Fraction(3, 2), Fraction(-2), Fraction(1, 2)],
    3: [Fraction(11, 6), Fraction(-3), Fraction(3, 2), Fraction(-1, 3)],
    4: [Fraction(25, 12), Fraction(-4), Fraction(3), Fraction(-4, 3), Fraction(1, 4)],
    5: [Fraction(137, 60), Fraction(-5), Fraction(5), Fraction(-10, 3),
        Fraction(5, 4), Fraction(-1, 5)],
    6: [Fraction(49, 20), Fraction(-6), Fraction(15, 2), Fraction(-20, 3),
        Fraction(15, 4), Fraction(-6, 5), Fraction(1, 6)],
}

# Starting-step correction coefficients a_n, n = 1..k.
CORRECTION_A = {
    1: [Fraction(1, 2)],
    2: [Fraction(11, 12), Fraction(-5, 12)],
    3: [Fraction(31, 24), Fraction(-7, 6), Fraction(3, 8)],
    4: [Fraction(1181, 720), Fraction(-177, 80), Fraction(341, 240),
        Fraction(-251, 720)],
    5: [Fraction(2837, 1440), Fraction(-2543, 720), Fraction(17, 5),
        Fraction(-1201, 720), Fraction(95, 288)],
    6: [Fraction(138241, 60480), Fraction(-309047, 60480), Fraction(198251, 30240),
        Fraction(-145877, 30240), Fraction(23077, 12096), Fraction(-19087, 60480)],
}

# Source-derivative correction coefficients d_{l,n}, l = 1..k-1, n = 1..k.
CORRECTION_D = {
    2: {1: [Fraction(1, 12), Fraction(0)]},
    3: {1: [Fraction(1, 6), Fraction(-1, 12), Fraction(0)],
        2: [Fraction(0), Fraction(0), Fraction(0)]},
    4: {1: [Fraction(59, 240), Fraction(-29, 120), Fraction(19, 240), Fraction(0)],
        2: [Fraction(1, 240), Fraction(-1, 240), Fraction(0), Fraction(0)],
        3: [Fraction(-1, 720), Fraction(0), Fraction(0), Fraction(0)]},
    5: {1: [Fraction(77, 240), Fraction(-7, 15), Fraction(73, 240),
            Fraction(-3, 40), Fraction(0)],
        2: [Fraction(1, 96), Fraction(-1, 60), Fraction(1, 160),
            Fraction(0), Fraction(0)],
        3: [Fraction(-1, 360), Fraction(1, 720), Fraction(0),
            Fraction(0), Fraction(0)],
        4: [Fraction(0)] * 5},
    6: {1: [Fraction(23719, 60480), Fraction(-11371, 15120), Fraction(7381, 10080),
            Fraction(-5449, 15120), Fraction(863, 12096), Fraction(0)],
        2: [Fraction(1, 60), Fraction(-17, 480), Fraction(1, 40),
            Fraction(-1, 160), Fraction(0), Fraction(0)],
        3: [Fraction(-58, 15120), Fraction(53, 15120), Fraction(-1, 945),
            Fraction(0), Fraction(0), Fraction(0)],
        4: [Fraction(-1, 6048), Fraction(1, 6048), Fraction(0),
            Fraction(0), Fraction(0), Fraction(0)],
        5: [Fraction(1, 30240), Fraction(0), Fraction(0),
            Fraction(0), Fraction(0), Fraction(0)]},
}


def correction_a(k: int, n: int) -> Fraction:
    """Correction coefficient a_n for the first k right-hand sides."""
    if k not in CORRECTION_A:
        raise DomainError(f"correction_a: k={k} outside 1..{MAX_ORDER}")
    if not 1 <= n <= k:
        raise DomainError(f"correction_a: n={n} outside 1..{k}")
    return CORRECTION_A[k][n - 1]


def correction_d(k: int, l: int, n: int) -> Fraction:
    """Correction coefficient d_{l,n} multiplying tau^l times the l-th time
    derivative of the source at t = 0."""
    if k not in CORRECTION_D:
        raise DomainError(f"correction_d: k={k} outside 2..{MAX_ORDER}")
    if not 1 <= l <= k - 1:
        raise DomainError(f"correction_d: l={l} outside 1..{k - 1}")
    if not 1 <= n <= k:
        raise DomainError(f"correction_d: n={n} outside 1..{k}")
    return CORRECTION_D[k][l][n - 1]


@dataclass(frozen=True)
class GeneratingCoeffs:
    """b_j: multipliers in the weight formula; bbar_j: expansion coefficients
    of (1 - exp(-h))^(k+1) * exp(h) = sum_j bbar_j h^(k+j) + O(h^(2k+2))."""

    b: tuple
    bbar: tuple


def derive_bbar(k: int) -> tuple:
    # Exact Taylor coefficients via Fraction polynomial arithmetic.
    order = 2 * k + 3
    expm = [Fraction((-1) ** i, math.factorial(i)) for i in range(order)]  # e^{-h}
    one_minus = [-c for c in expm]
    one_minus[0] += 1
    poly = [Fraction(1)] + [Fraction(0)] * (order - 1)

    def mul(a, b):
        out = [Fraction(0)] * order
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if i + j < order and bj != 0:
                    out[i + j] += ai * bj
        return out

    for _ in range(k + 1):
        poly = mul(poly, one_minus)
    exph = [Fraction(1, math.factorial(i)) for i in range(order)]
    poly = mul(poly, exph)
    return tuple(poly[k + j] for j in range(1, k + 2))


def generating_coeffs(k: int) -> GeneratingCoeffs:
    if k not in GENERATING_B:
        raise DomainError(f"generating_coeffs: k={k} outside 1..{MAX_ORDER}")
    return GeneratingCoeffs(b=tuple(GENERATING_B[k]), bbar=derive_bbar(k))


def _signed_power(base: np.ndarray, expo: float) -> np.ndarray:
    # (j+1-i)^(m-alpha) with the convention that a nonpositive base
    # contributes 0 (the alpha -> 1 limit; also enforces the truncation of
    # the alternating sum at l = min(j+1, k+1)).
    out = np.zeros_like(base)
    mask = base > 0
    out[mask] = base[mask] ** expo
    return out


_SERIES_TERMS = 160


@lru_cache(maxsize=128)
def _pattern_power_sums(pattern: tuple, dtype=np.float64) -> tuple:
    # S_r = sum_i p_i i^r in exact integer arithmetic (p_i carries the sign);
    # string round-trip so extended-precision floats keep all their digits.
    sums = []
    for r in range(_SERIES_TERMS + 1):
        s = sum(p * i**r for i, p in enumerate(pattern) if i > 0 or r == 0)
        sums.append(dtype(str(s)))
    return tuple(sums)


def _pattern_block(pattern, beta: float, n_terms: int, dtype=np.float64) -> np.ndarray:
    """sum_i p_i (j+1-i)^beta for j = 0..n_terms-1.

    The direct alternating sum loses roughly (k+1) log2(j) bits to
    cancellation, so it is restricted to j <= k+1 and runs in extended
    precision (the time stepper's attainable error floor tracks the relative
    accuracy of these leading weights).  Beyond that the binomial pattern
    annihilates i^r for r <= k and the expansion
    (j+1-i)^beta = (j+1)^beta sum_r C(beta,r) (-i/(j+1))^r turns the block
    into a convergent series with no cancellation; the term ratio
    (k+1)/(j+1) stays below 7/9 at the crossover.
    """
    deg = len(pattern) - 1  # k + 1
    cut = min(n_terms, deg + 1)
    out = np.zeros(n_terms, dtype=dtype)
    j_ld = np.arange(cut, dtype=np.longdouble)
    direct = np.zeros(cut, dtype=np.longdouble)
    beta_ld = np.longdouble(beta)
    for i, p in enumerate(pattern):
        direct += p * _signed_power(j_ld + 1 - i, beta_ld)
    out[:cut] = direct.astype(dtype)
    if cut < n_terms:
        x = np.arange(cut, n_terms, dtype=dtype) + dtype(1)
        u = dtype(1) / x
        sums = _pattern_power_sums(tuple(pattern), dtype)
        coeffs = np.empty(_SERIES_TERMS + 1, dtype=dtype)
        c = dtype(1)  # running binomial C(beta, r), sign-folded with (-1)^r
        beta_d = dtype(beta)
        for r in range(_SERIES_TERMS + 1):
            coeffs[r] = c * sums[r]
            c *= (r - beta_d) / (r + dtype(1))
        acc = np.full_like(x, coeffs[_SERIES_TERMS])
        for r in range(_SERIES_TERMS - 1, -1, -1):
            acc = acc * u + coeffs[r]
        out[cut:] = x**beta_d * acc
    return out


def rho(k: int, j: int, alpha: float, m: int) -> float:
    """Alternating binomial sum sum_{i<=min(j+1,k+1)} C(k+1,i)(-1)^i (j+1-i)^(m-alpha)."""
    if not 1 <= k <= MAX_ORDER:
        raise DomainError(f"rho: k={k} outside 1..{MAX_ORDER}")
    if j < 0 or not 1 <= m <= k:
        raise DomainError(f"rho: invalid indices j={j}, m={m}")
    total = 0.0
    for i in range(min(j + 1, k + 1) + 1):
        base = j + 1 - i
        if base > 0:
            total += math.comb(k + 1, i) * (-1) ** i * base ** (m - alpha)
    return total


def weights_generic(params: SchemeParams, n_terms: int) -> WeightSequence:
    """Weights from the generic binomial-sum construction, vectorized over j."""
    k, alpha = params.k, params.alpha
    if n_terms < k + 1:
        raise DomainError(f"n_terms={n_terms} must be >= k+1")
    b = GENERATING_B[k]
    binom = [math.comb(k + 1, i) * (-1) ** i for i in range(k + 2)]
    omegas = np.zeros(n_terms)
    for m in range(1, k + 1):
        rho_m = _pattern_block(binom, m - alpha, n_terms)
        omegas += float(b[k - m]) * rho_m / math.gamma(m + 1 - alpha)
    return WeightSequence(params=params, omegas=omegas)


# Literal per-k rows of the closed-form expressions: alternating binomial
# pattern over the k+2 shifted bases, and the multiplier of each
# 1/Gamma(m+1-alpha) block, m = k, k-1, ..., 1.
_EXPLICIT_PATTERN = {
    1: [1, -2, 1],
    2: [1, -3, 3, -1],
    3: [1, -4, 6, -4, 1],
    4: [1, -5, 10, -10, 5, -1],
    5: [1, -6, 15, -20, 15, -6, 1],
    6: [1, -7, 21, -35, 35, -21, 7, -1],
}
_EXPLICIT_MULTIPLIERS = {
    1: [1.0],
    2: [1.0, 0.5],
    3: [1.0, 1.0, 1.0 / 3.0],
    4: [1.0, 1.5, 11.0 / 12.0, 0.25],
    5: [1.0, 2.0, 1.75, 5.0 / 6.0, 0.2],
    6: [1.0, 2.5, 17.0 / 6.0, 1.875, 137.0 / 180.0, 1.0 / 6.0],
}


def weights_explicit(params: SchemeParams, n_terms: int) -> WeightSequence:
    """Weights from the closed forms with hardcoded coefficient rows.

    The leading rows j < k are the truncated sums (terms with nonpositive
    base vanish); the printed closed forms contain one known transcription
    slip in the k = 3 general row, so the binomial pattern is authoritative.
    """
    k, alpha = params.k, params.alpha
    if n_terms < k + 1:
        raise DomainError(f"n_terms={n_terms} must be >= k+1")
    return WeightSequence(params=params, omegas=_explicit_omegas(k, alpha, n_terms))


@lru_cache(maxsize=64)
def _explicit_omegas(k: int, alpha: float, n_terms: int, dtype=np.float64) -> np.ndarray:
    pattern = _EXPLICIT_PATTERN[k]
    mults = _EXPLICIT_MULTIPLIERS[k]
    omegas = np.zeros(n_terms, dtype=dtype)
    for idx, mult in enumerate(mults):
        m = k - idx
        block = _pattern_block(pattern, m - alpha, n_terms, dtype)
        omegas += dtype(mult) * block / dtype(math.gamma(m + 1 - alpha))
    omegas.setflags(write=False)
    return omegas


@lru_cache(maxsize=8)
def _gauss_rule(n: int):
    x, w = leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w  # mapped to [0, 1]


def _lagrange_derivative_factor(k: int, i: int, s: np.ndarray) -> np.ndarray:
    # Q_{k,i}(s) = sum_{m'!=i} 1/(m'-i) prod_{i'!=i,m'} (s+i'-1)/(i'-i)
    total = np.zeros_like(s)
    for mprime in range(k + 1):
        if mprime == i:
            continue
        prod = np.full_like(s, 1.0 / (mprime - i))
        for iprime in range(k + 1):
            if iprime in (i, mprime):
                continue
            prod *= (s + iprime - 1) / (iprime - i)
        total += prod
    return total


def weights_quadrature_oracle(params: SchemeParams, m: int, n_gauss: int = 256) -> float:
    """Weight omega_m evaluated by Gauss-Legendre quadrature of the defining
    kernel integrals; the endpoint singularity of the m - i = 0 term is
    removed by the substitution u = (1-s)^(1-alpha)."""
    k, alpha = params.k, params.alpha
    if m < 0:
        raise DomainError(f"weights_quadrature_oracle: m={m} must be >= 0")
    x, w = _gauss_rule(n_gauss)
    total = 0.0
    for i in range(min(m, k) + 1):
        if m - i >= 1:
            integrand = (m - i + 1 - x) ** (-alpha) * _lagrange_derivative_factor(k, i, x)
            total += float(np.dot(w, integrand)) / math.gamma(1.0 - alpha)
        else:
            s_of_u = 1.0 - x ** (1.0 / (1.0 - alpha))
            integrand = _lagrange_derivative_factor(k, i, s_of_u)
            total += float(np.dot(w, integrand)) / ((1.0 - alpha) * math.gamma(1.0 - alpha))
    return total


def symbol_delta_alpha(
    params: SchemeParams,
    xi: complex | None = None,
    ztau: complex | None = None,
    backend: str = "weight_sum",
    truncation: int = 20000,
    tol: float = 1e-12,
) -> complex:
    """Generating symbol delta_alpha evaluated by one of three routes.

    backend="weight_sum": truncated power series sum_{j<=M} omega_j xi^j,
    any |xi| <= 1, xi != 1.
    backend="polylog_series": the closed form
    ((1-xi)^(k+1)/xi) sum_j b_{k+1-j} Li_{alpha-j}(xi) / Gamma(j+1-alpha)
    with the polylogarithms summed directly (|xi| < 0.999).
    backend="tau8": the same closed form with the order-8 rational
    polylogarithm backend, parametrized by ztau (xi = exp(-ztau)).
    """
    k, alpha = params.k, params.alpha
    if backend == "tau8":
        if ztau is None:
            raise DomainError("tau8 backend needs ztau")
        ztau = complex(ztau)
        xi = cmath.exp(-ztau)
    else:
        if xi is None:
            if ztau is None:
                raise DomainError("symbol_delta_alpha needs xi or ztau")
            xi = cmath.exp(-complex(ztau))
        xi = complex(xi)

    if backend == "weight_sum":
        if abs(xi) > 1.0 + 1e-12 or xi == 1.0:
            raise DomainError("weight_sum backend needs |xi| <= 1, xi != 1")
        omegas = weights_explicit(params, truncation).omegas
        return complex(np.polynomial.polynomial.polyval(xi, omegas))

    b = GENERATING_B[k]
    prefactor = (1.0 - xi) ** (k + 1) / xi
    acc = 0.0 + 0.0j
    for j in range(1, k + 1):
        if backend == "polylog_series":
            li = polylog_series(alpha - j, xi, tol)
        elif backend == "tau8":
            li = polylog_tau8(alpha - j, ztau)
        else:
            raise DomainError(f"unknown backend {backend!r}")
        acc += float(b[k - j]) * li / math.gamma(j + 1 - alpha)
    return prefactor * acc
