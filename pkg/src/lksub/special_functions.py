"""Scalar special functions: gamma, Dirichlet eta, Riemann zeta, and three
polylogarithm backends (direct series, singular expansion, order-8 rational
approximant).

The polylogarithm Li_p(xi) = sum_{j>=1} xi^j / j^p is evaluated either
directly inside the unit disk, or through its expansion around xi = 1 in the
variable z with xi = exp(-z):

    Li_p(exp(-z)) = Gamma(1-p) z^(p-1) + sum_{j>=0} (-1)^j zeta(p-j) z^j / j!

All fractional powers use the principal branch, arg z in (-pi, pi].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class DomainError(ValueError):
    """Argument outside the domain of validity of an evaluator."""


class EvaluationError(ArithmeticError):
    """Evaluation broke down (e.g. a vanishing denominator)."""


# Radius guard for the z-based expansions: they converge for |z| <= pi/sin(theta)
# with theta slightly above pi/2; theta = 0.55*pi keeps a safety margin.
_EXPANSION_RADIUS = math.pi / math.sin(0.55 * math.pi)

# Threshold inside the unit disk below which the direct series is accepted.
_SERIES_RADIUS = 0.999


@dataclass(frozen=True)
class ComplexArgument:
    """A point xi on which Li_p is evaluated, optionally carrying the exponent
    z with xi = exp(-z) so the branch of z^(p-1) is unambiguous."""

    xi: complex | None = None
    ztau: complex | None = None

    def __post_init__(self):
        if self.xi is None and self.ztau is None:
            raise DomainError("ComplexArgument needs xi or ztau")
        if self.xi is not None and self.ztau is not None:
            expected = cmath.exp(-self.ztau)
            scale = max(abs(expected), 1.0)
            if abs(self.xi - expected) > 1e-12 * scale:
                raise DomainError("inconsistent pair: xi != exp(-ztau)")

    def resolve_xi(self) -> complex:
        if self.xi is not None:
            return complex(self.xi)
        return cmath.exp(-self.ztau)


def _check_order(p: float) -> float:
    p = float(p)
    if p >= 1 and p == int(p):
        raise DomainError(f"polylog order p={p} must not be a positive integer")
    return p


def gamma(x: float) -> float:
    """Gamma function for real x > -20, excluding the poles at 0, -1, -2, ..."""
    x = float(x)
    if x <= -20:
        raise DomainError(f"gamma: x={x} out of supported range (x > -20)")
    if x <= 0 and x == int(x):
        raise DomainError(f"gamma: pole at nonpositive integer x={x}")
    return math.gamma(x)


def _eta_alternating(p: float, n: int = 55) -> float:
    # Chebyshev-accelerated alternating sum (P. Borwein's method); excellent
    # for p > 0 where the alternating series converges.
    d = [0.0] * (n + 1)
    s = 0.0
    fact = 1.0
    for i in range(n + 1):
        if i > 0:
            fact *= (n + i - 1) * (n - i + 1) * 4.0 / ((2 * i - 1) * (2 * i))
        s += fact
        d[i] = s
    dn = d[n]
    acc = 0.0
    for j in range(n):
        acc += (-1) ** j * (d[j] - dn) / (j + 1) ** p
    return -acc / dn


@lru_cache(maxsize=4096)
def riemann_zeta(p: float) -> float:
    """Riemann zeta at real p != 1."""
    p = float(p)
    if p == 1:
        raise DomainError("riemann_zeta: pole at p = 1")
    if p == 0:
        return -0.5
    if p > 1:
        from scipy.special import zeta as _scipy_zeta

        return float(_scipy_zeta(p))
    if p > 0:
        return _eta_alternating(p) / (1.0 - 2.0 ** (1.0 - p))
    # p < 0: reflection onto 1 - p > 1.
    if p / 2 == int(p / 2):
        return 0.0  # trivial zeros at negative even integers
    from scipy.special import zeta as _scipy_zeta

    return (
        2.0**p
        * math.pi ** (p - 1.0)
        * math.sin(math.pi * p / 2.0)
        * math.gamma(1.0 - p)
        * float(_scipy_zeta(1.0 - p))
    )


def dirichlet_eta(p: float) -> float:
    """Dirichlet eta, eta(p) = sum_{n>=1} (-1)^(n-1) n^(-p); entire in p."""
    p = float(p)
    if p > 0:
        return _eta_alternating(p)
    if p == 0:
        return 0.5
    return riemann_zeta(p) * (1.0 - 2.0 ** (1.0 - p))


# Weights of the 7-term rational acceleration used for the coefficients of the
# order-8 approximant below; the l-th partial sum S_l enters with weight w_l*l^p.
_ACCEL_WEIGHTS = (1.0, 36.0, 315.0, 1120.0, 1890.0, 1512.0, 462.0)


def dirichlet_eta_accelerated(p: float) -> float:
    """7-term accelerated evaluation of eta(p).

    Weighted combination of the partial sums S_l = sum_{j<=l} (-1)^(j-1) j^(-p);
    exact values are reproduced to ~1e-8 for moderately negative p but the
    accuracy degrades as p decreases (quantified in the test suite).
    """
    p = float(p)
    num = 1.0  # the l = 1 term enters as a bare 1
    den = 0.0
    s = 0.0
    for l in range(1, 8):
        s += (-1) ** (l - 1) * float(l) ** (-p)
        w = _ACCEL_WEIGHTS[l - 1] * float(l) ** p
        if l > 1:
            num += w * s
        den += w
    return num / den


@lru_cache(maxsize=4096)
def riemann_zeta_accelerated(p: float) -> float:
    """zeta(p) = eta(p) / (1 - 2^(1-p)) with eta from the 7-term acceleration."""
    p = float(p)
    if p == 1:
        raise DomainError("riemann_zeta_accelerated: pole at p = 1")
    return dirichlet_eta_accelerated(p) / (1.0 - 2.0 ** (1.0 - p))


def polylog_series(p: float, xi: complex, tol: float = 1e-12) -> complex:
    """Direct series sum of Li_p(xi), valid strictly inside the unit disk.

    Truncated when |term_j| * |xi|/(1-|xi|) * (1 + 2/j)^|p| < tol, a tail
    bound that holds once the terms decay geometrically.  Any real order is
    accepted here; only the z-based expansions exclude positive integers.
    """
    p = float(p)
    xi = complex(xi)
    r = abs(xi)
    if r >= _SERIES_RADIUS:
        raise DomainError(f"polylog_series: |xi|={r:.6g} >= {_SERIES_RADIUS}")
    if r == 0.0:
        return 0.0 + 0.0j
    total = 0.0 + 0.0j
    geom = r / (1.0 - r)
    ap = abs(p)
    block = 512
    for start in range(1, 200001, block):
        j = np.arange(start, start + block)
        terms = xi**j * j ** (-p)
        total += complex(terms.sum())
        last = start + block - 1
        if abs(terms[-1]) * geom * (1.0 + 2.0 / last) ** ap < tol:
            return total
    raise EvaluationError("polylog_series: did not converge within 2e5 terms")


def polylog_singular_expansion(p: float, ztau: complex, terms: int = 60) -> complex:
    """Expansion of Li_p(exp(-ztau)) around ztau = 0, truncated at `terms`
    series terms plus the singular Gamma(1-p) ztau^(p-1) contribution."""
    p = _check_order(p)
    ztau = complex(ztau)
    if ztau == 0:
        raise DomainError("polylog_singular_expansion: ztau = 0 is singular")
    if abs(ztau) > _EXPANSION_RADIUS:
        raise DomainError(
            f"polylog_singular_expansion: |ztau|={abs(ztau):.4g} beyond "
            f"convergence guard {_EXPANSION_RADIUS:.4g}"
        )
    if terms < 1:
        raise DomainError("polylog_singular_expansion: terms must be >= 1")
    total = math.gamma(1.0 - p) * ztau ** (p - 1.0)
    power = 1.0 + 0.0j
    factorial = 1.0
    for j in range(terms):
        if j > 0:
            power *= ztau
            factorial *= j
        total += (-1) ** j * riemann_zeta(p - j) * power / factorial
    return total


def _tau8_coefficients(p: float) -> tuple[list[complex], list[complex]]:
    # Numerator and denominator polynomial coefficients of the order-8
    # rational approximant to the regular part of Li_p(exp(-z)).  The b_i are
    # the zeta values entering the singular expansion; the 7-term accelerated
    # evaluator is too lossy below p ~ -3 (rel err 0.1+), so the accurate
    # zeta is used here.
    b = [riemann_zeta(p - i) for i in range(9)]
    b0, b1, b2, b3, b4, b5, b6, b7, b8 = b
    phi = [
        b0,
        -(b1 - 8 * b0 * b8 / (15 * b7)),
        # the b0 term must carry the factor 2 for the quotient's Taylor
        # expansion to reproduce the series coefficient zeta(p-2)/2 exactly
        b2 / 2 + 2 * b0 * b8 / (15 * b6) - 8 * b1 * b8 / (15 * b7),
        -(b3 / 6 - 4 * b0 * b8 / (195 * b5) + 2 * b1 * b8 / (15 * b6)
          - 4 * b2 * b8 / (15 * b7)),
        (b4 / 24 + b0 * b8 / (312 * b4) - 4 * b1 * b8 / (195 * b5)
         + b2 * b8 / (15 * b6) - 4 * b3 * b8 / (45 * b7)),
        -(b5 / 120 - b0 * b8 / (6435 * b3) + b1 * b8 / (312 * b4)
          - 2 * b2 * b8 / (195 * b5) + b3 * b8 / (45 * b6)
          - b4 * b8 / (45 * b7)),
        (b6 / 720 + b0 * b8 / (128700 * b2) - b1 * b8 / (6435 * b3)
         + b2 * b8 / (624 * b4) - 2 * b3 * b8 / (585 * b5)
         + b4 * b8 / (180 * b6) - b5 * b8 / (225 * b7)),
        -(b7 / 5040 - b0 * b8 / (4054050 * b1) + b1 * b8 / (128700 * b2)
          - b2 * b8 / (12870 * b3) + b3 * b8 / (1872 * b4)
          - b4 * b8 / (1170 * b5) + b5 * b8 / (900 * b6)
          - b6 * b8 / (1350 * b7)),
    ]
    psi = [
        1.0,
        8 * b8 / (15 * b7),
        2 * b8 / (15 * b6),
        4 * b8 / (195 * b5),
        b8 / (312 * b4),
        b8 / (6435 * b3),
        b8 / (128700 * b2),
        b8 / (4054050 * b1),
        b8 / (259459200 * b0),
    ]
    return phi, psi


def polylog_tau8(p: float, ztau: complex) -> complex:
    """Order-8 rational approximation to Li_p(exp(-ztau)).

    The regular part is a degree-(7,8) rational function whose Taylor
    expansion matches the singular expansion through ztau^7; the leading
    defect is of order ztau^8.  Valid on the same disk as the expansion.
    """
    p = _check_order(p)
    ztau = complex(ztau)
    if ztau == 0:
        raise DomainError("polylog_tau8: ztau = 0 is singular")
    if abs(ztau) > _EXPANSION_RADIUS:
        raise DomainError(
            f"polylog_tau8: |ztau|={abs(ztau):.4g} beyond convergence guard"
        )
    phi, psi = _tau8_coefficients(p)
    num = 0.0 + 0.0j
    den = 0.0 + 0.0j
    for c in reversed(phi):
        num = num * ztau + c
    for c in reversed(psi):
        den = den * ztau + c
    if den == 0:
        raise EvaluationError(f"polylog_tau8: denominator vanished at ztau={ztau}")
    return math.gamma(1.0 - p) * ztau ** (p - 1.0) + num / den
