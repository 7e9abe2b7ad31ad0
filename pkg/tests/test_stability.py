import math

import numpy as np
import pytest

from lksub.special_functions import DomainError
from lksub.stability import (
    ContourSpec,
    boundary_locus,
    expansion_order_fit,
    sector_check_tau8,
)
from lksub.weights import SchemeParams


def test_contour_validation():
    with pytest.raises(DomainError):
        ContourSpec(theta=0.4 * math.pi, kappa=1.0, tau=0.1)
    with pytest.raises(DomainError):
        ContourSpec(theta=math.pi, kappa=1.0, tau=0.1)
    with pytest.raises(DomainError):
        ContourSpec(theta=0.55 * math.pi, kappa=0.0, tau=0.1)
    with pytest.raises(DomainError):
        ContourSpec(theta=0.55 * math.pi, kappa=1.0, tau=0.1, n_arc=2)


def test_contour_points_geometry():
    spec = ContourSpec(theta=0.6 * math.pi, kappa=0.5, tau=0.05)
    z = spec.points()
    assert np.max(np.abs(z.imag)) <= math.pi / spec.tau + 1e-9
    arc = z[: spec.n_arc]
    assert np.max(np.abs(np.abs(arc) - spec.kappa)) < 1e-12


def test_locus_validation():
    params = SchemeParams(k=2, alpha=0.5)
    with pytest.raises(DomainError):
        boundary_locus(params, n_phi=8)
    with pytest.raises(DomainError):
        boundary_locus(params, truncation_M=100)


def test_locus_conjugate_symmetry_and_containment():
    report = boundary_locus(SchemeParams(k=2, alpha=0.5), n_phi=32,
                            truncation_M=20000)
    assert report.contained
    assert report.theta0_estimate < math.pi
    values = np.array([s[1] for s in report.samples])
    # phi and 2 pi - phi give conjugate symbol values
    assert np.max(np.abs(values - values[::-1].conj())) < 1e-8
    # the locus approaches the origin as phi -> 0
    mags = np.abs(values)
    assert mags[0] == np.min(mags)


def test_locus_bdf6_angle():
    # alpha = 1 reduces to BDF6, which is A(17.84 degrees)-stable; the locus
    # enters the left half-plane near the real axis
    report = boundary_locus(SchemeParams(k=6, alpha=1.0), n_phi=64,
                            truncation_M=20000)
    assert abs(report.theta0_estimate - 2.83) < 0.05
    assert report.contained


def test_sector_check_tau8():
    contour = ContourSpec(theta=0.55 * math.pi, kappa=1.0, tau=0.01)
    report = sector_check_tau8(SchemeParams(k=4, alpha=0.2), contour)
    assert report.contained
    assert report.metadata["cross_checked"] > 0
    assert report.metadata["cross_check_worst"] < 1e-4


def test_expansion_order_fit_k1():
    slope = expansion_order_fit(SchemeParams(k=1, alpha=0.5),
                                [0.2, 0.1, 0.05, 0.025])
    assert 1.9 < slope < 2.1


def test_expansion_order_fit_k3():
    h = [0.05 * 2.0**-i for i in range(5)]
    slope = expansion_order_fit(SchemeParams(k=3, alpha=0.2), h)
    assert 3.85 < slope < 4.15


def test_expansion_order_fit_k5():
    h = [0.1 * 2.0**-i for i in range(5)]
    slope = expansion_order_fit(SchemeParams(k=5, alpha=0.8), h)
    assert 5.7 < slope < 6.3


def test_expansion_order_fit_validation():
    params = SchemeParams(k=2, alpha=0.5)
    with pytest.raises(DomainError):
        expansion_order_fit(params, [0.1, 0.05, 0.025])
    with pytest.raises(DomainError):
        expansion_order_fit(params, [0.025, 0.05, 0.1, 0.2])
    with pytest.raises(DomainError):
        expansion_order_fit(params, [0.8, 0.4, 0.2, 0.1])
