"""Critical point location against hand and companion-matrix oracles."""

import math

import numpy as np
import pytest

from critpair import (
    CoeffFormPoly,
    ContourTooClose,
    DegreeTooLarge,
    DuplicateZeros,
    LeftTrustRegion,
    RootFormPoly,
    aberth_roots_coeffs,
    companion_oracle_roots,
    convex_hull_contains,
    count_critical_in_disk,
    critical_points_all,
    differentiate_coeffs,
    expand_from_roots,
    newton_local_critical,
)
from critpair.rootfind import convex_hull, hull_gap

# critical points of z(z-1)(z-2): roots of 3z^2 - 6z + 2, i.e. 1 -+ 1/sqrt(3)
CRIT_LO = 1.0 - 1.0 / math.sqrt(3.0)
CRIT_HI = 1.0 + 1.0 / math.sqrt(3.0)


def _hausdorff(a, b) -> float:
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    d = np.abs(a[:, None] - b[None, :])
    return max(float(d.min(axis=1).max()), float(d.min(axis=0).max()))


def test_symmetric_pair():
    report = critical_points_all(RootFormPoly([1.0, -1.0]))
    assert report.all_converged
    np.testing.assert_allclose(report.points, [0.0 + 0.0j], atol=1e-12)


def test_three_real_zeros_quadratic_oracle():
    report = critical_points_all(RootFormPoly([0.0, 1.0, 2.0]))
    got = np.sort(report.points.real)
    np.testing.assert_allclose(got, [CRIT_LO, CRIT_HI], atol=1e-10)
    assert np.max(np.abs(report.points.imag)) <= 1e-10


def test_four_zeros_match_companion_oracle():
    p = RootFormPoly([0.0, 1.0, 2.0, 3.0])
    direct = critical_points_all(p).points
    deriv = differentiate_coeffs(expand_from_roots(p))
    oracle = companion_oracle_roots(deriv)
    assert _hausdorff(direct, oracle) <= 1e-10


def test_duplicate_zeros_rejected():
    with pytest.raises(DuplicateZeros):
        critical_points_all(RootFormPoly([0.5, 0.5 + 1e-13]))


def test_newton_midpoint():
    z, _ = newton_local_critical(RootFormPoly([0.0, 1.0]), 0.4, 0.5)
    assert z == pytest.approx(0.5, abs=1e-12)


def test_newton_symmetric():
    z, _ = newton_local_critical(RootFormPoly([1.0, -1.0]), 0.3, 1.0)
    assert abs(z) <= 1e-12


def test_newton_three_zeros():
    z, _ = newton_local_critical(RootFormPoly([0.0, 1.0, 2.0]), 0.4, 0.5)
    assert z == pytest.approx(CRIT_LO, abs=1e-12)


def test_newton_trust_region_violation():
    with pytest.raises(LeftTrustRegion):
        newton_local_critical(RootFormPoly([0.0, 1.0]), 0.9, 0.05)


def test_disk_count_cases():
    pair = RootFormPoly([1.0, -1.0])
    assert count_critical_in_disk(pair, 0.0, 0.5) == 1
    assert count_critical_in_disk(pair, 0.3, 0.1) == 0
    three = RootFormPoly([0.0, 1.0, 2.0])
    # both 1 -+ 1/sqrt(3) lie within 0.578 of 1
    assert count_critical_in_disk(three, 1.0, 0.7) == 2


def test_disk_count_zero_on_contour():
    with pytest.raises(ContourTooClose):
        count_critical_in_disk(RootFormPoly([1.0, -1.0]), 0.0, 1.0)


def test_aberth_coeff_roots():
    got = aberth_roots_coeffs(CoeffFormPoly(np.array([-1.0, 0.0, 1.0]))).points
    assert _hausdorff(got, [1.0, -1.0]) <= 1e-10
    got = aberth_roots_coeffs(CoeffFormPoly(np.array([1.0, 0.0, 1.0]))).points
    assert _hausdorff(got, [1.0j, -1.0j]) <= 1e-10
    cubic = CoeffFormPoly(np.array([-6.0, 11.0, -6.0, 1.0]))
    assert _hausdorff(aberth_roots_coeffs(cubic).points, [1.0, 2.0, 3.0]) <= 1e-9


def test_companion_oracle_cubic():
    cubic = CoeffFormPoly(np.array([-6.0, 11.0, -6.0, 1.0]))
    assert _hausdorff(companion_oracle_roots(cubic), [1.0, 2.0, 3.0]) <= 1e-9


def test_companion_oracle_degree_cap():
    coeffs = np.ones(66)
    with pytest.raises(DegreeTooLarge):
        companion_oracle_roots(CoeffFormPoly(coeffs))


def test_hull_membership():
    cross = np.array([1.0, -1.0, 1.0j, -1.0j])
    assert convex_hull_contains(cross, 0.0, 0.0)
    seg = np.array([0.0, 1.0])
    assert not convex_hull_contains(seg, 2.0, 1e-9)
    assert convex_hull_contains(seg, 0.5 + 1e-12j, 1e-9)


def test_hull_gap_square():
    hull = convex_hull(np.array([0.0, 1.0, 1.0 + 1.0j, 1.0j]))
    assert len(hull) == 4
    assert hull_gap(hull, 0.5 + 0.5j) == 0.0
    assert hull_gap(hull, 2.0 + 0.5j) == pytest.approx(1.0, abs=1e-15)
    assert hull_gap(hull, 2.0 + 2.0j) == pytest.approx(math.sqrt(2.0), rel=1e-15)


def test_gauss_lucas_on_random_cloud():
    rng = np.random.default_rng(20260822)
    for _ in range(5):
        zeros = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        report = critical_points_all(RootFormPoly(zeros))
        diam = float(np.max(np.abs(zeros[:, None] - zeros[None, :])))
        for c in report.points:
            assert convex_hull_contains(zeros, complex(c), 1e-9 * diam)
