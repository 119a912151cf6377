"""Distribution fits, KS distances, and the coverage/spacing summaries."""

import math

import numpy as np
import pytest

from critpair import (
    EmptySample,
    LengthMismatch,
    ZeroDensity,
    coverage_miss_rate,
    disk_uniformity,
    fit_complex_gaussian,
    ks_distance,
    nearest_zero_law,
    robust_component_variances,
    robust_corr,
    standard_normal_cdf,
)
from critpair.rng import SeededRng


def _normal_quantile(u: float) -> float:
    lo, hi = -10.0, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if standard_normal_cdf(mid) < u:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_normal_cdf_anchors():
    assert standard_normal_cdf(0.0) == pytest.approx(0.5, abs=1e-15)
    assert standard_normal_cdf(1.959963984540054) == pytest.approx(0.975, abs=1e-12)
    assert standard_normal_cdf(-8.0) < 1e-14


def test_ks_singleton():
    assert ks_distance(np.array([0.0]), standard_normal_cdf) == pytest.approx(0.5)


def test_ks_exact_quantiles():
    # points at the k/(n+1) quantiles leave a gap of exactly 1/(n+1) plus
    # the half-width from the step positions
    n = 9
    qs = np.array([_normal_quantile((k + 1) / (n + 1)) for k in range(n)])
    got = ks_distance(qs, standard_normal_cdf)
    assert got == pytest.approx(0.1, abs=1e-9)


def test_ks_large_normal_sample():
    rng = SeededRng.for_trial(404, 0)
    u = rng.uniforms(20000).reshape(2, -1)
    z = np.sqrt(-2.0 * np.log(u[0])) * np.cos(2.0 * math.pi * u[1])
    assert ks_distance(z, standard_normal_cdf) <= 0.02


def test_fit_constant_sample():
    fit = fit_complex_gaussian(np.full(5, 0.3 + 0.2j))
    assert fit.mean == pytest.approx(0.3 + 0.2j)
    assert fit.var_re <= 1e-30 and fit.var_im <= 1e-30
    assert fit.corr_re_im == 0.0


def test_fit_fourth_roots():
    fit = fit_complex_gaussian(np.array([1.0, -1.0, 1.0j, -1.0j]))
    assert fit.mean == pytest.approx(0.0)
    # sample variance with the n-1 divisor: 2/3 per component
    assert fit.var_re == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert fit.var_im == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert fit.corr_re_im == pytest.approx(0.0, abs=1e-15)


def test_fit_rejects_singleton():
    with pytest.raises(EmptySample):
        fit_complex_gaussian(np.array([1.0 + 0.0j]))


def _complex_normal(seed: int, n: int) -> np.ndarray:
    rng = SeededRng.for_trial(seed, 0)
    u = rng.uniforms(2 * n).reshape(2, -1)
    r = np.sqrt(-np.log(u[0]))
    return r * np.exp(2j * math.pi * u[1])


def test_fit_standard_complex_gaussian():
    zs = _complex_normal(11, 10000)
    fit = fit_complex_gaussian(zs)
    assert abs(fit.mean) <= 0.02
    assert 0.47 <= fit.var_re <= 0.53
    assert 0.47 <= fit.var_im <= 0.53
    assert abs(fit.corr_re_im) <= 0.03


def test_robust_matches_moments_on_clean_gaussian():
    zs = _complex_normal(12, 10000)
    fit = fit_complex_gaussian(zs)
    rvar_re, rvar_im = robust_component_variances(zs)
    assert rvar_re == pytest.approx(fit.var_re, rel=0.08)
    assert rvar_im == pytest.approx(fit.var_im, rel=0.08)


def test_robust_corr_recovers_construction():
    # y = rho x + sqrt(1-rho^2) w has correlation rho
    rho = 0.6
    rng = SeededRng.for_trial(13, 0)
    u = rng.uniforms(40000).reshape(4, -1)
    x = np.sqrt(-2.0 * np.log(u[0])) * np.cos(2.0 * math.pi * u[1])
    w = np.sqrt(-2.0 * np.log(u[2])) * np.cos(2.0 * math.pi * u[3])
    y = rho * x + math.sqrt(1.0 - rho * rho) * w
    got = robust_corr(x + 1j * y)
    assert got == pytest.approx(rho, abs=0.05)


def test_robust_shrugs_off_outliers():
    zs = _complex_normal(14, 2000)
    zs[::100] += 1e3 + 1e3j
    fit = fit_complex_gaussian(zs)
    assert fit.var_re > 100.0
    rvar_re, rvar_im = robust_component_variances(zs)
    assert 0.4 <= rvar_re <= 0.6
    assert 0.4 <= rvar_im <= 0.6


def test_robust_rejects_singleton():
    with pytest.raises(EmptySample):
        robust_component_variances(np.array([0.5 + 0.5j]))


def test_coverage_miss_rate():
    crits = np.array([0.3 + 0.0j, 1.2, 0.1j, 2.0])
    centers = np.zeros(4, dtype=np.complex128)
    radii = np.full(4, 1.0)
    assert coverage_miss_rate(crits, centers, radii) == pytest.approx(0.5)
    assert coverage_miss_rate(crits, centers, np.full(4, 3.0)) == 0.0
    with pytest.raises(EmptySample):
        coverage_miss_rate(np.array([]), np.array([]), np.array([]))
    with pytest.raises(LengthMismatch):
        coverage_miss_rate(crits, centers[:2], radii)


def test_coverage_counts_nan_as_miss():
    crits = np.array([0.1 + 0.0j, complex(math.nan, 0.0)])
    centers = np.zeros(2, dtype=np.complex128)
    radii = np.full(2, 1.0)
    assert coverage_miss_rate(crits, centers, radii) == pytest.approx(0.5)


def test_nearest_zero_law_table():
    # two trials of 4 zeros: scaled distances 2*0.1 = 0.2 and 2*0.5 = 1.0
    trials = [
        np.array([0.1 + 0.0j, 1.0, 1.0j, -1.0]),
        np.array([0.5 + 0.0j, 1.0, 1.0j, -1.0]),
    ]
    rows = nearest_zero_law(trials, 0.0, 1.0 / math.pi, [0.5, 1.0, 2.0])
    assert [r for r, _, _ in rows] == [0.5, 1.0, 2.0]
    assert [e for _, e, _ in rows] == [0.5, 1.0, 1.0]
    assert rows[1][2] == pytest.approx(1.0 - math.exp(-1.0), rel=1e-15)
    with pytest.raises(ZeroDensity):
        nearest_zero_law(trials, 0.0, 0.0, [1.0])
    with pytest.raises(EmptySample):
        nearest_zero_law([], 0.0, 1.0, [1.0])


def test_disk_uniformity_quantile_radii():
    # radii at the k/(n+1) quantiles of r^2 and equally spread angles
    n = 160
    r = np.sqrt((np.arange(n) + 1.0) / (n + 1.0))
    theta = 2.0 * math.pi * (np.arange(n) + 0.5) / n - math.pi
    zs = r * np.exp(1j * theta)
    radial_ks, angular_chi2, frac_inside = disk_uniformity(zs)
    assert radial_ks <= 0.02
    assert frac_inside == 1.0
    assert angular_chi2 == pytest.approx(0.0, abs=1e-9)


def test_disk_uniformity_degenerate():
    radial_ks, _, frac_inside = disk_uniformity(np.zeros(32, dtype=np.complex128))
    assert frac_inside == 1.0
    assert radial_ks > 0.9
