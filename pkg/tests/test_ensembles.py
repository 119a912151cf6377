"""Zero laws, coefficient ensembles, and stream determinism."""

import math

import numpy as np
import pytest

from critpair import (
    BadCdfTable,
    ConfigError,
    EnsembleSpec,
    SeededRng,
    ginibre_zeros_from_matrix,
    sample_ginibre_zeros,
    sample_iid_zero_poly,
    sample_weyl_poly,
    uniform_disk_table,
    weyl_zeros,
)
from critpair.cdf_table import table_from_function
from critpair.ensembles import complex_normal_from_uniforms, disk_point


def test_disk_point_corners():
    assert disk_point(0.0, 0.37) == 0.0
    assert disk_point(1.0, 0.0) == 1.0


def test_disk_point_area_law():
    rng = SeededRng.for_trial(2026, 0)
    us = rng.uniforms(2_000_000)
    pts = np.sqrt(us[0::2]) * np.exp(2j * math.pi * us[1::2])
    frac = float(np.mean(np.abs(pts) <= 0.5))
    # P[|z| <= 1/2] = 1/4 for the uniform disk
    assert abs(frac - 0.25) <= 0.002


def test_complex_normal_degenerate():
    assert complex_normal_from_uniforms(0.3, 0.7, 0.0) == 0.0


def test_complex_normal_moments():
    rng = SeededRng.for_trial(7, 1)
    us = rng.uniforms(2_000_000)
    zs = complex_normal_from_uniforms(us[0::2], us[1::2], 1.0)
    assert abs(float(np.var(zs.real)) - 0.5) <= 0.003
    assert abs(float(np.mean(np.abs(zs) ** 2)) - 1.0) <= 0.003


def test_iid_support_and_determinism():
    spec = EnsembleSpec(kind="iid", n=3, density="uniform_disk")
    a = sample_iid_zero_poly(spec, SeededRng.for_trial(1, 0))
    b = sample_iid_zero_poly(spec, SeededRng.for_trial(1, 0))
    assert a.degree == 3
    assert np.all(np.abs(a.zeros) <= 1.0)
    np.testing.assert_array_equal(a.zeros, b.zeros)


def test_radial_table_reproduces_disk_law():
    table = uniform_disk_table()
    spec = EnsembleSpec(kind="iid", n=100_000, density="radial", table=table)
    poly = sample_iid_zero_poly(spec, SeededRng.for_trial(5, 0))
    radii = np.sort(np.abs(poly.zeros))
    # KS of |z| against F(r) = r^2
    steps = np.arange(1, radii.size + 1) / radii.size
    fs = radii * radii
    ks = float(np.max(np.abs(steps - fs)))
    assert ks <= 0.01


def test_radial_table_too_coarse():
    coarse = table_from_function(lambda r: r * r, 1.0, rows=64)
    spec = EnsembleSpec(kind="iid", n=10, density="radial", table=coarse)
    with pytest.raises(BadCdfTable):
        sample_iid_zero_poly(spec, SeededRng.for_trial(0, 0))


def test_weyl_degree_one_coefficients():
    spec = EnsembleSpec(kind="weyl", n=1)
    poly = sample_weyl_poly(spec, SeededRng.for_trial(3, 0))
    # replay the same stream: at n = 1 the shape factors n^{k/2}/sqrt(k!)
    # are 1 for both k, so the coefficients are the raw X_k
    rng = SeededRng.for_trial(3, 0)
    us = rng.uniforms(4)
    xs = complex_normal_from_uniforms(us[0::2], us[1::2], 1.0)
    got = poly.coeffs * 2.0**poly.scale_exp
    np.testing.assert_allclose(got, xs, rtol=1e-15)


def test_weyl_shape_peaks_at_n():
    # term ratio sqrt(n/(k+1)) reaches 1 exactly at k + 1 = n, so k = n - 1
    # and k = n tie for the maximum
    n = 50
    k = np.arange(n + 1)
    log_fact = np.concatenate([[0.0], np.cumsum(np.log(np.arange(1, n + 1)))])
    shape = 0.5 * k * math.log(n) - 0.5 * log_fact
    peak = int(np.argmax(shape))
    assert peak in (n - 1, n)
    assert shape[n - 1] == pytest.approx(shape[n], rel=1e-12)


def test_weyl_coefficients_stay_normalized():
    spec = EnsembleSpec(kind="weyl", n=150)
    poly = sample_weyl_poly(spec, SeededRng.for_trial(9, 2))
    m = float(np.max(np.abs(poly.coeffs)))
    assert 0.5 <= m <= 2.0


def test_weyl_zeros_concentrate_on_disk():
    spec = EnsembleSpec(kind="weyl", n=100)
    poly = weyl_zeros(spec, SeededRng.for_trial(921, 5))
    frac = float(np.mean(np.abs(poly.zeros) <= 1.1))
    assert poly.degree == 100
    assert frac >= 0.95


def test_ginibre_single_entry():
    spec = EnsembleSpec(kind="ginibre", n=1)
    poly = sample_ginibre_zeros(spec, SeededRng.for_trial(4, 0))
    rng = SeededRng.for_trial(4, 0)
    us = rng.uniforms(2)
    x = complex_normal_from_uniforms(us[0], us[1], 1.0)
    assert poly.zeros[0] == pytest.approx(complex(x), rel=1e-15)


def test_ginibre_diagonal_injection():
    d = np.diag([1.0 + 0.0j, 2.0, 3.0, 4.0])
    poly = ginibre_zeros_from_matrix(d)
    got = np.sort(poly.zeros.real)
    np.testing.assert_allclose(got, np.array([1.0, 2.0, 3.0, 4.0]) / 2.0, atol=1e-9)


def test_ginibre_circular_law():
    spec = EnsembleSpec(kind="ginibre", n=200)
    poly = sample_ginibre_zeros(spec, SeededRng.for_trial(11, 0))
    assert float(np.mean(np.abs(poly.zeros) <= 1.1)) >= 0.97


def test_spec_validation():
    with pytest.raises(ConfigError):
        EnsembleSpec(kind="wigner", n=10)
    with pytest.raises(ConfigError):
        EnsembleSpec(kind="iid", n=0)
    with pytest.raises(ConfigError):
        EnsembleSpec(kind="iid", n=10, density="poisson")
    with pytest.raises(ConfigError):
        EnsembleSpec(kind="iid", n=10, density="radial")  # table missing
    with pytest.raises(ConfigError):
        EnsembleSpec(kind="weyl", n=10, coeff_law="cauchy")
