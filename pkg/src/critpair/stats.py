"""Empirical-distribution checks for the limit laws under test.

KS distances against arbitrary CDFs, moment fits to the complex-Gaussian
shape (independent components, each of variance sigma^2/2), coverage rates
for confidence disks, the nearest-zero law, and a disk-uniformity battery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySample, LengthMismatch, ZeroDensity


def standard_normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


@dataclass(frozen=True)
class GaussianFit:
    """Componentwise moments of a complex sample."""

    mean: complex
    var_re: float
    var_im: float
    corr_re_im: float
    n_samples: int


def ks_distance(sample, cdf) -> float:
    """Sup distance between the sample ECDF and a reference CDF.

    Evaluates max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|) over the sorted
    sample, which captures the sup over the whole line because the ECDF is
    flat between order statistics.
    """
    xs = np.sort(np.asarray(sample, dtype=np.float64).ravel())
    n = xs.size
    if n == 0:
        raise EmptySample("KS distance of an empty sample")
    # n == 1 skips the vectorized probe: math.erf swallows length-1 arrays
    if n == 1:
        fs = np.array([float(cdf(float(xs[0])))])
    else:
        try:
            fs = np.asarray(cdf(xs), dtype=np.float64)
            if fs.shape != xs.shape:
                raise TypeError
        except (TypeError, ValueError):
            fs = np.array([float(cdf(float(x))) for x in xs])
    steps = np.arange(1, n + 1) / n
    return float(
        np.max(np.maximum(np.abs(steps - fs), np.abs(steps - 1.0 / n - fs)))
    )


def fit_complex_gaussian(sample) -> GaussianFit:
    """Unbiased component moments and Re/Im correlation of a complex sample."""
    zs = np.asarray(sample, dtype=np.complex128).ravel()
    n = zs.size
    if n < 2:
        raise EmptySample("need at least 2 samples to fit moments")
    mean = complex(np.mean(zs))
    re = zs.real - mean.real
    im = zs.imag - mean.imag
    var_re = float(np.sum(re * re) / (n - 1))
    var_im = float(np.sum(im * im) / (n - 1))
    cov = float(np.sum(re * im) / (n - 1))
    denom = var_re * var_im
    corr = cov / math.sqrt(denom) if denom > 0 else 0.0
    return GaussianFit(mean, var_re, var_im, corr, n)


# MAD of a Gaussian is Phi^{-1}(3/4) times its standard deviation.
_MAD_TO_SD = 0.674489750196082


def _mad_variance(xs: np.ndarray) -> float:
    med = float(np.median(xs))
    mad = float(np.median(np.abs(xs - med)))
    return (mad / _MAD_TO_SD) ** 2


def robust_component_variances(sample) -> tuple[float, float]:
    """Median-based variance of Re and Im, calibrated to the Gaussian core.

    The summed reciprocal statistics have a polynomial tail at finite n (a
    zero can land arbitrarily close to the evaluation point), so their
    sample variance is dominated by rare extreme trials and does not settle
    near the variance of the limiting Gaussian.  The MAD ignores the tail
    and estimates the scale of the central bulk, which is what the limit
    law describes.
    """
    zs = np.asarray(sample, dtype=np.complex128).ravel()
    if zs.size < 2:
        raise EmptySample("need at least 2 samples for a scale estimate")
    return _mad_variance(zs.real), _mad_variance(zs.imag)


def robust_corr(sample) -> float:
    """Re/Im correlation from median-based scales.

    Uses cov(x, y) = (var(x + y) - var(x - y)) / 4 with the MAD variance
    standing in for each term, so outlier trials cannot dominate.
    """
    zs = np.asarray(sample, dtype=np.complex128).ravel()
    if zs.size < 2:
        raise EmptySample("need at least 2 samples for a scale estimate")
    var_re = _mad_variance(zs.real)
    var_im = _mad_variance(zs.imag)
    denom = var_re * var_im
    if not denom > 0:
        return 0.0
    cov = 0.25 * (_mad_variance(zs.real + zs.imag) - _mad_variance(zs.real - zs.imag))
    return cov / math.sqrt(denom)


def coverage_miss_rate(criticals, centers, radii) -> float:
    """Fraction of critical points landing outside their confidence disks.

    Trials without a usable critical point (non-finite entries) count as
    misses: the disk failed to cover whatever the trial produced.
    """
    crit = np.asarray(criticals, dtype=np.complex128).ravel()
    cent = np.asarray(centers, dtype=np.complex128).ravel()
    rad = np.asarray(radii, dtype=np.float64).ravel()
    if not (crit.size == cent.size == rad.size):
        raise LengthMismatch("criticals, centers, radii must have equal length")
    if crit.size == 0:
        raise EmptySample("no trials to score")
    with np.errstate(invalid="ignore"):
        hits = np.abs(crit - cent) <= rad
    return float(1.0 - np.mean(hits))


def nearest_zero_law(
    zeros_per_trial, u0: complex, p_at_u0: float, r_grid
) -> list[tuple[float, float, float]]:
    """Empirical vs limiting law of the rescaled distance to the closest zero.

    For each r: the fraction of trials with sqrt(n) min_k |xi_k - u0| <= r,
    against 1 - exp(-p(u0) pi r^2).
    """
    if not p_at_u0 > 0:
        raise ZeroDensity("density must be positive at u0")
    if len(zeros_per_trial) == 0:
        raise EmptySample("no trials")
    scaled = np.array(
        [
            math.sqrt(len(zs)) * float(np.min(np.abs(np.asarray(zs) - u0)))
            for zs in zeros_per_trial
        ]
    )
    out = []
    for r in r_grid:
        r = float(r)
        empirical = float(np.mean(scaled <= r))
        theoretical = -math.expm1(-p_at_u0 * math.pi * r * r)
        out.append((r, empirical, theoretical))
    return out


def disk_uniformity(points) -> tuple[float, float, float]:
    """How close a planar sample is to uniform on the unit disk.

    Returns (radial_ks, angular_chi2, frac_inside): KS of the moduli against
    min(r^2, 1), Pearson chi-square of the angles over 16 equal sectors, and
    the fraction of points with modulus <= 1.
    """
    zs = np.asarray(points, dtype=np.complex128).ravel()
    if zs.size == 0:
        raise EmptySample("no points")
    radii = np.abs(zs)
    radial_ks = ks_distance(radii, lambda r: np.minimum(r * r, 1.0))
    sectors = np.floor(
        (np.angle(zs) + math.pi) / (2.0 * math.pi) * 16.0
    ).astype(int)
    sectors = np.clip(sectors, 0, 15)
    counts = np.bincount(sectors, minlength=16).astype(float)
    expected = zs.size / 16.0
    angular_chi2 = float(np.sum((counts - expected) ** 2 / expected))
    frac_inside = float(np.mean(radii <= 1.0))
    return radial_ks, angular_chi2, frac_inside
