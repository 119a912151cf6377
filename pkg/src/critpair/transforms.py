"""Cauchy-Stieltjes transforms f(z) = E[1/(z - xi)] of planar zero laws.

For a radially symmetric law the angular average collapses the transform to
f(z) = P[|xi| <= |z|] / z: only the mass inside radius |z| contributes, and
it acts as if concentrated at the origin.  Closed forms for the uniform disk
and the standard complex Gaussian, a table-backed version for arbitrary
radial laws, and a median-of-means Monte Carlo estimator used to cross-check
all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cdf_table import RadialCdfTable
from .errors import EmptySample, OutOfRange, PoleHit
from .rng import SeededRng

# Below this radius the Gaussian transform switches to its Taylor series;
# the direct formula loses all digits to cancellation as |z| -> 0.
_GAUSS_SERIES_RADIUS = 1e-6


def cst_uniform_disk(z: complex) -> complex:
    """Transform of the uniform law on the unit disk.

    conj(z) inside the disk, 1/z outside; the two branches agree on the
    boundary, so the function is continuous (though not holomorphic inside).
    """
    z = complex(z)
    if abs(z) <= 1.0:
        return z.conjugate()
    return 1.0 / z


def cst_gaussian(z: complex) -> complex:
    """Transform of the standard complex Gaussian: (1 - exp(-|z|^2)) / z."""
    z = complex(z)
    r2 = abs(z) ** 2
    if abs(z) < _GAUSS_SERIES_RADIUS:
        # (1 - e^{-r^2})/z = conj(z) (1 - r^2/2 + ...) for small |z|
        return z.conjugate() * (1.0 - 0.5 * r2)
    return -math.expm1(-r2) / z


def cst_radial(table: RadialCdfTable, z: complex) -> complex:
    """Transform of the radial law in the table: F(|z|) / z, and 0 at z = 0."""
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    return float(table.cdf_at(abs(z))) / z


def density_uniform_disk(z: complex) -> float:
    """Planar density of the uniform unit-disk law at z."""
    return 1.0 / math.pi if abs(z) <= 1.0 else 0.0


def density_gaussian(z: complex) -> float:
    """Planar density of the standard complex Gaussian at z."""
    return math.exp(-abs(z) ** 2) / math.pi


def empirical_cst(
    zeros: np.ndarray, z: complex, exclude_index: int | None = None
) -> complex:
    """Average of 1/(z - xi) over a finite zero set.

    With exclude_index set, that zero is left out and the average runs over
    the remaining n - 1 points (the form that appears when differentiating a
    root-form polynomial at one of its own zeros).
    """
    zeros = np.asarray(zeros, dtype=np.complex128)
    if exclude_index is not None:
        keep = np.ones(zeros.size, dtype=bool)
        keep[exclude_index] = False
        zeros = zeros[keep]
    if zeros.size == 0:
        raise EmptySample("empirical transform of an empty zero set")
    diffs = z - zeros
    if np.any(diffs == 0):
        raise PoleHit(f"evaluation point {z} coincides with a zero")
    return complex(np.mean(1.0 / diffs))


@dataclass(frozen=True)
class MonteCarloCst:
    """Median-of-means estimate of E[1/(z - xi)] with a robust spread."""

    estimate: complex
    spread: float
    batches: int
    per_batch: int


def cst_monte_carlo(
    sampler,
    z: complex,
    rng: SeededRng,
    batches: int = 32,
    per_batch: int = 10_000,
) -> MonteCarloCst:
    """Estimate the transform at z by median-of-means over i.i.d. samples.

    sampler(rng, count) must return `count` i.i.d. complex draws from the
    law.  Each of B batches of M samples yields a batch mean of 1/(z - xi);
    the estimate is the componentwise median of the batch means and the
    spread is the median absolute deviation |batch mean - estimate|.  Draws
    landing within 1e-12 of z are redrawn so no single sample can dominate
    a batch through a near-pole.
    """
    if batches < 8:
        raise OutOfRange("need at least 8 batches for a stable median")
    if per_batch < 100:
        raise OutOfRange("need at least 100 samples per batch")
    z = complex(z)
    means = np.empty(batches, dtype=np.complex128)
    for b in range(batches):
        draws = np.asarray(sampler(rng, per_batch), dtype=np.complex128)
        if draws.shape != (per_batch,):
            raise ValueError("sampler returned wrong shape")
        bad = np.abs(draws - z) < 1e-12
        while np.any(bad):
            fresh = np.asarray(sampler(rng, int(bad.sum())), dtype=np.complex128)
            draws[bad] = fresh
            bad = np.abs(draws - z) < 1e-12
        means[b] = np.mean(1.0 / (z - draws))
    est = complex(np.median(means.real), np.median(means.imag))
    spread = float(np.median(np.abs(means - est)))
    return MonteCarloCst(est, spread, batches, per_batch)


def log_lipschitz_ratio(transform, z: complex) -> float:
    """|f(z) - f(0)| / (|z| |log |z||) on the punctured half-disk 0<|z|<1/2.

    Gauges the modulus of continuity of a transform at the origin: ratios
    bounded over shrinking |z| certify log-Lipschitz behavior there.
    """
    z = complex(z)
    r = abs(z)
    if not (0.0 < r < 0.5):
        raise OutOfRange("ratio defined for 0 < |z| < 1/2 only")
    f0 = complex(transform(0.0 + 0.0j))
    fz = complex(transform(z))
    return abs(fz - f0) / (r * abs(math.log(r)))
