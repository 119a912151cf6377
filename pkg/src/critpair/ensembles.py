"""Seeded samplers for the three random polynomial models.

Models: i.i.d. zeros drawn from a planar density (uniform disk, standard
complex Gaussian, or any radial law given as a CDF table), Weyl polynomials
with random coefficients c_k = X_k n^{k/2}/sqrt(k!), and characteristic
polynomials of scaled Ginibre matrices whose zeros are eigenvalues / sqrt(n).

Every sampler consumes a fixed number of uniforms per draw (two per complex
scalar, in declaration order), so a stream is a pure function of its seed and
re-running any trial in isolation reproduces it bitwise.  Weyl coefficients
span a dynamic range of order e^{n/2} and are therefore assembled in log
space before a single power-of-two normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rootfind
from .cdf_table import RadialCdfTable
from .errors import BadCdfTable, ConfigError
from .poly import CoeffFormPoly, RootFormPoly
from .rng import SeededRng

KINDS = ("iid", "weyl", "ginibre")
DENSITIES = ("uniform_disk", "gaussian", "radial")
COEFF_LAWS = ("complex_normal", "real_normal")

# Radial sampling interpolates between table rows; a sparse table would
# visibly quantize the law, so short tables are rejected outright.
MIN_SAMPLING_ROWS = 256


@dataclass(frozen=True)
class EnsembleSpec:
    """Which model to draw, at which degree, from which zero density."""

    kind: str
    n: int
    density: str = "uniform_disk"
    table: RadialCdfTable | None = None
    coeff_law: str = "complex_normal"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown ensemble kind {self.kind!r}")
        if self.n < 1:
            raise ConfigError("ensemble degree n must be >= 1")
        if self.density not in DENSITIES:
            raise ConfigError(f"unknown density {self.density!r}")
        if self.density == "radial" and self.table is None:
            raise ConfigError("radial density requires a cdf table")
        if self.coeff_law not in COEFF_LAWS:
            raise ConfigError(f"unknown coefficient law {self.coeff_law!r}")


def disk_point(u1: float, u2: float) -> complex:
    """Uniform-disk transform: radius sqrt(u1), angle 2 pi u2."""
    r = math.sqrt(u1)
    a = 2.0 * math.pi * u2
    return complex(r * math.cos(a), r * math.sin(a))


def complex_normal_from_uniforms(u1, u2, variance: float):
    """Box-Muller in polar form: N_C(0, variance), components N(0, variance/2)."""
    if variance < 0:
        raise ValueError("variance must be nonnegative")
    if variance == 0.0:
        return np.zeros_like(np.asarray(u1)) * 1j if np.ndim(u1) else 0.0 + 0.0j
    r = np.sqrt(-variance * np.log1p(-np.asarray(u1)))
    a = 2.0 * np.pi * np.asarray(u2)
    return r * np.exp(1j * a)


def sample_uniform_disk(rng: SeededRng) -> complex:
    u = rng.uniforms(2)
    return disk_point(u[0], u[1])


def sample_complex_normal(rng: SeededRng, variance: float) -> complex:
    u = rng.uniforms(2)
    return complex(complex_normal_from_uniforms(u[0], u[1], variance))


def _complex_normal_block(rng: SeededRng, count: int, variance: float) -> np.ndarray:
    u = rng.uniforms(2 * count)
    return np.asarray(
        complex_normal_from_uniforms(u[0::2], u[1::2], variance),
        dtype=np.complex128,
    )


def _real_normal_block(rng: SeededRng, count: int) -> np.ndarray:
    # one real N(0,1) per pair of uniforms keeps stream accounting uniform
    u = rng.uniforms(2 * count)
    r = np.sqrt(-2.0 * np.log1p(-u[0::2]))
    return r * np.cos(2.0 * np.pi * u[1::2])


def sample_iid_zero_poly(spec: EnsembleSpec, rng: SeededRng) -> RootFormPoly:
    """n i.i.d. zeros from the spec's density."""
    if spec.kind != "iid":
        raise ConfigError("sample_iid_zero_poly requires kind='iid'")
    n = spec.n
    u = rng.uniforms(2 * n)
    u1, u2 = u[0::2], u[1::2]
    if spec.density == "uniform_disk":
        zeros = np.sqrt(u1) * np.exp(2j * np.pi * u2)
    elif spec.density == "gaussian":
        zeros = np.asarray(complex_normal_from_uniforms(u1, u2, 1.0))
    else:
        table = spec.table
        if table.rows < MIN_SAMPLING_ROWS:
            raise BadCdfTable(
                f"radial sampling needs >= {MIN_SAMPLING_ROWS} table rows, "
                f"got {table.rows}"
            )
        radii = table.inverse(u1)
        zeros = radii * np.exp(2j * np.pi * u2)
    return RootFormPoly(zeros.astype(np.complex128))


def sample_weyl_poly(spec: EnsembleSpec, rng: SeededRng) -> CoeffFormPoly:
    """Weyl polynomial of degree n: coefficients X_k n^{k/2}/sqrt(k!).

    Log-space assembly: log|c_k| = log|X_k| + (k/2) log n - (1/2) log k!,
    with log k! accumulated exactly; one power-of-two scale exponent brings
    the maximum modulus into [1, 2).
    """
    if spec.kind != "weyl":
        raise ConfigError("sample_weyl_poly requires kind='weyl'")
    n = spec.n
    if spec.coeff_law == "complex_normal":
        x = _complex_normal_block(rng, n + 1, 1.0)
    else:
        x = _real_normal_block(rng, n + 1).astype(np.complex128)
    k = np.arange(n + 1, dtype=np.float64)
    log_fact = np.concatenate([[0.0], np.cumsum(np.log(np.arange(1, n + 1)))])
    shape_log = 0.5 * k * math.log(n) - 0.5 * log_fact
    mag = np.abs(x)
    with np.errstate(divide="ignore"):
        log_c = np.where(mag > 0, np.log(mag) + shape_log, -np.inf)
    top = float(np.max(log_c))
    scale_exp = math.floor(top / math.log(2.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        phase = np.where(mag > 0, x / np.where(mag > 0, mag, 1.0), 0.0)
    coeffs = phase * np.exp(log_c - scale_exp * math.log(2.0))
    return CoeffFormPoly(coeffs, scale_exp)


def ginibre_zeros_from_matrix(a: np.ndarray) -> RootFormPoly:
    """Zeros of det(A - z sqrt(n) I): the eigenvalues of A divided by sqrt(n)."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    eigs = rootfind.eigen_qr(a)
    return RootFormPoly(eigs / math.sqrt(n))


def sample_ginibre_zeros(spec: EnsembleSpec, rng: SeededRng) -> RootFormPoly:
    """Zeros of the characteristic polynomial of a Ginibre matrix.

    Entries are i.i.d. standard complex normals drawn row-major; the circular
    law puts the zeros (eigenvalues / sqrt(n)) asymptotically uniform on the
    unit disk.
    """
    if spec.kind != "ginibre":
        raise ConfigError("sample_ginibre_zeros requires kind='ginibre'")
    if spec.n > 1024:
        raise ConfigError("ginibre ensemble capped at n = 1024")
    n = spec.n
    if spec.coeff_law == "complex_normal":
        entries = _complex_normal_block(rng, n * n, 1.0)
    else:
        entries = _real_normal_block(rng, n * n).astype(np.complex128)
    return ginibre_zeros_from_matrix(entries.reshape(n, n))


def weyl_zeros(
    spec: EnsembleSpec, rng: SeededRng, max_degree: int = 200
) -> RootFormPoly:
    """Zeros of a sampled Weyl polynomial via coefficient-form Aberth.

    Coefficient root finding of these polynomials is ill-conditioned at
    large degree, hence the explicit cap (a config knob upstream).
    """
    if spec.n > max_degree:
        raise ConfigError(
            f"weyl zero extraction capped at degree {max_degree}, got n={spec.n}"
        )
    p = sample_weyl_poly(spec, rng)
    report = rootfind.aberth_roots_coeffs(p)
    return RootFormPoly(report.points)
