"""Polynomial representations and overflow-safe evaluation.

Two representations coexist.  A root-form polynomial is just its zero list,
which is the natural object when zeros are sampled directly and keeps every
evaluation a product or sum over factors (z - zero_k).  A coefficient-form
polynomial carries ascending coefficients together with a power-of-two
scale exponent, so the stored float array represents

    2**scale_exp * sum_k coeffs[k] * z**k.

Scaling by a constant never moves a root, so all root-finding on either form
is free to renormalize.  Evaluation works in log/scaled space throughout: a
degree 10^6 root-form product neither overflows nor underflows, and Horner on
coefficient form rescales by 2**512 whenever the running value leaves
[2^-512, 2^512].

The log-derivative h(z) = p'(z)/p(z) = sum_k 1/(z - zero_k) is the workhorse
for everything downstream (critical points are the zeros of h away from the
poles).  Its summation order is fixed left to right in index order: the sums
are evaluated as a cumulative sum so reruns and thread counts cannot change
the result bitwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstantPoly, DegreeTooLarge, PoleHit

# Distance below which an evaluation point counts as sitting on a zero.
POLE_EPS = 1e-300

# Horner rescale bounds, powers of two.
_RESCALE_HI = 2.0**512
_RESCALE_LO = 2.0**-512


def _as_complex_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    return arr


@dataclass(frozen=True, eq=False)
class RootFormPoly:
    """Monic polynomial given by its zeros: p(z) = prod_k (z - zeros[k])."""

    zeros: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "zeros", _as_complex_array(self.zeros, "zeros"))

    @property
    def degree(self) -> int:
        return self.zeros.size


@dataclass(frozen=True, eq=False)
class CoeffFormPoly:
    """Ascending coefficients plus a power-of-two scale exponent."""

    coeffs: np.ndarray
    scale_exp: int = 0

    def __post_init__(self):
        arr = _as_complex_array(self.coeffs, "coeffs")
        if arr.size == 0:
            raise ValueError("coeffs must be nonempty")
        if arr[-1] == 0 and arr.size > 1:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1


def normalized_coeffs(coeffs, scale_exp: int = 0) -> CoeffFormPoly:
    """Build a CoeffFormPoly with max coefficient modulus in [1/2, 2].

    Trailing (highest-order) zero coefficients are trimmed first.  The array
    is left untouched when its maximum modulus already lies in [1/2, 2], so
    small hand-written polynomials keep their literal coefficients.
    """
    arr = _as_complex_array(coeffs, "coeffs")
    nz = np.nonzero(arr)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial has no coefficient form here")
    arr = arr[: nz[-1] + 1]
    m = float(np.max(np.abs(arr)))
    if not (0.5 <= m <= 2.0):
        # frexp: m = f * 2**e with f in [0.5, 1)
        _, e = math.frexp(m)
        arr = np.ldexp(arr.real, -e) + 1j * np.ldexp(arr.imag, -e)
        scale_exp += e
    return CoeffFormPoly(np.ascontiguousarray(arr), scale_exp)


def indexed_sum(terms: np.ndarray, axis: int = -1) -> np.ndarray:
    """Strict left-to-right sum along an axis (cumulative sum, last entry)."""
    return np.cumsum(terms, axis=axis).take(-1, axis=axis)


def eval_from_roots(p: RootFormPoly, z: complex) -> tuple[float, complex]:
    """Evaluate a root-form polynomial as (log_modulus, unit phase).

    p(z) = exp(log_modulus) * phase.  If z coincides with a zero the value is
    exactly 0 and the conventional pair (-inf, 1) is returned.  Accumulating
    log moduli keeps degree 10^6 products finite.
    """
    d = z - p.zeros
    a = np.abs(d)
    if a.size == 0:
        return 0.0, 1.0 + 0.0j
    if np.any(a == 0.0):
        return float("-inf"), 1.0 + 0.0j
    log_modulus = float(np.sum(np.log(a)))
    # summing arguments instead of multiplying d/|d| factors: the quotient
    # overflows inside complex division when |d| is subnormal
    theta = float(np.sum(np.angle(d)))
    return log_modulus, complex(math.cos(theta), math.sin(theta))


def log_derivative(p: RootFormPoly, z: complex) -> complex:
    """h(z) = p'(z)/p(z) = sum over zeros of 1/(z - zero), index order."""
    d = z - p.zeros
    if d.size == 0:
        return 0.0 + 0.0j
    if np.min(np.abs(d)) <= POLE_EPS:
        raise PoleHit(f"log-derivative evaluated within {POLE_EPS} of a zero")
    return complex(indexed_sum(1.0 / d))


def log_derivative_prime(p: RootFormPoly, z: complex) -> complex:
    """h'(z) = - sum over zeros of 1/(z - zero)^2."""
    d = z - p.zeros
    if d.size == 0:
        return 0.0 + 0.0j
    if np.min(np.abs(d)) <= POLE_EPS:
        raise PoleHit(f"log-derivative evaluated within {POLE_EPS} of a zero")
    return complex(-indexed_sum(1.0 / (d * d)))


def _row_chunk(n_cols: int) -> int:
    # keep each points-by-zeros block near 2M entries (about 32 MB complex)
    return max(1, 2_000_000 // max(1, n_cols))


def log_derivative_many(zeros: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """h at a batch of points.  Rows are points, summation in index order."""
    out = np.empty(zs.size, dtype=np.complex128)
    step = _row_chunk(zeros.size)
    for start in range(0, zs.size, step):
        stop = min(start + step, zs.size)
        d = zs[start:stop, None] - zeros[None, :]
        if np.min(np.abs(d)) <= POLE_EPS:
            raise PoleHit("batch log-derivative evaluated on a zero")
        out[start:stop] = indexed_sum(1.0 / d, axis=1)
    return out


def log_derivative_pair_many(
    zeros: np.ndarray, zs: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """h and h' at a batch of points in one pass over the factor matrix."""
    h = np.empty(zs.size, dtype=np.complex128)
    hp = np.empty(zs.size, dtype=np.complex128)
    step = _row_chunk(zeros.size)
    for start in range(0, zs.size, step):
        stop = min(start + step, zs.size)
        d = zs[start:stop, None] - zeros[None, :]
        if np.min(np.abs(d)) <= POLE_EPS:
            raise PoleHit("batch log-derivative evaluated on a zero")
        inv = 1.0 / d
        h[start:stop] = indexed_sum(inv, axis=1)
        hp[start:stop] = -indexed_sum(inv * inv, axis=1)
    return h, hp


def expand_from_roots(p: RootFormPoly, max_degree: int = 64) -> CoeffFormPoly:
    """Multiply out (z - zero_1)...(z - zero_m) into coefficient form.

    Guarded by an explicit degree cap: coefficient expansion is only used to
    feed the small companion-matrix oracle, and binomial growth makes large
    expansions meaningless in double precision.
    """
    if p.degree > max_degree:
        raise DegreeTooLarge(
            f"expansion capped at degree {max_degree}, got {p.degree}"
        )
    coeffs = np.ones(1, dtype=np.complex128)
    zero = np.zeros(1, dtype=np.complex128)
    for root in p.zeros:
        # multiply running polynomial by (z - root)
        coeffs = np.concatenate([zero, coeffs]) - root * np.concatenate(
            [coeffs, zero]
        )
    return normalized_coeffs(coeffs)


def differentiate_coeffs(p: CoeffFormPoly) -> CoeffFormPoly:
    """Formal derivative, renormalized onto the same scale convention."""
    if p.degree == 0:
        raise ConstantPoly("cannot differentiate a constant to a polynomial")
    k = np.arange(1, p.coeffs.size)
    return normalized_coeffs(p.coeffs[1:] * k, p.scale_exp)


def horner_eval(p: CoeffFormPoly, z: complex) -> tuple[complex, int]:
    """Evaluate coefficient form at one point as value * 2**scale_exp.

    The running Horner value is rescaled by 2**±512 whenever it leaves
    [2^-512, 2^512], so the returned mantissa is always finite and the pair
    represents p(z) exactly in scaled form.
    """
    v, _, e = horner_pair_many(p.coeffs, np.asarray([z], dtype=np.complex128))
    return complex(v[0]), int(e[0]) + p.scale_exp


def horner_pair_many(
    coeffs: np.ndarray, zs: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Horner values and derivatives at many points with shared rescaling.

    Returns (p_val, d_val, scale_exp) per point; the true values are
    p_val * 2**scale_exp and d_val * 2**scale_exp.  Both accumulators share
    one exponent per point, so the Newton ratio p/p' needs no descaling.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    n = zs.size
    acc = np.full(n, coeffs[-1], dtype=np.complex128)
    der = np.zeros(n, dtype=np.complex128)
    exp = np.zeros(n, dtype=np.int64)
    for k in range(coeffs.size - 2, -1, -1):
        der = der * zs + acc
        ck = coeffs[k]
        if ck == 0:
            acc = acc * zs
        else:
            with np.errstate(over="ignore", invalid="ignore"):
                # bring the coefficient onto each lane's current scale;
                # the factor overflows only when the lane's value is far
                # below the coefficient, in which case the lane restarts
                factor = np.ldexp(1.0, -exp)
                acc = acc * zs + ck * factor
            bad = ~np.isfinite(acc)
            if np.any(bad):
                acc[bad] = ck
                der[bad] = 0.0
                exp[bad] = 0
        mag = np.maximum(np.abs(acc), np.abs(der))
        hi = mag > _RESCALE_HI
        if np.any(hi):
            acc[hi] *= _RESCALE_LO
            der[hi] *= _RESCALE_LO
            exp[hi] += 512
        lo = (mag < _RESCALE_LO) & (mag > 0)
        if np.any(lo):
            acc[lo] *= _RESCALE_HI
            der[lo] *= _RESCALE_HI
            exp[lo] -= 512
    return acc, der, exp
