"""Polynomial forms, log-space evaluation, and the pinned summation order."""

import math

import numpy as np
import pytest

from critpair import (
    CoeffFormPoly,
    ConstantPoly,
    DegreeTooLarge,
    PoleHit,
    RootFormPoly,
    differentiate_coeffs,
    expand_from_roots,
    horner_eval,
)
from critpair.poly import (
    eval_from_roots,
    indexed_sum,
    log_derivative,
    log_derivative_prime,
    normalized_coeffs,
)


def test_eval_symmetric_pair_at_origin():
    # p(z) = (z-1)(z+1), p(0) = -1: modulus 1, phase -1
    lm, phase = eval_from_roots(RootFormPoly([1.0, -1.0]), 0.0)
    assert lm == 0.0
    assert phase == pytest.approx(-1.0 + 0.0j, abs=1e-15)


def test_eval_single_zero():
    lm, phase = eval_from_roots(RootFormPoly([0.0]), 2.0)
    assert lm == pytest.approx(math.log(2.0), abs=0.0)
    assert phase == 1.0 + 0.0j


def test_eval_huge_multiplicity_stays_finite():
    # z^1000 at z = 10 overflows any naive product; log form is exact
    lm, phase = eval_from_roots(RootFormPoly(np.zeros(1000)), 10.0)
    assert lm == pytest.approx(1000.0 * math.log(10.0), rel=1e-15)
    assert phase == 1.0 + 0.0j


def test_eval_on_a_zero():
    lm, phase = eval_from_roots(RootFormPoly([0.5, 1.5]), 0.5)
    assert lm == float("-inf")
    assert phase == 1.0 + 0.0j


def test_log_derivative_values():
    assert log_derivative(RootFormPoly([1.0, -1.0]), 0.0) == 0.0
    # 1/3 + 1/2 + 1/1
    got = log_derivative(RootFormPoly([0.0, 1.0, 2.0]), 3.0)
    assert got == pytest.approx(11.0 / 6.0, rel=1e-15)
    with pytest.raises(PoleHit):
        log_derivative(RootFormPoly([0.5]), 0.5)


def test_log_derivative_prime_values():
    assert log_derivative_prime(RootFormPoly([1.0, -1.0]), 0.0) == -2.0
    assert log_derivative_prime(RootFormPoly([0.0]), 2.0) == -0.25
    got = log_derivative_prime(RootFormPoly([0.0, 4.0]), 2.0)
    assert got == pytest.approx(-0.5, rel=1e-15)


def _descale(p: CoeffFormPoly) -> np.ndarray:
    return p.coeffs * 2.0**p.scale_exp


def test_expand_simple_products():
    p = expand_from_roots(RootFormPoly([1.0, -1.0]))
    np.testing.assert_allclose(_descale(p), [-1.0, 0.0, 1.0], atol=0.0)
    q = expand_from_roots(RootFormPoly([0.0, 0.0]))
    np.testing.assert_allclose(_descale(q), [0.0, 0.0, 1.0], atol=0.0)


def test_expand_cubic_hand_oracle():
    # (z-1)(z-2)(z-3) = z^3 - 6 z^2 + 11 z - 6, expanded by hand
    p = expand_from_roots(RootFormPoly([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(_descale(p), [-6.0, 11.0, -6.0, 1.0], rtol=1e-14)
    m = float(np.max(np.abs(p.coeffs)))
    assert 0.5 <= m <= 2.0


def test_expand_degree_cap():
    with pytest.raises(DegreeTooLarge):
        expand_from_roots(RootFormPoly(np.arange(70) * (1.0 + 0.0j)))


def test_differentiate():
    d = differentiate_coeffs(CoeffFormPoly(np.array([-1.0, 0.0, 1.0])))
    np.testing.assert_allclose(d.coeffs * 2.0**d.scale_exp, [0.0, 2.0])
    d2 = differentiate_coeffs(CoeffFormPoly(np.array([-6.0, 11.0, -6.0, 1.0])))
    got = d2.coeffs * 2.0**d2.scale_exp
    np.testing.assert_allclose(got, [11.0, -12.0, 3.0], rtol=1e-14)
    with pytest.raises(ConstantPoly):
        differentiate_coeffs(CoeffFormPoly(np.array([5.0])))


def test_horner_small_values():
    p = CoeffFormPoly(np.array([-1.0, 0.0, 1.0]))
    v, e = horner_eval(p, 2.0)
    assert v == 3.0 and e == 0
    v1, _ = horner_eval(p, 1.0)
    assert v1 == 0.0


def test_horner_geometric_series():
    # sum_{k=0}^{200} 2^k = 2^201 - 1, comfortably inside double range
    p = CoeffFormPoly(np.ones(201))
    v, e = horner_eval(p, 2.0)
    target = math.ldexp(1.0, 201) - 1.0
    assert abs(v * math.ldexp(1.0, e) - target) <= 1e-12 * target


def test_horner_rescales_past_double_range():
    # all-ones degree 2000 at z = 3: log value = log((3^2001 - 1)/2),
    # about e^2198, far beyond double range, so the scale exponent must act
    p = CoeffFormPoly(np.ones(2001))
    v, e = horner_eval(p, 3.0)
    log_target = 2001.0 * math.log(3.0) + math.log1p(-(3.0**-2001.0)) - math.log(2.0)
    log_got = math.log(abs(v)) + e * math.log(2.0)
    assert e > 0
    assert abs(log_got - log_target) <= 1e-12 * abs(log_target)


def test_normalized_coeffs_window():
    p = normalized_coeffs(np.array([1e80, 2e80, 0.5e80]))
    m = float(np.max(np.abs(p.coeffs)))
    assert 0.5 <= m <= 2.0
    # the scaled pair still represents the same polynomial
    v, e = horner_eval(p, 1.5)
    direct = 1e80 + 2e80 * 1.5 + 0.5e80 * 1.5**2
    assert v * math.ldexp(1.0, e) == pytest.approx(direct, rel=1e-14)
    # small literal arrays pass through untouched
    q = normalized_coeffs(np.array([-1.0, 0.0, 1.0]))
    np.testing.assert_array_equal(q.coeffs, [-1.0, 0.0, 1.0])
    assert q.scale_exp == 0


def test_normalized_trims_trailing_zeros():
    p = normalized_coeffs(np.array([2.0, 1.0, 0.0, 0.0]))
    assert p.degree == 1


def test_indexed_sum_is_left_to_right():
    # catastrophic cancellation makes the order observable: left to right
    # the 1.0 is absorbed into 1e16 and lost; right to left it survives
    terms = np.array([1.0, 1e16, -1e16])
    acc = 0.0
    for t in terms:
        acc += t
    assert indexed_sum(terms) == acc
    assert indexed_sum(terms[::-1].copy()) != acc  # order genuinely matters


def test_coeff_form_rejects_zero_leading():
    with pytest.raises(ValueError):
        CoeffFormPoly(np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        RootFormPoly(np.array([1.0, np.inf]))
