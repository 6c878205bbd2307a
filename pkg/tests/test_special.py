import math
from fractions import Fraction

import pytest
import scipy.integrate
import scipy.special
from hypothesis import given, strategies as st

from unimodal_ranks.special import (
    _bessel_i_asymptotic_scaled,
    _bessel_i_series,
    EULER_GAMMA,
    DomainError,
    RationalPolynomial,
    bernoulli_number,
    bernoulli_poly,
    bessel_i,
    bessel_i_scaled,
    digamma,
    digamma_const,
    euler_poly,
    logistic_cdf,
    logistic_pdf,
    zeta_value,
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def test_bernoulli_numbers():
    assert [bernoulli_number(k) for k in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0,
                                                       Fraction(1, 42)]
    assert bernoulli_number(12) == Fraction(-691, 2730)


def test_bernoulli_at_half():
    for k in range(1, 10):
        assert bernoulli_poly(2 * k)(Fraction(1, 2)) == (Fraction(2) ** (1 - 2 * k) - 1) * bernoulli_number(2 * k)
        assert (-1) ** k * bernoulli_poly(2 * k)(Fraction(1, 2)) > 0


@given(st.integers(1, 14), rationals)
def test_bernoulli_difference_and_reflection(n, x):
    B = bernoulli_poly(n)
    assert B(x + 1) - B(x) == n * x ** (n - 1)
    assert B(1 - x) == (-1) ** n * B(x)


@given(st.integers(0, 14), rationals)
def test_euler_identities(n, x):
    E = euler_poly(n)
    assert E(x + 1) + E(x) == 2 * x ** n
    assert E(1 - x) == (-1) ** n * E(x)


def test_euler_known_values():
    assert euler_poly(2) == RationalPolynomial([0, -1, 1])
    assert euler_poly(3)(0) == Fraction(1, 4)
    assert euler_poly(2)(Fraction(1, 2)) == Fraction(-1, 4)


def test_negative_index():
    with pytest.raises(DomainError):
        bernoulli_poly(-1)
    with pytest.raises(DomainError):
        euler_poly(-2)


def test_polynomial_arithmetic():
    p = RationalPolynomial([1, 2])
    q = RationalPolynomial([0, 0, 3])
    assert (p * q)(2) == p(2) * q(2)
    assert (p - p) == RationalPolynomial([])
    assert p.compose_linear(1, 2)(3) == p(7)
    assert p.antiderivative()(1) == 2


@pytest.mark.parametrize("k", range(2, 13))
def test_zeta(k):
    assert zeta_value(k) == pytest.approx(scipy.special.zeta(k), rel=1e-13)


def test_zeta_two():
    assert zeta_value(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    with pytest.raises(DomainError):
        zeta_value(1)


@pytest.mark.parametrize("a", [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), 1, 2.5, 17, Fraction(-1, 2)])
def test_digamma(a):
    assert digamma(a) == pytest.approx(scipy.special.digamma(float(a)), rel=1e-13, abs=1e-14)


def test_digamma_const():
    assert digamma_const(1) == pytest.approx(0, abs=1e-15)
    assert digamma_const(Fraction(1, 2)) == pytest.approx(2 * math.log(2), rel=1e-14)
    assert EULER_GAMMA == pytest.approx(0.5772156649015329)
    with pytest.raises(DomainError):
        digamma(0)
    with pytest.raises(DomainError):
        digamma(-3)


@pytest.mark.parametrize("j", [0, 1, 3, 4, 5])
@pytest.mark.parametrize("x", [0.5, 5.0, 29.9, 30.1, 60.0, 200.0])
def test_bessel_against_scipy(j, x):
    assert bessel_i_scaled(j, x) == pytest.approx(scipy.special.ive(j, x), rel=1e-12)


@given(st.integers(1, 6), st.floats(0.1, 120))
def test_bessel_recurrence(j, x):
    lhs = bessel_i_scaled(j - 1, x) - bessel_i_scaled(j + 1, x)
    assert lhs == pytest.approx(2 * j / x * bessel_i_scaled(j, x), rel=1e-10)


def test_bessel_seam_is_continuous():
    # both branches evaluated at the switch point agree to rounding
    for j in (0, 3, 4, 5):
        series = _bessel_i_series(j, 30.0) * math.exp(-30.0)
        assert _bessel_i_asymptotic_scaled(j, 30.0) == pytest.approx(series, rel=1e-14)
    assert bessel_i(3, 10.0) == pytest.approx(scipy.special.iv(3, 10.0), rel=1e-13)
    with pytest.raises(DomainError):
        bessel_i(3, 0.0)


def test_logistic_moments_by_quadrature():
    # E[X^k] = (2^k - 2)|B_k| for the logistic law of scale 1/pi
    for k in (2, 4, 6):
        val, _ = scipy.integrate.quad(lambda x: x ** k * logistic_pdf(x), -60, 60, limit=200)
        assert val == pytest.approx(float((2 ** k - 2) * abs(bernoulli_number(k))), rel=1e-9)
    total, _ = scipy.integrate.quad(logistic_pdf, -60, 60)
    assert total == pytest.approx(1)


@given(st.floats(-800, 800))
def test_logistic_cdf_symmetry(x):
    assert logistic_cdf(x) + logistic_cdf(-x) == pytest.approx(1, abs=1e-15)
    assert 0 <= logistic_cdf(x) <= 1
