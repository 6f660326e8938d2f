import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, special as sp

from rounded_moments.errors import DomainError, UnsupportedOrder
from rounded_moments.special import (
    BERNOULLI_NUMBERS,
    bernoulli_fourier_partial,
    bernoulli_number,
    bernoulli_poly,
    exp_integral_E1,
    riemann_zeta,
    sinc_deriv_at_zero,
)


class TestBernoulli:
    def test_quoted_values(self):
        assert bernoulli_poly(2, 0.0) == pytest.approx(1 / 6, abs=1e-15)
        assert bernoulli_poly(3, 0.5) == pytest.approx(0.0, abs=1e-15)
        assert bernoulli_poly(4, 0.5) == pytest.approx(0.0625 - 1 / 30, abs=1e-15)

    @pytest.mark.parametrize("n", range(9))
    def test_matches_mpmath_polynomials(self, n):
        x = np.linspace(-1.0, 2.0, 31)
        expected = [float(mpmath.bernpoly(n, v)) for v in x]
        np.testing.assert_allclose(bernoulli_poly(n, x), expected, rtol=1e-13, atol=1e-14)

    def test_numbers_match_mpmath(self):
        for k in range(31):
            assert bernoulli_number(k) == pytest.approx(float(mpmath.bernoulli(k)), rel=1e-15, abs=0)
        assert BERNOULLI_NUMBERS[30].denominator == 14322

    @pytest.mark.parametrize("n", [-1, 9, 2.0])
    def test_order_rejected(self, n):
        with pytest.raises(UnsupportedOrder):
            bernoulli_poly(n, 0.3)

    @given(st.integers(1, 8), st.floats(-3, 3))
    def test_difference_identity(self, n, x):
        # B_n(x + 1) - B_n(x) = n x^(n-1)
        lhs = bernoulli_poly(n, x + 1.0) - bernoulli_poly(n, x)
        assert lhs == pytest.approx(n * x ** (n - 1), abs=1e-9 * (1 + abs(x)) ** n)


class TestZeta:
    def test_even_values(self):
        assert riemann_zeta(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
        assert riemann_zeta(4) == pytest.approx(math.pi ** 4 / 90, rel=1e-14)

    def test_large_argument_by_direct_sum(self):
        direct = math.fsum(k ** -30.0 for k in range(1, 4))
        assert riemann_zeta(30) == pytest.approx(direct, abs=1e-15)
        assert riemann_zeta(30) == pytest.approx(1.0000000009313, abs=1e-13)

    @pytest.mark.parametrize("z", [1.001, 1.1, 1.5, 2.5, 3.0, 5.0, 7.3, 13.0, 40.0])
    def test_against_mpmath(self, z):
        assert riemann_zeta(z) == pytest.approx(float(mpmath.zeta(z)), rel=1e-12)

    def test_decreasing_to_one(self):
        vals = [riemann_zeta(z) for z in (2, 3, 4, 6, 8)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert riemann_zeta(60) - 1.0 < 1e-17

    @pytest.mark.parametrize("z", [1.0, 0.5, -2.0])
    def test_domain(self, z):
        with pytest.raises(DomainError):
            riemann_zeta(z)


class TestE1:
    def test_quadrature_value(self):
        ref, _ = integrate.quad(lambda t: math.exp(-t) / t, 1.0, np.inf, epsabs=1e-14, epsrel=1e-14)
        assert exp_integral_E1(1.0) == pytest.approx(ref, rel=1e-12)
        assert exp_integral_E1(1.0) == pytest.approx(0.219384, abs=1e-6)

    @pytest.mark.parametrize("x", [1e-8, 1e-3, 0.3, 0.999, 1.0, 1.001, 2.0, 7.5, 30.0, 200.0, 700.0])
    def test_against_scipy(self, x):
        assert exp_integral_E1(x) == pytest.approx(sp.exp1(x), rel=1e-12)

    @pytest.mark.parametrize("x", [1.0, 5.0, 20.0, 2 * math.pi ** 2])
    def test_upper_bound(self, x):
        assert exp_integral_E1(x) < math.exp(-x) / x

    def test_bound_at_two_pi_squared(self):
        x = 2 * math.pi ** 2
        assert math.exp(-x) / x == pytest.approx(1.36e-10, rel=0.01)

    @pytest.mark.parametrize("x", [100.0, 300.0, 700.0])
    def test_asymptotic_ratio(self, x):
        assert abs(x * math.exp(x) * exp_integral_E1(x) - 1.0) < 0.01

    @pytest.mark.parametrize("x", [0.0, -1.0])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            exp_integral_E1(x)


class TestSincDerivatives:
    def test_quoted_constants(self):
        assert sinc_deriv_at_zero(2, 0) == pytest.approx(-1 / 12)
        assert sinc_deriv_at_zero(1, 1) == pytest.approx(-1 / (2 * math.pi))
        assert sinc_deriv_at_zero(0, 3) == 0.0

    @pytest.mark.parametrize("k", [-3, -1, 0, 1, 2, 5])
    @pytest.mark.parametrize("order", [0, 1, 2])
    def test_finite_difference(self, order, k):
        def f(t):
            return np.sinc((t / 2 + math.pi * k) / math.pi)
        h = 1e-4
        numeric = {0: f(0.0),
                   1: (f(h) - f(-h)) / (2 * h),
                   2: (f(h) - 2 * f(0.0) + f(-h)) / h ** 2}[order]
        assert sinc_deriv_at_zero(order, k) == pytest.approx(numeric, abs=1e-7)

    def test_bad_order(self):
        with pytest.raises(UnsupportedOrder):
            sinc_deriv_at_zero(3, 0)


def fourier_tail_bound(kind, n, K):
    # integral test on sum_{k>K} (pi k)^-p times the series prefactor
    p = 2 * n if kind == "even" else 2 * n + 1
    pref = math.factorial(p) / 2.0 ** (p - 1)
    return pref / (math.pi ** p * (p - 1) * K ** (p - 1))


class TestBernoulliFourier:
    def test_quoted_examples(self):
        assert bernoulli_fourier_partial("even", 2, 0.5, 10_000) == pytest.approx(0.0625 - 1 / 30, abs=1e-10)
        assert abs(bernoulli_fourier_partial("odd", 1, 0.0, 10_000)) < 1e-9
        assert bernoulli_fourier_partial("even", 1, 0.0, 1_000_000) == pytest.approx(1 / 6, abs=1e-6)

    @pytest.mark.parametrize("kind", ["even", "odd"])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_converges_within_tail_bound(self, kind, n):
        order = 2 * n if kind == "even" else 2 * n + 1
        for K in (10, 100, 1000):
            bound = fourier_tail_bound(kind, n, K)
            for x in np.linspace(0.0, 1.0, 11):
                err = abs(bernoulli_fourier_partial(kind, n, x, K) - bernoulli_poly(order, x))
                assert err <= bound * (1 + 1e-9) + 1e-14

    def test_domain(self):
        with pytest.raises(DomainError):
            bernoulli_fourier_partial("even", 1, 1.5, 10)
        with pytest.raises(DomainError):
            bernoulli_fourier_partial("even", 0, 0.5, 10)
        with pytest.raises(DomainError):
            bernoulli_fourier_partial("cosine", 1, 0.5, 10)
