import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from conftest import CHIS, DELTAS, SHIFTED_EXP, SIGMAS
from rounded_moments import (
    DistributionSpec,
    Family,
    InvalidTruncation,
    Method,
    RoundingSpec,
    asymptotic_correction,
    averaged_moments,
    correction_terms,
    oracle_moments,
    rounded_moments,
)
from rounded_moments.closed_forms import laplace_avg_variance, laplace_exact
from rounded_moments.distributions import LAPLACE_EXPANSION, AsymptoticExpansion
from rounded_moments.errors import DomainError
from rounded_moments.series import chi_and_M, normal_tail_bounds
from rounded_moments.special import riemann_zeta


def spec_at(family, sigma, chi, delta=0.0, M=0):
    return DistributionSpec(family, M + delta + chi, sigma)


class TestChiAndM:
    @given(st.floats(-50, 50), st.sampled_from([-0.5, 0.0, 0.37, 0.5]))
    def test_range_and_reconstruction(self, mu, delta):
        chi, M = chi_and_M(mu, delta)
        assert -0.5 <= chi < 0.5 + 1e-12
        assert M + delta + chi == pytest.approx(mu, abs=1e-12)


class TestSigmaZeroLimits:
    @pytest.mark.parametrize("family", ["normal", "laplace", "uniform"])
    def test_large_K_approaches_limits(self, family):
        ct = correction_terms(spec_at(family, 0.0, 0.3), 0.0, K=100_000)
        assert ct.S0 == pytest.approx(-0.3, abs=1e-4)
        assert ct.S1 == pytest.approx(1 / 12 - 0.09, abs=1e-4)

    def test_default_gives_limits(self):
        ct = correction_terms(spec_at("laplace", 0.0, -0.2), 0.0)
        assert (ct.S0, ct.S1) == pytest.approx((0.2, 1 / 12 - 0.04))

    def test_point_mass_moments(self):
        rm = rounded_moments(DistributionSpec("normal", 0.25, 0.0), RoundingSpec())
        assert (rm.m, rm.s2) == (0.0, 0.0)

    def test_averaged(self):
        am = averaged_moments(DistributionSpec("uniform", 0.3, 0.0), RoundingSpec())
        assert am.avg_S0sq == pytest.approx(riemann_zeta(2) / (2 * math.pi ** 2))
        assert am.avg_S0sq == pytest.approx(1 / 12)
        assert am.avg_s2 == 0.0


class TestNormal:
    @pytest.mark.parametrize("chi", CHIS)
    def test_three_terms_within_bound(self, chi):
        ct = correction_terms(spec_at("normal", 1.0, chi), 0.0, K=3)
        assert abs(ct.S0) <= (1 + 1 / (2 * math.pi) ** 2) * math.exp(-2 * math.pi ** 2) / math.pi

    def test_quoted_moments(self):
        rm = rounded_moments(DistributionSpec("normal", 0.3, 2.0), RoundingSpec(), K=5)
        assert rm.m == pytest.approx(0.3, abs=1e-15)
        assert rm.s2 == pytest.approx(4 + 1 / 12, abs=1e-14)
        assert rm.method is Method.SERIES

    @pytest.mark.parametrize("sigma", [0.02, 0.05, 0.2, 1.0])
    def test_tail_bounds_cover_remaining_terms(self, sigma):
        K = 3
        t0, t1 = normal_tail_bounds(sigma, K)
        ct_short = correction_terms(spec_at("normal", sigma, 0.21), 0.0, K=K)
        ct_long = correction_terms(spec_at("normal", sigma, 0.21), 0.0, K=400)
        assert abs(ct_long.S0 - ct_short.S0) <= t0 + 1e-300
        assert abs(ct_long.S1 - ct_short.S1) <= t1 + 1e-300

    def test_averaged_bound(self):
        am = averaged_moments(DistributionSpec("normal", 0.0, 1.0), RoundingSpec())
        assert am.avg_S0sq <= (0.5 + 1 / (4 * math.pi) ** 2) * math.exp(-(2 * math.pi) ** 2) / math.pi ** 2
        assert am.avg_S0sq == pytest.approx(math.exp(-4 * math.pi ** 2) / (2 * math.pi ** 2), rel=1e-12)


class TestLaplace:
    def test_S0_against_closed_form(self):
        ct = correction_terms(spec_at("laplace", 1.0, 0.3), 0.0, K=200)
        s = math.sqrt(2)
        exact = math.sinh(s * 0.3) / (2 * math.sinh(1 / s)) - 0.3
        # K = 200 truncation: first dropped term ~ 2/(2 pi 201)^2 / (pi 201)
        assert ct.S0 == pytest.approx(exact, abs=1e-8)
        assert ct.tail_S0 >= abs(ct.S0 - exact)

    def test_S0_adaptive_against_closed_form(self):
        ct = correction_terms(spec_at("laplace", 1.0, 0.3), 0.0)
        assert ct.S0 == pytest.approx(laplace_exact(1.0, 0.3)[0], abs=1e-12)

    def test_against_oracle_at_K300(self):
        spec = DistributionSpec("laplace", 0.8, 1.0)
        rm = rounded_moments(spec, RoundingSpec(), K=300)
        ref = oracle_moments(spec, RoundingSpec())
        assert rm.m == pytest.approx(ref.m, abs=1e-9)
        assert rm.s2 == pytest.approx(ref.s2, abs=1e-9)

    def test_chi_average_by_trapezoid(self):
        spec = DistributionSpec("laplace", 0.0, 1.0)
        r = RoundingSpec()
        chis = np.linspace(-0.5, 0.5, 201)
        s2 = [rounded_moments(spec.with_params(mu=c), r).s2 for c in chis]
        trap = integrate.trapezoid(s2, chis)
        am = averaged_moments(spec, r)
        assert am.avg_s2 == pytest.approx(trap, abs=1e-6)
        assert am.avg_s2 == pytest.approx(laplace_avg_variance(1.0), abs=1e-12)


class TestGridProperties:
    @pytest.mark.parametrize("family", ["normal", "laplace", "uniform"])
    @pytest.mark.parametrize("sigma", SIGMAS)
    def test_parity_in_chi(self, family, sigma):
        for chi in (0.1, 0.25, 0.3, 0.45):
            a = correction_terms(spec_at(family, sigma, chi), 0.0)
            b = correction_terms(spec_at(family, sigma, -chi), 0.0)
            tol = 1e-12 + 2 * max(a.tail_bound, b.tail_bound)
            assert a.S0 == pytest.approx(-b.S0, abs=tol)
            assert a.S1 == pytest.approx(b.S1, abs=tol)

    @pytest.mark.parametrize("family", ["normal", "laplace", "uniform"])
    @pytest.mark.parametrize("delta", DELTAS)
    def test_averaged_variance_range(self, family, delta):
        for sigma in SIGMAS:
            am = averaged_moments(DistributionSpec(family, 0.4, sigma), RoundingSpec(delta=delta))
            assert 0.0 <= am.avg_s2 <= sigma ** 2 + 1 / 12
            assert am.avg_m == pytest.approx(0.4 - delta)

    @pytest.mark.parametrize("family", ["normal", "laplace", "uniform"])
    def test_physical_units(self, family):
        a = rounded_moments(DistributionSpec(family, 0.9, 1.3), RoundingSpec(w=0.25, delta=-0.2))
        b = rounded_moments(DistributionSpec(family, 3.6, 5.2), RoundingSpec(w=1.0, delta=-0.2))
        assert a.m * 4 == pytest.approx(b.m, abs=1e-12)
        assert a.s2 * 16 == pytest.approx(b.s2, abs=1e-10)


class TestAsymmetricCustom:
    @pytest.mark.parametrize("sigma", [0.6, 1.0, 2.5])
    @pytest.mark.parametrize("mu", [-0.3, 0.2, 0.49])
    def test_against_oracle(self, sigma, mu):
        spec = DistributionSpec(Family.CUSTOM, mu, sigma, SHIFTED_EXP)
        rm = rounded_moments(spec, RoundingSpec(delta=0.1))
        ref = oracle_moments(spec, RoundingSpec(delta=0.1))
        tol = max(1e-9, 5 * rm.tail_bound)
        assert rm.m == pytest.approx(ref.m, abs=tol)
        assert rm.s2 == pytest.approx(ref.s2, abs=tol)


class TestTruncationArgument:
    @pytest.mark.parametrize("K", [0, -1, 2.5])
    def test_rejected(self, K):
        with pytest.raises(InvalidTruncation):
            correction_terms(spec_at("laplace", 1.0, 0.1), 0.0, K=K)
        with pytest.raises(InvalidTruncation):
            averaged_moments(DistributionSpec("laplace", 0.0, 1.0), RoundingSpec(), K=K)

    def test_tail_bound_nonnegative(self):
        for fam in ("normal", "laplace", "uniform"):
            ct = correction_terms(spec_at(fam, 0.8, 0.2), 0.0, K=7)
            assert ct.tail_bound >= 0 and ct.K == 7


class TestAsymptoticCorrection:
    def test_leading_order_laplace(self):
        S0, _ = asymptotic_correction(AsymptoticExpansion(2, [2]), 5.0, 0.3, 0, 1000)
        exact = laplace_exact(5.0, 0.3)[0]
        assert abs(S0 - exact) < 0.02 * abs(exact)

    def test_higher_orders_improve(self):
        exact = laplace_exact(3.0, 0.2)
        errs = [abs(asymptotic_correction(LAPLACE_EXPANSION, 3.0, 0.2, P, 5000)[1] - exact[1]) for P in range(4)]
        assert all(a > b for a, b in zip(errs, errs[1:]))

    def test_zero_offset(self):
        assert asymptotic_correction(LAPLACE_EXPANSION, 2.0, 0.0, 3, 17)[0] == 0.0

    @pytest.mark.parametrize("chi", CHIS)
    def test_inner_sum_bound(self, chi):
        s = 2
        k = np.arange(1, 100_001)
        inner = abs(np.sum((-1.0) ** k * np.sin(2 * math.pi * k * chi) / (math.pi * k) ** (s + 1)))
        assert inner <= riemann_zeta(s + 1) / math.pi ** (s + 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            asymptotic_correction(LAPLACE_EXPANSION, 0.0, 0.1, 1, 10)


@given(st.floats(0.3, 4.0), st.floats(-0.49, 0.49))
@settings(max_examples=30, deadline=None)
def test_laplace_series_matches_closed_form(sigma, chi):
    ct = correction_terms(spec_at("laplace", sigma, chi), 0.0)
    S0, S1, _ = laplace_exact(sigma, chi)
    assert ct.S0 == pytest.approx(S0, abs=1e-11)
    assert ct.S1 == pytest.approx(S1, abs=1e-11)
