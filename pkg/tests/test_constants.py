"""Closed-form constants against independent oracles.

Reference values were computed separately at 30+ significant digits from the
defining series/integrals (partial sums with explicit remainder control) and
are frozen below.  Anchors shared with the classical N = 1 theory (geometric
and harmonic digit means, Lévy exponent, Loch-type constant) agree with the
published classical digits.  Live oracles used here: adaptive quadrature for
the density normalization and the dilogarithm, scipy's Spence function for
the dilogarithm, and raw partial sums with two-sided tail bounds for the
digit means.
"""

import math
import random

import numpy as np
import pytest
from scipy import integrate
from scipy.special import spence

from ncfrac import (
    ConstantsReport,
    cdf,
    density,
    dilog_theta,
    frequency,
    holder_mean,
    khinchin,
    lambda_asymptotic,
    levy_L,
    levy_lambda,
    loch,
    lower_bounds,
    lyapunov_const,
)

# frozen 30-digit references (see module docstring)
K_GEOMETRIC = {
    1: 2.685452001065306445,   # classical value
    2: 5.412651679209027614,
    3: 8.136460059488264131,
    5: 13.578959171884308169,
    10: 27.175974248133229584,
}
K_HARMONIC_1 = 1.745405662407346863  # classical value
K_HOLDER = {
    (100, -1.0): 199.667229016297922599,
    (100, 0.5): 400.664622820882225126,
    (1, 0.5): 4.533095114977819974,
    (2, -1.0): 3.704751334824942075,
}
LAMBDA = {
    1: 1.186569110415625453,
    2: 1.105925511114570315,
    3: 1.074217534148243616,
    5: 1.046503447714429145,
    10: 1.024079856209573343,
}
THETA_HALF = 0.448414206923646202
FREQ_RATIO_5_7 = 1.788813717119151804


class TestDensity:
    def test_classical_endpoints(self):
        assert density(1, 0.0) == pytest.approx(1 / math.log(2), abs=1e-15)
        assert density(1, 1.0 - 1e-15) == pytest.approx(1 / (2 * math.log(2)), abs=1e-12)

    def test_normalization_by_quadrature(self):
        for N in range(1, 21):
            total, err = integrate.quad(lambda x: density(N, x), 0, 1)
            assert err < 1e-12
            assert total == pytest.approx(1.0, abs=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            density(1, 1.0)
        with pytest.raises(ValueError):
            density(1, -0.1)


class TestCdf:
    def test_endpoints(self):
        for N in (1, 4, 9):
            assert cdf(N, 0.0) == 0.0
            assert cdf(N, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_self_consistency_spot(self):
        t, N = 0.37, 3
        lhs = cdf(N, 1 + t)
        rhs = cdf(N, t) + cdf(N, N / (N + t))
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_self_consistency_random(self):
        rng = random.Random(2024)
        for _ in range(200):
            N = rng.randint(1, 10)
            t = rng.uniform(0, 10)
            assert cdf(N, 1 + t) == pytest.approx(cdf(N, t) + cdf(N, N / (N + t)), abs=1e-12)

    def test_preimage_interval_sum_recovers_cdf(self):
        # mass of (0, alpha) equals the summed masses of its branch preimages
        K = 100_000
        for N in (1, 3, 7):
            for alpha in (0.25, 0.5, 0.9):
                k = np.arange(N, K + 1, dtype=np.float64)
                terms = np.log1p(1.0 / k) - np.log1p(1.0 / (k + alpha))
                partial = float(terms.sum()) / math.log1p(1.0 / N)
                tail = math.log1p(alpha / (K + 1)) / math.log1p(1.0 / N)
                assert partial + tail == pytest.approx(cdf(N, alpha), abs=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            cdf(2, -0.5)


class TestFrequency:
    def test_classical_digit_frequencies(self):
        assert frequency(1, 1) == pytest.approx(2 - math.log(3) / math.log(2), abs=1e-15)
        assert frequency(1, 2) == pytest.approx(0.169925001442312363, abs=1e-15)

    def test_sum_to_one_with_tail(self):
        K = 1_000_000
        for N in (1, 2, 10):
            total = sum(frequency(N, M) for M in range(N, 2000))
            tail = math.log1p(1.0 / 2000) / math.log1p(1.0 / N)
            assert total + tail == pytest.approx(1.0, abs=1e-12)

    def test_ratio_independent_of_index(self):
        values = [frequency(N, 5) / frequency(N, 7) for N in (1, 2, 3, 4, 5)]
        for v in values:
            assert v == pytest.approx(FREQ_RATIO_5_7, abs=1e-14)
            assert v == pytest.approx(values[0], abs=1e-14)

    def test_impossible_digit_rejected(self):
        with pytest.raises(ValueError):
            frequency(3, 2)


class TestKhinchinMean:
    def test_frozen_references(self):
        for N, expected in K_GEOMETRIC.items():
            assert khinchin(N) == pytest.approx(expected, abs=1e-12)

    def test_brute_force_sandwich(self):
        # the raw defining series, partial sums plus the crude integral tail
        # bound (log K + 1)/K, must bracket the reported log-value
        for N in (1, 2, 5):
            K = 2_000_000
            k = np.arange(N, K + 1, dtype=np.float64)
            partial = float(np.sum(np.log(k) * np.log1p(1.0 / (k * (k + 2)))))
            tail_bound = (math.log(K) + 1.0) / K
            log_value = math.log(khinchin(N)) * math.log1p(1.0 / N)
            assert partial < log_value <= partial + tail_bound

    def test_scales_like_e_times_n(self):
        assert khinchin(1000) / 1000 == pytest.approx(math.e, rel=2e-3)

    def test_tol_validation(self):
        with pytest.raises(ValueError):
            khinchin(1, tol=0.0)


class TestHolderMean:
    def test_frozen_references(self):
        assert holder_mean(1, -1.0) == pytest.approx(K_HARMONIC_1, abs=1e-12)
        for (N, r), expected in K_HOLDER.items():
            assert holder_mean(N, r) == pytest.approx(expected, rel=1e-12)

    def test_divergent_orders_signal_infinity(self):
        for N in (1, 2, 5):
            for r in (1.0, 1.5, 2.0):
                assert math.isinf(holder_mean(N, r))

    def test_order_zero_dispatches_to_geometric(self):
        assert holder_mean(3, 0.0) == khinchin(3)

    def test_continuity_at_order_zero(self):
        for N in (1, 4):
            below = holder_mean(N, -1e-4)
            above = holder_mean(N, 1e-4)
            assert below == pytest.approx(khinchin(N), abs=1e-4 * khinchin(N))
            assert above == pytest.approx(khinchin(N), abs=1e-4 * khinchin(N))

    def test_brute_force_sandwich(self):
        # partial sums of k**r * log(1+1/(k(k+2))) bracket the series with the
        # crude tail bound K**(r-1)/(1-r)
        N, r = 2, 0.5
        K = 2_000_000
        k = np.arange(N, K + 1, dtype=np.float64)
        partial = float(np.sum(k**r * np.log1p(1.0 / (k * (k + 2)))))
        tail_bound = K ** (r - 1.0) / (1.0 - r)
        series = holder_mean(N, r) ** r * math.log1p(1.0 / N)
        assert partial < series <= partial + tail_bound

    def test_large_index_limit_laws(self):
        assert holder_mean(100, -1.0) / 100 == pytest.approx(2.0, rel=0.01)
        assert holder_mean(100, 0.5) / 100 == pytest.approx(4.0, rel=0.02)


class TestDilog:
    def test_endpoint_values(self):
        assert dilog_theta(0.0) == 0.0
        assert dilog_theta(1.0) == pytest.approx(math.pi**2 / 12, abs=1e-15)

    def test_half_against_quadrature(self):
        numeric, err = integrate.quad(lambda t: math.log1p(t) / t, 0, 0.5)
        assert err < 1e-12
        assert dilog_theta(0.5) == pytest.approx(numeric, abs=1e-10)
        assert dilog_theta(0.5) == pytest.approx(THETA_HALF, abs=1e-14)

    def test_against_spence(self):
        # Theta(x) = -Li2(-x) and scipy's spence(z) is Li2(1-z)
        for x in (0.1, 0.3, 0.5, 0.8, 0.97):
            assert dilog_theta(x) == pytest.approx(-float(spence(1.0 + x)), abs=1e-13)

    def test_domain(self):
        with pytest.raises(ValueError):
            dilog_theta(1.5)
        with pytest.raises(ValueError):
            dilog_theta(-0.2)


class TestGrowthConstants:
    def test_frozen_lambda_values(self):
        for N, expected in LAMBDA.items():
            assert levy_lambda(N) == pytest.approx(expected, abs=1e-14)

    def test_classical_anchor(self):
        assert levy_lambda(1) == pytest.approx(math.pi**2 / (12 * math.log(2)), abs=1e-15)

    def test_strictly_decreasing(self):
        values = [levy_lambda(N) for N in range(1, 1001)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_limit_one(self):
        assert levy_lambda(10**6) == pytest.approx(1.0, abs=1e-6)

    def test_lyapunov_strictly_increasing(self):
        values = [lyapunov_const(N) for N in range(1, 1001)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_linked_formulas(self):
        for N in (1, 2, 7, 40):
            lam = levy_lambda(N)
            assert lyapunov_const(N) == 2 * lam + math.log(N)
            assert levy_L(N) == lam + math.log(N)
            assert loch(N) == math.log(10) / lyapunov_const(N)

    def test_classical_loch_constant(self):
        assert loch(1) == pytest.approx(0.970270114392033926, abs=1e-14)


class TestAsymptotic:
    def test_matches_series_at_moderate_index(self):
        # true gap is ~5.9e-9 at N=50 and ~6e-13 at N=500
        assert abs(lambda_asymptotic(50) - levy_lambda(50)) < 1e-8
        assert abs(lambda_asymptotic(500) - levy_lambda(500)) < 1e-12

    def test_poor_at_small_index_but_same_ballpark(self):
        assert lambda_asymptotic(1) == pytest.approx(levy_lambda(1), abs=0.05)

    def test_limit(self):
        assert lambda_asymptotic(10**9) == pytest.approx(1.0, abs=1e-9)


class TestLowerBounds:
    def test_classical_values(self):
        lyap, denom = lower_bounds(1)
        phi = (1 + math.sqrt(5)) / 2
        assert lyap == pytest.approx(2 * math.log(phi), abs=1e-15)
        assert denom == pytest.approx(math.log(phi), abs=1e-15)

    def test_formula_at_four(self):
        lyap, denom = lower_bounds(4)
        assert lyap == pytest.approx(2 * math.log((math.sqrt(8) + 2) / 2), abs=1e-15)
        assert denom == pytest.approx(math.log((math.sqrt(32) + 4) / 2), abs=1e-15)

    def test_algebraic_identity(self):
        for N in range(1, 101):
            lyap, denom = lower_bounds(N)
            assert abs(2 * denom - math.log(N) - lyap) < 1e-12


class TestConstantsReport:
    def test_internal_consistency(self):
        report = ConstantsReport.compute(2, rs=(-1.0, 0.5, 1.0))
        assert report.lyapunov == 2 * report.levy_lambda + math.log(2)
        assert report.levy_L == report.levy_lambda + math.log(2)
        assert report.loch == math.log(10) / report.lyapunov
        assert report.khinchin == pytest.approx(K_GEOMETRIC[2], abs=1e-12)

    def test_divergent_entries_serialized_as_text(self):
        record = ConstantsReport.compute(1, rs=(0.5, 1.0)).to_record()
        assert record["holder_mean[r=1]"] == "divergent"
        assert isinstance(record["holder_mean[r=0.5]"], float)

    def test_diagnostics_present(self):
        report = ConstantsReport.compute(3, rs=(-1.0,), tol=1e-10)
        terms, bound = report.diagnostics["khinchin"]
        assert terms > 0
        assert 0 <= bound <= 1e-10
        assert "holder[r=-1]" in report.diagnostics

    def test_record_keys_stable(self):
        record = ConstantsReport.compute(1).to_record()
        for key in (
            "N", "khinchin", "levy_lambda", "levy_L", "lyapunov", "loch",
            "lower_bound_lyapunov", "lower_bound_denominator",
        ):
            assert key in record
