"""One-sample t-test layer: Bayes factor, quadratic regions, non-existence."""

import math

import numpy as np
import pytest

from umpbt import (
    DomainError,
    TTestSetting,
    nonexistence_demo,
    t_log_bf,
    t_region,
    t_rejection_prob,
)

DEMO = TTestSetting(n=10, theta0=0.0, alpha_prior=0.0, beta_prior=0.0,
                    gamma=3.0, sigma_true=1.0)


class TestTLogBf:
    def test_null_theta_is_zero(self):
        setting = TTestSetting(n=10, gamma=3.0)
        for y in (-2.0, 0.0, 3.7):
            assert t_log_bf(y, 0.0, 9.0, setting) == 0.0

    def test_value_at_y_equal_theta(self):
        setting = TTestSetting(n=10, gamma=3.0)
        theta, u_stat = 1.3, 9.0
        at_theta = t_log_bf(theta, theta, u_stat, setting)
        expected = (10 / 2) * math.log(1.0 + 10 * theta**2 / u_stat)
        assert at_theta == pytest.approx(expected, rel=1e-12)

    def test_maximal_where_offset_product_equals_scale(self):
        """The log Bayes factor peaks in y where (y - theta0)(y - theta) = U/n,
        i.e. slightly beyond theta on the far side from the null."""
        setting = TTestSetting(n=10, gamma=3.0)
        theta, u_stat = 1.3, 9.0
        y_star = 0.5 * (theta + math.sqrt(theta**2 + 4.0 * u_stat / 10))
        peak = t_log_bf(y_star, theta, u_stat, setting)
        for y in np.linspace(-4.0, 8.0, 81):
            assert t_log_bf(float(y), theta, u_stat, setting) <= peak + 1e-12
        assert peak > t_log_bf(theta, theta, u_stat, setting)

    def test_against_marginal_density_ratio(self):
        # the inverse-gamma prefactors cancel in the ratio of marginals
        setting = TTestSetting(n=10, gamma=3.0)
        n, y, theta, u_stat = 10, 0.5, 1.0, 9.0
        kernel = lambda t: (u_stat + n * (y - t) ** 2) ** (-(n / 2))
        oracle = math.log(kernel(theta) / kernel(0.0))
        assert t_log_bf(y, theta, u_stat, setting) == pytest.approx(oracle, rel=1e-12)

    def test_requires_positive_scale(self):
        with pytest.raises(DomainError):
            t_log_bf(0.5, 1.0, 0.0, DEMO)


class TestTRegion:
    def test_zero_discriminant_collapses(self):
        setting = TTestSetting(n=2, theta0=0.0, gamma=2.0)  # gamma_n = 2
        region = t_region(1.0, 4.0, setting)                # U/n = 2
        assert not region.empty
        assert region.lower == pytest.approx(2.0, abs=1e-12)
        assert region.upper == pytest.approx(2.0, abs=1e-12)

    def test_negative_discriminant_is_empty_value(self):
        setting = TTestSetting(n=2, theta0=0.0, gamma=2.0)
        region = t_region(0.5, 40.0, setting)
        assert region.empty
        assert math.isnan(region.lower) and math.isnan(region.upper)

    def test_membership_and_endpoints(self):
        setting = TTestSetting(n=10, gamma=3.0)
        theta, u_stat = 1.5, 9.0
        region = t_region(theta, u_stat, setting)
        assert not region.empty
        log_gamma = math.log(setting.gamma)
        inner = np.linspace(region.lower + 1e-6, region.upper - 1e-6, 25)
        for y in inner:
            assert t_log_bf(float(y), theta, u_stat, setting) > log_gamma
        for endpoint in (region.lower, region.upper):
            assert abs(t_log_bf(endpoint, theta, u_stat, setting) - log_gamma) <= 1e-9

    def test_regions_are_not_nested(self):
        """Two alternatives on the same side produce incomparable regions."""
        setting = TTestSetting(n=2, theta0=0.0, gamma=1.5)  # gamma_n = 1.5
        u_stat = 0.2                                        # U/n = 0.1
        r1 = t_region(1.0, u_stat, setting)
        r3 = t_region(3.0, u_stat, setting)
        nested_12 = r1.lower >= r3.lower and r1.upper <= r3.upper
        nested_21 = r3.lower >= r1.lower and r3.upper <= r1.upper
        assert not nested_12 and not nested_21

    def test_region_matches_bayes_factor_indicator(self):
        rng = np.random.default_rng(17)
        setting = TTestSetting(n=8, theta0=0.3, gamma=4.0)
        log_gamma = math.log(setting.gamma)
        for _ in range(200):
            theta = float(rng.uniform(-4.0, 4.0))
            if theta == setting.theta0:
                continue
            u_stat = float(rng.uniform(0.2, 30.0))
            y = float(rng.uniform(-8.0, 8.0))
            region = t_region(theta, u_stat, setting)
            if region.empty:
                inside = False
            else:
                if min(abs(y - region.lower), abs(y - region.upper)) < 1e-9:
                    continue
                inside = region.lower < y < region.upper
            assert inside == (t_log_bf(y, theta, u_stat, setting) > log_gamma)

    def test_upper_endpoint_grows_and_lower_endpoint_dips(self):
        """For theta above the null, b grows without bound while a bottoms out
        at theta0 + sqrt(U (gamma_n - 1) / n), attained at that same theta."""
        setting = TTestSetting(n=10, gamma=3.0)
        u_stat = 9.0
        g = setting.gamma_n
        theta_dip = setting.theta0 + math.sqrt(u_stat * (g - 1.0) / setting.n)
        thetas = np.linspace(theta_dip * 0.55, theta_dip * 6.0, 400)
        regions = [t_region(float(t), u_stat, setting) for t in thetas]
        assert all(not r.empty for r in regions)
        uppers = np.array([r.upper for r in regions])
        lowers = np.array([r.lower for r in regions])
        assert np.all(np.diff(uppers) > 0)
        step = float(thetas[1] - thetas[0])
        dip_region = t_region(theta_dip, u_stat, setting)
        assert dip_region.lower == pytest.approx(theta_dip, rel=1e-12)
        assert np.all(lowers >= dip_region.lower - 1e-12)
        assert abs(thetas[int(np.argmin(lowers))] - theta_dip) <= step

    def test_mirrored_for_lower_side(self):
        setting = TTestSetting(n=10, gamma=3.0)
        u_stat = 9.0
        g = setting.gamma_n
        theta_peak = setting.theta0 - math.sqrt(u_stat * (g - 1.0) / setting.n)
        peak_region = t_region(theta_peak, u_stat, setting)
        assert peak_region.upper == pytest.approx(theta_peak, rel=1e-12)
        thetas = np.linspace(theta_peak * 6.0, theta_peak * 0.55, 400)
        uppers = [t_region(float(t), u_stat, setting).upper for t in thetas]
        assert np.all(np.array(uppers) <= peak_region.upper + 1e-12)


class TestTRejectionProb:
    def test_remote_alternative_never_rejects(self):
        assert t_rejection_prob(50.0, 0.0, DEMO, 100_000, seed=3) < 0.01

    def test_sign_symmetry(self):
        p_pos = t_rejection_prob(1.5, 2.0, DEMO, 50_000, seed=5)
        p_neg = t_rejection_prob(-1.5, -2.0, DEMO, 50_000, seed=5)
        envelope = 4.0 * math.sqrt(2.0 * 0.5 * 0.5 / 50_000)
        assert abs(p_pos - p_neg) <= envelope

    def test_nearby_alternative_beats_remote_one(self):
        p_near = t_rejection_prob(2.0, 2.0, DEMO, 100_000, seed=3)
        p_far = t_rejection_prob(10.0, 2.0, DEMO, 100_000, seed=3)
        assert p_near > 0.5
        assert p_near > p_far

    def test_validation(self):
        with pytest.raises(DomainError):
            t_rejection_prob(1.0, 0.0, DEMO, 0, seed=1)


class TestNonexistenceDemo:
    def test_distinct_argmaxes_flag_non_existence(self):
        report = nonexistence_demo(DEMO, [2.0, 4.0], 30_000, seed=42)
        assert report.nonexistence
        a2, a4 = report.rows[0].argmax_theta, report.rows[1].argmax_theta
        assert a2 < a4
        assert 0.0 < a2 < 2.0
        assert 0.0 < a4 < 4.0
        assert abs(a4 - a2) > report.refine_tol

    def test_identical_data_generating_means_agree(self):
        report = nonexistence_demo(DEMO, [2.0, 2.0], 20_000, seed=9)
        assert report.rows[0].argmax_theta == report.rows[1].argmax_theta
        assert not report.nonexistence

    def test_deterministic_given_seed(self):
        first = nonexistence_demo(DEMO, [2.0, 4.0], 20_000, seed=31)
        second = nonexistence_demo(DEMO, [2.0, 4.0], 20_000, seed=31)
        assert first.rows == second.rows

    def test_plateau_bounds_bracket_argmax(self):
        report = nonexistence_demo(DEMO, [2.0, 4.0], 30_000, seed=42)
        for row in report.rows:
            assert row.plateau_lo <= row.argmax_theta <= row.plateau_hi
            assert 0.0 <= row.max_prob <= 1.0

    def test_needs_two_means(self):
        with pytest.raises(DomainError):
            nonexistence_demo(DEMO, [2.0], 1000, seed=1)


class TestTTestSetting:
    def test_validation(self):
        with pytest.raises(DomainError):
            TTestSetting(n=1, gamma=3.0)
        with pytest.raises(DomainError):
            TTestSetting(n=10, gamma=1.0)
        with pytest.raises(DomainError):
            TTestSetting(n=10, gamma=3.0, sigma_true=0.0)
        with pytest.raises(DomainError):
            TTestSetting(n=10, gamma=3.0, alpha_prior=-1.0)

    def test_gamma_n_exceeds_one(self):
        setting = TTestSetting(n=10, gamma=3.0, alpha_prior=0.5)
        assert setting.gamma_n == 3.0 ** (2.0 / 11.0)
        assert setting.gamma_n > 1.0
