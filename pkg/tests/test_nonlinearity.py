import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lognls.nonlinearity import (
    IneqReport,
    NonlinearitySpec,
    ch_ratio,
    fit_log_growth_constants,
    g,
    g1_holder_ratio,
    g2_log_ratio,
    g_regularized,
    h,
    log_growth_bound_holds,
    split_g1_g2,
    sweep_ch,
    sweep_g1_constants,
    sweep_g2_constant,
)

complex_st = st.builds(
    complex,
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
)


class TestSpec:
    def test_defaults(self):
        spec = NonlinearitySpec()
        assert spec.reg_family == "exact" and spec.epsilon == 0.0

    def test_epsilon_zero_requires_exact(self):
        with pytest.raises(ValueError):
            NonlinearitySpec(reg_family="shifted_log", epsilon=0.0)
        with pytest.raises(ValueError):
            NonlinearitySpec(reg_family="exact", epsilon=1e-3)

    def test_alpha_positive(self):
        with pytest.raises(ValueError):
            NonlinearitySpec(alpha=-1.0)

    def test_alpha_dimension_check(self):
        NonlinearitySpec(alpha=100.0).validate_alpha(2)  # (d-2)_+ = 0: no ceiling


class TestPointwise:
    def test_g_special_values(self):
        assert g(0j, 1.0) == 0j
        assert g(1.0 + 0j, 1.0) == 0j
        assert g(np.exp(0.5), 1.0) == pytest.approx(np.exp(0.5))

    def test_g_lambda_scaling(self):
        z = 0.3 + 0.7j
        assert g(z, -2.5) == pytest.approx(-2.5 * z * np.log(abs(z) ** 2))

    def test_regularized_zero_and_exact(self):
        spec = NonlinearitySpec(reg_family="shifted_log", epsilon=1e-3)
        assert g_regularized(0j, spec) == 0j
        exact = NonlinearitySpec()
        z = 0.2 - 0.1j
        assert g_regularized(z, exact) == pytest.approx(g(z, 1.0))

    def test_floor_log_continuous_at_floor(self):
        eps = 1e-3
        spec = NonlinearitySpec(reg_family="floor_log", epsilon=eps)
        at = g_regularized(eps + 0j, spec)
        assert at == pytest.approx(eps * np.log(eps**2))
        above = g_regularized((eps * (1 + 1e-12)) + 0j, spec)
        below = g_regularized((eps * (1 - 1e-12)) + 0j, spec)
        assert abs(above - at) < 1e-9 * abs(at)
        assert abs(below - at) < 1e-9 * abs(at)

    def test_shifted_log_pointwise_error_bound(self):
        # |g_eps(z) - g(z)| = |lam| |z| log(1 + eps^2/|z|^2); the computed
        # left side carries log-cancellation noise ~ |lam| |z| ulp(log)
        rng = np.random.default_rng(0)
        z = np.exp(rng.uniform(-20, 3, 2000)) * np.exp(1j * rng.uniform(0, 2 * np.pi, 2000))
        for eps in (1e-2, 1e-5):
            spec = NonlinearitySpec(lam=1.3, reg_family="shifted_log", epsilon=eps)
            diff = np.abs(g_regularized(z, spec) - g(z, 1.3))
            bound = 1.3 * np.abs(z) * np.log1p(eps**2 / np.abs(z) ** 2)
            noise = 1e-13 * 1.3 * np.abs(z)
            assert np.all(diff <= bound * (1 + 1e-9) + noise + 1e-300)

    def test_split_support(self):
        g1, g2 = split_g1_g2(0.3 * np.exp(0.4j), 1.0)
        assert g2 == 0j and g1 != 0j
        g1, g2 = split_g1_g2(2.0 + 1.0j, 1.0)
        assert g1 == 0j and g2 != 0j

    @given(z=complex_st)
    @settings(max_examples=300, deadline=None)
    def test_split_sum_exact(self, z):
        g1, g2 = split_g1_g2(z, 0.7)
        total = g(z, 0.7)
        assert abs((g1 + g2) - total) <= 1e-15 * max(abs(total), 1.0)

    def test_h_values(self):
        assert h(0j, 1.0, 2.0) == 0j
        assert h(1.0 + 0j, -1.0, 2.0) == -1.0
        assert h(2j, 1.0, 1.0) == pytest.approx(4j)

    @given(z=complex_st, w=complex_st)
    @settings(max_examples=300, deadline=None)
    def test_h_lipschitz_on_bounded_sets(self, z, w):
        mu, alpha = -0.8, 1.5
        big = max(abs(z), abs(w))
        lhs = abs(h(z, mu, alpha) - h(w, mu, alpha))
        rhs = (alpha + 1) * abs(mu) * big**alpha * abs(z - w)
        assert lhs <= rhs * (1 + 1e-9) + 1e-300


class TestChRatio:
    def test_coincident_and_trivial(self):
        assert ch_ratio(0.3 + 0.2j, 0.3 + 0.2j) == 0.0
        assert ch_ratio(1.0 + 0j, 0j) == 0.0

    @given(z=complex_st, w=complex_st)
    @settings(max_examples=500, deadline=None)
    def test_never_exceeds_one(self, z, w):
        assert ch_ratio(z, w) <= 1.0 + 1e-12

    def test_sweep_has_no_violations(self):
        report = sweep_ch(100_000, seed=11)
        assert isinstance(report, IneqReport)
        assert report.violations == 0
        assert report.max_ratio <= 1.0 + 1e-12
        assert 0.3 < report.max_ratio  # the sweep does find nontrivial pairs

    def test_sweep_deterministic(self):
        a = sweep_ch(50_000, seed=4)
        b = sweep_ch(50_000, seed=4)
        assert a == b

    def test_report_json_shape(self):
        d = sweep_ch(10_000, seed=1).to_json_dict()
        assert set(d) == {"inequality", "delta", "samples", "max_ratio", "argmax", "violations"}
        assert len(d["argmax"]) == 4


class TestG1Holder:
    def test_vanishes_outside_disk(self):
        assert g1_holder_ratio(1.5 + 0j, 2.0 + 1j, 0.3) == 0.0

    def test_coincident_limit(self):
        # the ratio vanishes like |z-w|^delta as w -> z
        z = 0.2 + 0.1j
        assert g1_holder_ratio(z, z, 0.3) == 0.0
        assert g1_holder_ratio(z, z * (1 + 1e-12), 0.3) < 1e-3
        assert (g1_holder_ratio(z, z * (1 + 1e-18), 0.3)
                < g1_holder_ratio(z, z * (1 + 1e-9), 0.3))

    def test_constant_uniform_in_delta(self):
        deltas = (0.5, 0.1, 0.02, 0.005)
        reports = sweep_g1_constants(deltas, 200_000, seed=3)
        c1 = [reports[d].max_ratio for d in deltas]
        assert all(np.isfinite(c1))
        assert max(c1) / min(c1) < 2.0

    def test_antipodal_family_value(self):
        # z = -w = e^{-1/delta}: ratio = 2^{1+delta} / e, the extremal family
        delta = 0.1
        z = np.exp(-1.0 / delta)
        got = g1_holder_ratio(z + 0j, -z + 0j, delta)
        assert got == pytest.approx(2.0 ** (1 + delta) / np.e, rel=1e-12)


class TestG2LogRatio:
    def test_vanishes_on_small_moduli(self):
        assert g2_log_ratio(0.2 + 0.1j, 0.4j) == 0.0

    def test_sweep_finite(self):
        report = sweep_g2_constant(100_000, seed=7)
        assert np.isfinite(report.max_ratio)
        assert report.max_ratio > 0


class TestLogGrowthBound:
    def test_trivial_points(self):
        assert log_growth_bound_holds(0j, 0.5, 1.0, 2.0)
        assert log_growth_bound_holds(1.0 + 0j, 0.5, 1.0, 2.0)

    @pytest.mark.parametrize("delta", [0.5, 0.1, 0.02])
    def test_fitted_constants_validate_on_fresh_samples(self, delta):
        # 1e-6 headroom covers the sup-estimation gap of the finite fitting
        # cloud (measured ~5e-8 over 5M fresh samples)
        c1, c2 = fit_log_growth_constants(delta, 200_000, seed=0)
        rng = np.random.default_rng(123)
        moduli = np.exp(rng.uniform(np.log(1e-12), np.log(1e12), 200_000))
        z = moduli * np.exp(1j * rng.uniform(0, 2 * np.pi, 200_000))
        holds = log_growth_bound_holds(z, delta, c1 * (1 + 1e-6), c2)
        assert np.all(holds)

    def test_c2_matches_large_modulus_growth(self):
        _, c2 = fit_log_growth_constants(0.3, 10_000, seed=0, lam=1.0)
        assert c2 == pytest.approx(2.0, rel=1e-12)
