import numpy as np
import pytest

from lognls.cutoffs import (
    ball_indicator,
    complex_cutoff,
    cutoff_on_grid,
    spatial_cutoff,
    spatial_cutoff_laplacian,
    spatial_cutoff_radial_derivative,
)
from lognls.grid import make_geometry


class TestSpatialCutoff:
    @pytest.mark.parametrize("R", [1.0, 4.0, 37.5])
    def test_plateau_and_support(self, R):
        assert spatial_cutoff(R / 4, R) == 1.0
        assert spatial_cutoff(2 * R, R) == 0.0
        assert spatial_cutoff(R / 2, R) == 1.0
        assert spatial_cutoff(R, R) == 0.0

    def test_midpoint_is_half(self):
        assert spatial_cutoff(0.75, 1.0) == pytest.approx(0.5, abs=1e-15)
        assert spatial_cutoff(7.5, 10.0) == pytest.approx(0.5, abs=1e-15)

    def test_range_and_monotone(self):
        rho = np.linspace(0, 3.0, 4001)
        values = spatial_cutoff(rho, 2.0)
        assert np.all((0.0 <= values) & (values <= 1.0))
        assert np.all(np.diff(values) <= 1e-15)

    def test_gradient_matches_finite_differences(self):
        R = 3.0
        rho = np.linspace(0.1, 3.5, 401)
        analytic = spatial_cutoff_radial_derivative(rho, R)
        errs = []
        for h in (1e-4, 5e-5):
            fd = (spatial_cutoff(rho + h, R) - spatial_cutoff(rho - h, R)) / (2 * h)
            errs.append(np.max(np.abs(fd - analytic)))
        assert errs[0] < 1e-6
        # central differences converge at second order
        assert errs[1] < errs[0] / 3.0

    def test_second_derivative_matches_finite_differences(self):
        R = 2.0
        rho = np.linspace(0.05, 2.5, 301)
        analytic = spatial_cutoff_laplacian(rho, R, d=1)
        h = 1e-4
        fd = (spatial_cutoff(rho + h, R) - 2 * spatial_cutoff(rho, R)
              + spatial_cutoff(rho - h, R)) / h**2
        assert np.max(np.abs(fd - analytic)) < 1e-4

    @pytest.mark.parametrize("R", [2.0, 8.0, 32.0])
    def test_derivative_sup_scaling(self, R):
        rho = np.linspace(0, 1.5 * R, 20001)
        assert np.max(np.abs(spatial_cutoff_radial_derivative(rho, R))) == pytest.approx(
            3.75 / R, rel=1e-6)
        lap = spatial_cutoff_laplacian(rho, R, d=1)
        assert np.max(np.abs(lap)) <= 24.0 / R**2

    @pytest.mark.parametrize("R", [4.0, 8.0, 16.0])
    def test_gradient_energy_closed_form(self, R):
        # int (phi_R')^2 dx = (4/R) int_0^1 q'(r)^2 dr = 40 / (7 R) in 1-D
        g = make_geometry(1, 128.0, 1 << 15)
        x = g.axis - g.L / 2
        d1 = spatial_cutoff_radial_derivative(x, R)
        quad = g.cell_volume * np.sum(d1**2)
        assert quad == pytest.approx(40.0 / (7.0 * R), rel=1e-6)

    @pytest.mark.parametrize("R", [4.0, 8.0, 16.0])
    def test_laplacian_energy_closed_form(self, R):
        # int (phi_R'')^2 dx = (16/R^3) int_0^1 q''(r)^2 dr = 1920 / (7 R^3) in 1-D
        g = make_geometry(1, 128.0, 1 << 15)
        x = g.axis - g.L / 2
        lap = spatial_cutoff_laplacian(x, R, d=1)
        quad = g.cell_volume * np.sum(lap**2)
        assert quad == pytest.approx(1920.0 / (7.0 * R**3), rel=1e-5)

    def test_rejects_bad_radius(self):
        with pytest.raises(ValueError):
            spatial_cutoff(1.0, 0.0)


class TestComplexCutoff:
    def test_values(self):
        assert complex_cutoff(0.3) == 1.0
        assert complex_cutoff(1.5) == 0.0
        assert complex_cutoff(0.75) == pytest.approx(0.5, abs=1e-15)
        assert complex_cutoff(0.3 + 0.4j) == 1.0  # |z| = 0.5

    def test_range(self):
        z = np.linspace(0, 2, 1001) * np.exp(0.3j)
        theta = complex_cutoff(z)
        assert np.all((0 <= theta) & (theta <= 1))


class TestGridCutoffs:
    def test_gradient_consistent_with_radial(self):
        g = make_geometry(2, 32.0, 128)
        R = 6.0
        phi, grad, lap = cutoff_on_grid(g, R)
        rho = g.radius()
        d1 = spatial_cutoff_radial_derivative(rho, R)
        magnitude = np.sqrt(grad[0] ** 2 + grad[1] ** 2)
        assert np.allclose(magnitude, np.abs(d1), atol=1e-12)
        assert np.allclose(phi, spatial_cutoff(rho, R))
        assert np.allclose(lap, spatial_cutoff_laplacian(rho, R, 2))

    def test_2d_laplacian_against_spectral(self):
        # smooth C^2 profile: spectral Laplacian of the sampled cutoff should
        # agree with the analytic one away from machine-level truncation
        from lognls.operators import TWO_PI

        g = make_geometry(2, 64.0, 256)
        phi, _, lap = cutoff_on_grid(g, 8.0)
        hat = np.fft.fftn(phi.astype(complex))
        lap_spec = np.fft.ifftn(-(TWO_PI**2) * g.xi_sq * hat).real
        # C^2 profile: spectral accuracy is only algebraic, so compare in L^2
        err = np.sqrt(np.mean((lap_spec - lap) ** 2))
        assert err < 5e-3 * np.max(np.abs(lap))

    def test_ball_indicator(self):
        g = make_geometry(1, 16.0, 64)
        chi = ball_indicator(g, 2.0)
        rho = g.radius()
        assert np.array_equal(chi == 1.0, rho <= 2.0)
        assert set(np.unique(chi)) <= {0.0, 1.0}
