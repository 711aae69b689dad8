"""
Unit tests for uniform-grid calculus and initial profiles.
"""

import numpy as np
import pytest
from unittest.mock import Mock

from error_handling import InvalidInputError, ZeroMassViolationError
from grid.grid_core import (
    antiderivative,
    check_decay,
    grid_function_digest,
    l2_norm,
    mass_residual,
    mass_tolerance,
    mean_zero_antiderivative,
    norm_report,
    sobolev_norm,
    spectral_derivative,
    spectral_interpolate,
    x_norm,
)
from grid.initial_profiles import build_profile, gaussian_derivative, single_mode, wave_packet
from models.data_models import Grid, GridFunction
from output_formatter import write_grid_function_csv


@pytest.fixture
def grid():
    return Grid(half_width=20.0, n_points=1024)


class TestGrid:
    """Tests for the Grid model."""

    def test_spacing_and_points(self, grid):
        """Samples start at -L with spacing 2L/N."""
        assert grid.spacing == pytest.approx(40.0 / 1024)
        assert grid.y[0] == -20.0
        assert grid.y[-1] == pytest.approx(20.0 - grid.spacing)
        assert grid.wavenumbers[1] == pytest.approx(np.pi / 20.0)

    def test_validate_rejects_small_grids(self):
        """Fewer than eight points or non-positive L are rejected."""
        assert not Grid(half_width=1.0, n_points=4).validate()
        assert not Grid(half_width=-1.0, n_points=64).validate()
        assert Grid(half_width=1.0, n_points=8).validate()

    def test_sample_arrays_are_read_only(self, grid):
        """Grid and function samples cannot be modified in place."""
        f = GridFunction.zeros(grid)
        with pytest.raises(ValueError):
            f.values[0] = 1.0
        with pytest.raises(ValueError):
            grid.y[0] = 0.0


class TestSpectralDerivative:
    """Tests for Fourier differentiation."""

    def test_single_mode_derivatives(self, grid):
        """Derivatives of sin(k y) are exact to round-off."""
        k = 3 * np.pi / grid.half_width
        f = GridFunction.from_callable(grid, lambda y: np.sin(k * y))
        first = spectral_derivative(f, 1).values
        second = spectral_derivative(f, 2).values
        assert np.max(np.abs(first - k * np.cos(k * grid.y))) < 1e-10
        assert np.max(np.abs(second + k * k * np.sin(k * grid.y))) < 1e-10

    def test_order_zero_is_identity(self, grid):
        """Order 0 returns the samples."""
        f = single_mode(grid, 0.5, 2)
        assert np.array_equal(spectral_derivative(f, 0).values, f.values)

    def test_negative_order_rejected(self, grid):
        """Negative orders raise InvalidInputError."""
        with pytest.raises(InvalidInputError):
            spectral_derivative(single_mode(grid, 1.0), -1)


class TestSobolevNorm:
    """Tests for Sobolev norms."""

    def test_single_mode_norms(self, grid):
        """|sin(ky)|_{H^s}^2 = (1 + k^2)^s L on [-L, L)."""
        k = 2 * np.pi / grid.half_width
        f = single_mode(grid, 1.0, 2)
        for s in (0.0, 1.0, 2.0):
            expected = np.sqrt((1 + k * k) ** s * grid.half_width)
            assert sobolev_norm(f, s) == pytest.approx(expected, rel=1e-12)

    def test_l2_matches_rectangle_rule(self, grid):
        """H^0 equals the rectangle-rule L^2 norm."""
        f = gaussian_derivative(grid, 0.3)
        assert sobolev_norm(f, 0.0) == pytest.approx(l2_norm(f), rel=1e-12)

    def test_invalid_order(self, grid):
        """Negative or infinite s raise InvalidInputError."""
        f = single_mode(grid, 1.0)
        with pytest.raises(InvalidInputError):
            sobolev_norm(f, -1.0)
        with pytest.raises(InvalidInputError):
            sobolev_norm(f, np.inf)

    def test_non_finite_samples(self, grid):
        """NaN samples raise InvalidInputError."""
        values = np.zeros(grid.n_points)
        values[3] = np.nan
        with pytest.raises(InvalidInputError):
            sobolev_norm(GridFunction(grid=grid, values=values), 0.0)


class TestAntiderivative:
    """Tests for the antiderivative operators."""

    def test_gaussian_derivative_recovers_gaussian(self, grid):
        """p = -int_y^inf q reproduces A exp(-y^2)."""
        q = gaussian_derivative(grid, 0.7)
        p = antiderivative(q)
        assert np.max(np.abs(p.values - 0.7 * np.exp(-grid.y ** 2))) < 1e-10

    def test_derivative_of_antiderivative(self, grid):
        """p_y = q."""
        q = wave_packet(grid, 0.4)
        p = antiderivative(q)
        assert np.max(np.abs(spectral_derivative(p, 1).values - q.values)) < 1e-10

    def test_mean_zero_antiderivative_has_zero_mean(self, grid):
        """The spectral antiderivative drops the k = 0 mode."""
        p = mean_zero_antiderivative(gaussian_derivative(grid, 1.0))
        assert abs(np.mean(p.values)) < 1e-15

    def test_mass_violation(self, grid):
        """A Gaussian has mass sqrt(pi) and no antiderivative."""
        q = GridFunction.from_callable(grid, lambda y: np.exp(-y ** 2))
        with pytest.raises(ZeroMassViolationError) as exc_info:
            antiderivative(q)
        assert exc_info.value.residual == pytest.approx(np.sqrt(np.pi), rel=1e-10)

    def test_decay_warning(self, grid):
        """Non-decaying data triggers a logged warning but no error."""
        logger = Mock()
        antiderivative(single_mode(grid, 0.5, 1), logger=logger)
        logger.log_warning.assert_called_once()

    def test_decaying_data_no_warning(self, grid):
        """Decaying data logs nothing."""
        logger = Mock()
        antiderivative(gaussian_derivative(grid, 0.5), logger=logger)
        logger.log_warning.assert_not_called()


class TestMassAndDecay:
    """Tests for mass residual, tolerances and the decay guard."""

    def test_odd_profiles_have_zero_mass(self, grid):
        """Synthetic profiles are mean-free to round-off."""
        for q in (gaussian_derivative(grid, 1.0), single_mode(grid, 1.0, 3), wave_packet(grid, 1.0)):
            assert abs(mass_residual(q)) <= mass_tolerance(q)

    def test_tolerance_scales_with_norm(self, grid):
        """Default tolerance 1e-8 |q| sqrt(2L)."""
        q = gaussian_derivative(grid, 2.0)
        assert mass_tolerance(q) == pytest.approx(1e-8 * l2_norm(q) * np.sqrt(40.0))

    def test_zero_function_decay_ratio(self, grid):
        """The zero function passes the decay guard."""
        assert check_decay(GridFunction.zeros(grid)) == 0.0

    def test_decay_ratio_of_mode(self, grid):
        """A periodic mode fails the guard."""
        assert check_decay(single_mode(grid, 1.0)) > 1e-3


class TestInterpolation:
    """Tests for trigonometric interpolation."""

    def test_reproduces_samples(self, grid):
        """At grid points the interpolant equals the samples."""
        f = wave_packet(grid, 1.0)
        assert np.max(np.abs(spectral_interpolate(f, grid.y[::7]) - f.values[::7])) < 1e-12

    def test_band_limited_midpoints(self, grid):
        """Between samples the interpolant is exact for resolved modes."""
        k = 5 * np.pi / grid.half_width
        f = GridFunction.from_callable(grid, lambda y: np.cos(k * y))
        midpoints = grid.y[:-1] + 0.5 * grid.spacing
        assert np.max(np.abs(spectral_interpolate(f, midpoints) - np.cos(k * midpoints))) < 1e-12


class TestNorms:
    """Tests for the X^s norm and norm reports."""

    def test_x_norm_definition(self, grid):
        """|q|_{X^1} = |q|_{H^1} + |p|_{L^2}."""
        q = gaussian_derivative(grid, 0.3)
        expected = sobolev_norm(q, 1.0) + sobolev_norm(antiderivative(q), 0.0)
        assert x_norm(q) == pytest.approx(expected)

    def test_report_without_hminus1(self, grid):
        """Massive data has no H^{-1} entry."""
        report = norm_report(GridFunction.from_callable(grid, lambda y: np.exp(-y ** 2)))
        assert report.hminus1 is None
        assert report.validate()

    def test_report_with_hminus1(self, grid):
        """For q = A(e^{-y^2})' the H^{-1} norm is A (pi/2)^{1/4}."""
        report = norm_report(gaussian_derivative(grid, 0.5))
        assert report.hminus1 == pytest.approx(0.5 * (np.pi / 2) ** 0.25, rel=1e-10)
        assert report.hs[0.0] == report.l2
        assert report.linf == pytest.approx(0.5 * np.sqrt(2) * np.exp(-0.5), rel=1e-3)


class TestDigest:
    """Tests for sample digests."""

    def test_digest_is_deterministic(self, grid):
        """Equal samples give equal digests; any change alters it."""
        f = wave_packet(grid, 0.2)
        assert grid_function_digest(f) == grid_function_digest(wave_packet(grid, 0.2))
        changed = f.values.copy()
        changed[10] += 1e-15
        assert grid_function_digest(f) != grid_function_digest(f.with_values(changed))


class TestInitialProfiles:
    """Tests for the initial-data builders."""

    def test_build_profile_dispatch(self, grid):
        """Known kinds dispatch to their builders."""
        q = build_profile("gaussian_derivative", grid, 0.1, {"width": 2.0})
        assert np.allclose(q.values, gaussian_derivative(grid, 0.1, width=2.0).values)
        q = build_profile("single_mode", grid, 0.1, {"mode": 2.0})
        assert np.allclose(q.values, single_mode(grid, 0.1, 2).values)

    def test_unknown_kind(self, grid):
        """Unknown kinds raise InvalidInputError."""
        with pytest.raises(InvalidInputError):
            build_profile("kink", grid, 0.1)

    def test_invalid_parameters(self, grid):
        """Non-positive widths and modes are rejected."""
        with pytest.raises(InvalidInputError):
            gaussian_derivative(grid, 0.1, width=0.0)
        with pytest.raises(InvalidInputError):
            single_mode(grid, 0.1, 0)
        with pytest.raises(InvalidInputError):
            build_profile("from_file", grid, 1.0)

    def test_fractional_mode_rejected(self, grid):
        """A non-integral mode from a run config is an error, not a truncation."""
        with pytest.raises(InvalidInputError, match="mode"):
            build_profile("single_mode", grid, 0.1, {"mode": 2.7})
        with pytest.raises(InvalidInputError):
            single_mode(grid, 0.1, "two")

    def test_from_file_scaled_by_amplitude(self, grid, tmp_path):
        """CSV data is read on its own grid and multiplied by the amplitude."""
        small = Grid(half_width=10.0, n_points=64)
        path = write_grid_function_csv(gaussian_derivative(small, 0.2), tmp_path / "q.csv")
        q = build_profile("from_file", grid, 2.0, path=str(path))
        assert q.grid == small
        assert np.allclose(q.values, gaussian_derivative(small, 0.4).values, atol=1e-15)
