"""
Unit tests for the linear propagator e^{tL}.
"""

import numpy as np
import pytest

from error_handling import DomainError, InvalidInputError, ZeroMassViolationError
from grid.grid_core import mean_zero_antiderivative, sobolev_norm
from grid.initial_profiles import gaussian_derivative, wave_packet
from models.data_models import Grid, GridFunction, PropagatorMode, PropagatorPlan
from propagation.linear_propagator import (
    propagate,
    propagate_kernel,
    propagate_P,
    propagate_spectral,
    spectral_multiplier,
)


def random_zero_mass(grid: Grid, rng: np.random.Generator) -> GridFunction:
    """Sum of random packets with the mean removed."""
    values = np.zeros(grid.n_points)
    for _ in range(3):
        values += wave_packet(
            grid,
            rng.uniform(-1.0, 1.0),
            width=rng.uniform(1.0, 3.0),
            wavenumber=rng.uniform(0.5, 4.0),
            center=rng.uniform(-5.0, 5.0),
        ).values
    return GridFunction(grid=grid, values=values - np.mean(values))


@pytest.fixture
def grid():
    return Grid(half_width=20.0, n_points=1024)


class TestSpectralPropagator:
    """Tests for the Fourier-multiplier path."""

    def test_multiplier_is_unimodular(self, grid):
        """|exp(-it/k)| = 1 except at k = 0, which is removed."""
        symbol = spectral_multiplier(grid, 2.0)
        assert symbol[0] == 0
        assert np.allclose(np.abs(symbol[1:]), 1.0, rtol=0, atol=1e-15)

    def test_norm_preservation(self, grid):
        """H^s norms are preserved for s = 0, 1, 2."""
        rng = np.random.default_rng(7)
        for _ in range(20):
            q0 = random_zero_mass(grid, rng)
            for t in (0.1, 1.0, 10.0):
                q = propagate_spectral(q0, t)
                for s in (0.0, 1.0, 2.0):
                    assert sobolev_norm(q, s) == pytest.approx(sobolev_norm(q0, s), rel=1e-12)

    def test_group_property(self, grid):
        """e^{aL} e^{bL} = e^{(a+b)L} and e^{-tL} inverts e^{tL}."""
        q0 = wave_packet(grid, 0.5)
        composed = propagate_spectral(propagate_spectral(q0, 0.7), 1.3)
        assert np.max(np.abs(composed.values - propagate_spectral(q0, 2.0).values)) < 1e-12
        back = propagate_spectral(propagate_spectral(q0, 3.0), -3.0)
        assert np.max(np.abs(back.values - q0.values)) < 1e-12

    def test_solves_linear_equation(self, grid):
        """Q_t = L Q, checked by central differences in t."""
        q0 = wave_packet(grid, 0.5)
        t, eps = 1.0, 1e-4
        q_t = (propagate_spectral(q0, t + eps).values - propagate_spectral(q0, t - eps).values) / (2 * eps)
        expected = mean_zero_antiderivative(propagate_spectral(q0, t)).values
        assert np.max(np.abs(q_t - expected)) < 1e-6

    def test_zero_time_is_identity(self, grid):
        """t = 0 returns the data."""
        q0 = wave_packet(grid, 0.5)
        assert np.array_equal(propagate_spectral(q0, 0.0).values, q0.values)

    def test_mass_violation(self, grid):
        """Massive data raises ZeroMassViolationError."""
        q0 = GridFunction.from_callable(grid, lambda y: np.exp(-y ** 2))
        with pytest.raises(ZeroMassViolationError):
            propagate_spectral(q0, 1.0)


class TestKernelPropagator:
    """Tests for the Bessel-kernel path."""

    def test_matches_spectral(self):
        """Kernel and multiplier forms agree for band-pass data."""
        grid = Grid(half_width=20.0, n_points=2048)
        q0 = wave_packet(grid, 1.0, width=2.0, wavenumber=5.0)
        difference = propagate_kernel(q0, 1.0).values - propagate_spectral(q0, 1.0).values
        assert np.max(np.abs(difference)) <= 1e-6

    def test_error_decreases_under_refinement(self):
        """Doubling N decreases the second-order quadrature error."""
        errors = []
        for n_points in (512, 1024, 2048):
            grid = Grid(half_width=20.0, n_points=n_points)
            q0 = wave_packet(grid, 1.0, width=2.0, wavenumber=5.0)
            difference = propagate_kernel(q0, 1.0, order=2).values - propagate_spectral(q0, 1.0).values
            errors.append(np.max(np.abs(difference)))
        assert errors[0] > errors[1] > errors[2]

    def test_higher_order_is_more_accurate(self):
        """Euler-Maclaurin corrections reduce the error."""
        grid = Grid(half_width=20.0, n_points=1024)
        q0 = wave_packet(grid, 1.0, width=2.0, wavenumber=5.0)
        reference = propagate_spectral(q0, 1.0).values
        second = np.max(np.abs(propagate_kernel(q0, 1.0, order=2).values - reference))
        eighth = np.max(np.abs(propagate_kernel(q0, 1.0, order=8).values - reference))
        assert eighth < second

    def test_gaussian_derivative_periodization_gap(self):
        """
        For q0 = -2 y exp(-y^2) the kernel (whole-line) and multiplier (periodic)
        results differ by the periodization gap of order t int p0 / 2L, which does
        not depend on N and halves when L doubles.
        """
        t = 1.0
        mass_of_p0 = np.sqrt(np.pi)

        def gap(half_width, n_points):
            grid = Grid(half_width=half_width, n_points=n_points)
            q0 = gaussian_derivative(grid, 1.0)
            return np.max(np.abs(propagate_kernel(q0, t).values - propagate_spectral(q0, t).values))

        reference = gap(20.0, 2048)
        assert 1e-3 < reference < t * mass_of_p0 / (2 * 20.0)
        assert abs(gap(20.0, 1024) - reference) < 1e-2 * reference
        assert gap(40.0, 4096) < 0.75 * reference

    def test_gaussian_derivative_integrated_field(self):
        """The P gap on Gaussian-derivative data is bounded by t int p0 and independent of N."""
        t = 0.5

        def gap(n_points):
            grid = Grid(half_width=20.0, n_points=n_points)
            q0 = gaussian_derivative(grid, 1.0)
            kernel = propagate_P(q0, t, PropagatorMode.KERNEL)
            spectral = propagate_P(q0, t, PropagatorMode.SPECTRAL)
            return np.max(np.abs(kernel.values - spectral.values))

        reference = gap(2048)
        assert reference < t * np.sqrt(np.pi)
        assert abs(gap(1024) - reference) < 1e-2 * reference

    def test_negative_time(self, grid):
        """The kernel form is only valid forward in time."""
        with pytest.raises(DomainError):
            propagate_kernel(wave_packet(grid, 1.0), -1.0)

    def test_invalid_order(self, grid):
        """Orders outside {2, 4, 6, 8} are rejected."""
        with pytest.raises(InvalidInputError):
            propagate_kernel(wave_packet(grid, 1.0), 1.0, order=3)

    def test_integrated_field(self):
        """Kernel and spectral P agree and P_y = Q."""
        grid = Grid(half_width=20.0, n_points=2048)
        q0 = wave_packet(grid, 1.0, width=2.0, wavenumber=5.0)
        kernel = propagate_P(q0, 1.0, PropagatorMode.KERNEL)
        spectral = propagate_P(q0, 1.0, PropagatorMode.SPECTRAL)
        assert np.max(np.abs(kernel.values - spectral.values)) <= 1e-6
        with pytest.raises(DomainError):
            propagate_P(q0, -1.0)


class TestPropagatorPlan:
    """Tests for plan dispatch."""

    def test_dispatch(self, grid):
        """Plans route to the matching path."""
        q0 = wave_packet(grid, 1.0)
        spectral = propagate(PropagatorPlan(grid=grid, t=0.5), q0)
        assert np.array_equal(spectral.values, propagate_spectral(q0, 0.5).values)
        kernel = propagate(PropagatorPlan(grid=grid, t=0.5, mode=PropagatorMode.KERNEL, order=4), q0)
        assert np.array_equal(kernel.values, propagate_kernel(q0, 0.5, 4).values)

    def test_invalid_plans(self, grid):
        """Backward kernel plans and grid mismatches are rejected."""
        q0 = wave_packet(grid, 1.0)
        with pytest.raises(InvalidInputError):
            propagate(PropagatorPlan(grid=grid, t=-1.0, mode=PropagatorMode.KERNEL), q0)
        other = Grid(half_width=10.0, n_points=1024)
        with pytest.raises(InvalidInputError):
            propagate(PropagatorPlan(grid=other, t=1.0), q0)
