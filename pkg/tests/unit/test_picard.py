"""
Unit tests for the Duhamel-Picard stepper.
"""

import numpy as np
import pytest
from unittest.mock import Mock

from error_handling import (
    ContractionFailureError,
    ConvergenceFailureError,
    InvalidInputError,
    StepRejectedError,
)
from evolution.picard import (
    gauss_lobatto_nodes,
    integration_matrix,
    picard_iterate,
    step_picard,
)
from evolution.sg_evolution import integrate_mol, make_state, zero_flux_antiderivative
from evolution.step_control import estimate_constants, select_step, step_rule_from_state
from grid.initial_profiles import gaussian_derivative
from models.data_models import ConstantsEstimate, Grid, GridFunction, SgState


@pytest.fixture
def grid():
    return Grid(half_width=20.0, n_points=256)


@pytest.fixture
def state(grid):
    return make_state(gaussian_derivative(grid, 0.1))


class TestCollocation:
    """Tests for nodes and the integration matrix."""

    def test_lobatto_nodes(self):
        """Known node sets on [0, 1]."""
        assert np.allclose(gauss_lobatto_nodes(2), [0.0, 1.0])
        assert np.allclose(gauss_lobatto_nodes(3), [0.0, 0.5, 1.0])
        expected = [0.0, 0.5 * (1 - 1 / np.sqrt(5)), 0.5 * (1 + 1 / np.sqrt(5)), 1.0]
        assert np.allclose(gauss_lobatto_nodes(4), expected, atol=1e-14)

    def test_too_few_nodes(self):
        """A single node is rejected."""
        with pytest.raises(InvalidInputError):
            gauss_lobatto_nodes(1)

    def test_integration_matrix_exact_for_polynomials(self):
        """Rows integrate polynomials of degree < count exactly."""
        nodes = gauss_lobatto_nodes(5)
        matrix = integration_matrix(nodes)
        for degree in range(5):
            exact = nodes ** (degree + 1) / (degree + 1)
            assert np.allclose(matrix @ nodes ** degree, exact, atol=1e-14)

    def test_first_row_is_zero(self):
        """Nothing is integrated up to the left node."""
        assert np.allclose(integration_matrix(gauss_lobatto_nodes(4))[0], 0.0)


class TestPicardIteration:
    """Tests for the fixed-point iteration."""

    def test_agrees_with_mol(self, state):
        """Picard and RK4 endpoints agree on an admissible slab."""
        constants = ConstantsEstimate(c_s=1.0, c_1=1.0, c_2=1.0)
        T = min(select_step(step_rule_from_state(state, constants)), 0.1)
        picard = step_picard(state, T, tol=1e-12)
        mol = integrate_mol(state, T / 100, 100)
        assert picard.t == pytest.approx(T)
        assert np.max(np.abs(picard.q.values - mol.q.values)) < 1e-5

    def test_contraction_on_selected_slab(self, grid):
        """With T from select_step on A = 0.3 data the distances shrink geometrically and the endpoint matches RK4."""
        state = make_state(gaussian_derivative(grid, 0.3))
        T = select_step(step_rule_from_state(state, estimate_constants(grid)))
        assert 0 < T <= 1.0

        report = picard_iterate(state, T, tol=1e-12)
        ratios = report.contraction_ratios()
        assert ratios
        assert all(ratio < 1 for ratio in ratios)
        assert max(ratios) < 0.5

        steps = max(100, int(np.ceil(T / 1e-3)))
        mol = integrate_mol(state, T / steps, steps)
        assert report.state.t == pytest.approx(T)
        assert np.max(np.abs(report.state.q.values - mol.q.values)) <= 1e-5

    def test_distances_contract(self, state):
        """Successive distances shrink and the last one meets tol."""
        report = picard_iterate(state, 0.1, tol=1e-12)
        assert report.distances[-1] <= 1e-12
        assert report.iterations == len(report.distances)
        assert all(ratio < 1 for ratio in report.contraction_ratios())

    def test_zero_state_converges_immediately(self, grid):
        """Zero data gives zero distance after one sweep."""
        report = picard_iterate(make_state(GridFunction.zeros(grid)), 0.5)
        assert report.iterations == 1
        assert report.distances == [0.0]

    def test_logs_each_iteration(self, state):
        """The logger sees one event per sweep."""
        logger = Mock()
        report = picard_iterate(state, 0.05, tol=1e-10, logger=logger)
        assert logger.log_picard_iteration.call_count == report.iterations

    def test_iteration_cap(self, state):
        """An unreachable tolerance exhausts max_iter."""
        with pytest.raises(ConvergenceFailureError) as exc_info:
            picard_iterate(state, 0.1, tol=1e-30, max_iter=2)
        assert exc_info.value.iterations == 2

    def test_growing_distances(self, state, monkeypatch):
        """Three consecutive growths raise ContractionFailureError."""
        calls = iter(range(1, 1000))
        monkeypatch.setattr("evolution.picard.x1_norm_values", lambda values, grid: float(next(calls)))
        with pytest.raises(ContractionFailureError):
            picard_iterate(state, 0.1, nodes=2)

    def test_endpoint_above_ceiling(self, grid):
        """An endpoint above q_c_bound is rejected."""
        q = gaussian_derivative(grid, 0.5)
        low_ceiling = SgState(t=0.0, q=q, p=zero_flux_antiderivative(q), q_c_bound=0.5 * q.max_abs())
        with pytest.raises(StepRejectedError):
            picard_iterate(low_ceiling, 0.01)

    def test_invalid_arguments(self, state):
        """Non-positive T or tol are rejected."""
        with pytest.raises(InvalidInputError):
            picard_iterate(state, 0.0)
        with pytest.raises(InvalidInputError):
            picard_iterate(state, 0.1, tol=0.0)
