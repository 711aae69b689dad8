"""
Unit tests for data models.
"""

import json

import numpy as np
import pytest

from models.data_models import (
    Certificate,
    CommandResult,
    ConservedFamily,
    ConservedTriple,
    ConvergenceStudy,
    EquivalenceReport,
    Grid,
    GridFunction,
    InitialDataSpec,
    KernelSample,
    NormRatio,
    NormReport,
    PicardReport,
    PropagatorMode,
    PropagatorPlan,
    RunConfig,
    StepperConfig,
    StepRule,
    Trajectory,
    TrajectoryRecord,
    Verdict,
)


def record(t, e_minus1=1.0, e_0=1.0, e_1=1.0):
    return TrajectoryRecord(
        t=t,
        digest="0" * 64,
        triple=ConservedTriple(e_minus1=e_minus1, e_0=e_0, e_1=e_1),
        q_inf=0.1,
        mass_residual=0.0,
        x1_norm=0.5,
    )


class TestGridModels:
    """Tests for Grid and GridFunction."""

    def test_grid_equality_and_dict(self):
        """Grids compare by value."""
        grid = Grid(half_width=10.0, n_points=64)
        assert grid == Grid(half_width=10.0, n_points=64)
        assert grid.to_dict() == {"half_width": 10.0, "n_points": 64, "spacing": 20.0 / 64}

    def test_grid_function_validation(self):
        """Wrong sizes and non-finite samples fail validation."""
        grid = Grid(half_width=10.0, n_points=64)
        assert GridFunction.zeros(grid).validate()
        assert not GridFunction(grid=grid, values=np.zeros(10)).validate()
        assert not GridFunction(grid=grid, values=np.full(64, np.inf)).validate()

    def test_values_are_copied(self):
        """Changing the source array does not change the function."""
        grid = Grid(half_width=10.0, n_points=8)
        source = np.arange(8.0)
        f = GridFunction(grid=grid, values=source)
        source[0] = 100.0
        assert f.values[0] == 0.0
        assert len(f) == 8
        assert f.max_abs() == 7.0


class TestNormModels:
    """Tests for norm reports and equivalence reports."""

    def test_norm_report(self):
        """Negative norms or an inconsistent H^0 entry fail validation."""
        assert NormReport(l2=1.0, linf=0.5, hs={0.0: 1.0, 1.0: 2.0}).validate()
        assert not NormReport(l2=1.0, linf=0.5, hs={0.0: 1.5}).validate()
        assert not NormReport(l2=-1.0, linf=0.5, hs={}).validate()
        assert NormReport(l2=1.0, linf=0.5, hs={1.0: 2.0}).to_dict()["hs"] == {"1.0": 2.0}

    def test_equivalence_report(self):
        """all_hold requires every chain; entries are looked up by name."""
        report = EquivalenceReport(q_c=0.5, entries=[
            NormRatio(name="a", ratio=1.0, lower=0.5, upper=2.0, holds=True),
            NormRatio(name="b", ratio=3.0, lower=0.5, upper=2.0, holds=False),
        ])
        assert not report.all_hold
        assert report.ratio("b").ratio == 3.0
        assert report.to_dict()["all_hold"] is False
        with pytest.raises(KeyError):
            report.ratio("c")


class TestKernelAndPlanModels:
    """Tests for kernel samples and propagator plans."""

    def test_kernel_sample_bounds(self):
        """|J| <= 1 and |K| <= t."""
        assert KernelSample(t=1.0, y=0.0, k_value=-1.0, j_value=1.0).validate()
        assert not KernelSample(t=1.0, y=1.0, k_value=-2.0, j_value=0.5).validate()

    def test_plan_validation(self):
        """Kernel plans need t >= 0 and a supported order."""
        grid = Grid(half_width=10.0, n_points=64)
        assert PropagatorPlan(grid=grid, t=-1.0).validate()
        assert not PropagatorPlan(grid=grid, t=-1.0, mode=PropagatorMode.KERNEL).validate()
        assert not PropagatorPlan(grid=grid, t=1.0, order=5).validate()


class TestStepperModels:
    """Tests for step rules and stepper settings."""

    def test_step_rule(self):
        """alpha and q_c must lie in (0, 1)."""
        assert StepRule(alpha=0.5, delta=1.0, q_c=0.9).validate()
        assert not StepRule(alpha=0.5, delta=0.0, q_c=0.9).validate()
        assert not StepRule(alpha=0.5, delta=1.0, q_c=1.0).validate()

    def test_stepper_config(self):
        """Unknown methods and too few nodes are invalid."""
        assert StepperConfig().validate()
        assert not StepperConfig(method="euler").validate()
        assert not StepperConfig(nodes=1).validate()
        assert StepperConfig(dt=0.5).to_dict()["dt"] == 0.5

    def test_picard_report_ratios(self):
        """Ratios skip distances below the floor."""
        report = PicardReport(state=None, distances=[1e-2, 1e-3, 1e-4, 1e-15], iterations=4, nodes=4, step_size=0.1)
        assert report.contraction_ratios() == pytest.approx([0.1, 0.1])


class TestTrajectory:
    """Tests for trajectories and records."""

    def test_drift(self):
        """Relative drift against the first record."""
        trajectory = Trajectory(grid=Grid(half_width=10.0, n_points=64))
        trajectory.records = [record(0.0), record(0.5, e_0=1.001), record(1.0, e_1=0.998)]
        drift = trajectory.max_relative_drift()
        assert drift["E_minus1"] == 0.0
        assert drift["E_0"] == pytest.approx(1e-3)
        assert drift["E_1"] == pytest.approx(2e-3)
        assert trajectory.final_time == 1.0
        assert trajectory.validate()

    def test_drift_with_zero_initial_value(self):
        """A vanishing initial value with no change has zero drift."""
        trajectory = Trajectory(grid=Grid(half_width=10.0, n_points=64))
        trajectory.records = [record(0.0, e_0=0.0), record(1.0, e_0=0.0)]
        assert trajectory.max_relative_drift()["E_0"] == 0.0

    def test_non_increasing_times(self):
        """Repeated sample times fail validation."""
        trajectory = Trajectory(grid=Grid(half_width=10.0, n_points=64))
        trajectory.records = [record(0.0), record(0.0)]
        assert not trajectory.validate()

    def test_row(self):
        """Rows carry the trajectory CSV columns."""
        row = record(0.25).to_row()
        assert list(row) == ["t", "E_minus1", "E_0", "E_1", "q_inf", "mass_residual", "x1_norm", "flag"]


class TestConservedTriple:
    """Tests for conserved triples."""

    def test_to_dict_uses_family_prefix(self):
        """E and H triples are labelled by family."""
        triple = ConservedTriple(e_minus1=1.0, e_0=2.0, e_1=3.0, family=ConservedFamily.H)
        assert triple.to_dict() == {"H_minus1": 1.0, "H_0": 2.0, "H_1": 3.0, "quadrature_error": 0.0}
        assert not ConservedTriple(e_minus1=-1.0, e_0=0.0, e_1=0.0).validate()


class TestCertificateModel:
    """Tests for the Certificate model."""

    def test_serialization(self):
        """Undefined bounds are written as 'undefined'."""
        certificate = Certificate(
            h_minus1=0.1, h_0=0.3, h_1=0.5, sum_criterion=1.1, sharp_criterion=1.095,
            optimal_alpha=0.9, apriori_h2=None, raw_hypothesis=None,
            verdicts=[Verdict.UNCERTIFIED.value],
        )
        data = json.loads(certificate.to_json())
        assert data["apriori_h2"] == "undefined"
        assert data["raw_hypothesis"] == "undefined"
        assert data["raw_hypothesis_holds"] is None
        assert certificate.validate()

    def test_inconsistent_verdicts(self):
        """A sum verdict without the sharp verdict is invalid."""
        certificate = Certificate(
            h_minus1=0.1, h_0=0.1, h_1=0.1, sum_criterion=0.3, sharp_criterion=0.28,
            optimal_alpha=0.7, apriori_h2=0.6, verdicts=[Verdict.CERTIFIED_SUM.value],
        )
        assert not certificate.validate()


class TestRunConfig:
    """Tests for run configuration parsing."""

    def test_from_dict(self):
        """Nested grid, stepper and initial-data sections are read."""
        config = RunConfig.from_dict({
            "grid": {"L": 30.0, "N": 512},
            "initial_data": {"kind": "wave_packet", "amplitude": 0.2, "parameters": {"width": 1.5}},
            "stepper": {"method": "picard", "dt": 0.01},
            "t_final": 2.0,
            "label": "packet",
        })
        assert config.grid == Grid(half_width=30.0, n_points=512)
        assert config.initial_data.parameters == {"width": 1.5}
        assert config.stepper.method == "picard"
        assert config.label == "packet"
        assert config.validate()

    def test_defaults_fill_missing_fields(self):
        """Flat defaults apply where the JSON is silent."""
        config = RunConfig.from_dict({"stepper": {"dt": 0.02}}, {"t_final": 3.0, "stepper_defaults": {"tol": 1e-8}})
        assert config.t_final == 3.0
        assert config.stepper.tol == 1e-8
        assert config.stepper.dt == 0.02

    def test_invalid_fields(self):
        """Bad kernel orders, ceilings and file inputs without a path are rejected."""
        assert not RunConfig(kernel_order=3).validate()
        assert not RunConfig(q_c_bound=1.0).validate()
        assert not RunConfig(initial_data=InitialDataSpec(kind="from_file")).validate()
        assert not RunConfig(label="").validate()

    def test_initial_data_above_ceiling(self):
        """max|q0| above q_c_bound fails validation before any state is built."""
        # the sampled peak of -2 A s exp(-s^2) is close to 0.858 A
        config = RunConfig(grid_points=256, initial_data=InitialDataSpec(amplitude=1.14))
        assert config.initial_peak() > config.q_c_bound
        assert not config.validate()
        assert RunConfig(grid_points=256, initial_data=InitialDataSpec(amplitude=1.14), q_c_bound=0.99).validate()

    def test_bad_profile_parameters(self):
        """Parameters the profile builder rejects fail validation."""
        spec = InitialDataSpec(kind="single_mode", amplitude=0.1, parameters={"mode": 2.7})
        assert not RunConfig(grid_points=256, initial_data=spec).validate()

    def test_file_data_peak_deferred(self):
        """from_file data has no peak until the file is read."""
        spec = InitialDataSpec(kind="from_file", path="state.csv")
        assert RunConfig(initial_data=spec).initial_peak() is None

    def test_to_dict(self):
        """Grid fields are nested as L and N."""
        data = RunConfig().to_dict()
        assert data["grid"] == {"L": 20.0, "N": 1024}
        assert "grid_half_width" not in data


class TestResults:
    """Tests for convergence studies and command results."""

    def test_convergence_rows(self):
        """The ladder column is dt or N."""
        study = ConvergenceStudy(kind="kernel_n", parameters=[256, 512], errors=[1e-3, 1e-4], fitted_order=3.3)
        assert study.to_rows() == [{"N": 256, "error": 1e-3}, {"N": 512, "error": 1e-4}]

    def test_command_result(self):
        """Successful results need data; failures need a message."""
        assert CommandResult(success=True, data={}, exit_code=2).validate()
        assert not CommandResult(success=True, data=None).validate()
        assert not CommandResult(success=False, data=None).validate()
        assert not CommandResult(success=False, data=None, error="x", exit_code=3).validate()
