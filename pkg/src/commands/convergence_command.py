"""
convergence: refinement-ladder studies with a fitted observed order.

Two studies:
    mol_dt   -- self-convergence of the RK4 method of lines; each rung is
                compared against a run at a quarter of the finest dt
    kernel_n -- kernel-form propagator against the spectral propagator at
                t_final over a ladder of grid sizes N
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from error_handling import InvalidInputError
from evolution.sg_evolution import integrate_mol, make_state
from grid.grid_core import mass_tolerance
from grid.initial_profiles import build_profile
from models.data_models import CommandResult, ConvergenceStudy, Grid, RunConfig
from propagation.linear_propagator import propagate_kernel, propagate_spectral
from commands.base_command import EXIT_OK, BaseCommand

MIN_RUNGS = 3
STUDIES = ("mol_dt", "kernel_n")


def fit_order(scales: Sequence[float], errors: Sequence[float]) -> Tuple[Optional[float], bool]:
    """
    Least-squares slope of log(error) against log(scale).

    Returns:
        (order, degenerate); degenerate when fewer than two errors are positive
    """
    pairs = [(s, e) for s, e in zip(scales, errors) if e > 0 and np.isfinite(e)]
    if len(pairs) < 2:
        return None, True
    log_s, log_e = np.log(np.array(pairs)).T
    return float(np.polyfit(log_s, log_e, 1)[0]), False


def steps_for(t_final: float, dt: float) -> int:
    n_steps = int(round(t_final / dt))
    if n_steps < 1 or abs(n_steps * dt - t_final) > 1e-9 * t_final:
        raise InvalidInputError("ladder", f"dt = {dt} does not divide t_final = {t_final}")
    return n_steps


class ConvergenceCommand(BaseCommand):
    """Run the configured refinement ladder and write (dt or N, error)."""

    name = "convergence"

    def validate_input(self, config: RunConfig) -> bool:
        if len(config.ladder) < MIN_RUNGS:
            raise InvalidInputError("ladder", f"need at least {MIN_RUNGS} rungs, got {len(config.ladder)}")
        if config.study not in STUDIES:
            raise InvalidInputError("study", f"unknown study '{config.study}'")
        return config.validate() and all(v > 0 for v in config.ladder)

    def mol_dt_study(self, config: RunConfig) -> ConvergenceStudy:
        q0 = self.initial_data(config)
        state = make_state(q0, 0.0, config.q_c_bound, mass_tolerance(q0, config.mass_tol_factor))
        ladder = sorted(config.ladder, reverse=True)
        dt_ref = ladder[-1] / 4.0
        reference = integrate_mol(state, dt_ref, steps_for(config.t_final, dt_ref)).q.values

        errors: List[float] = []
        for dt in ladder:
            end = integrate_mol(state, dt, steps_for(config.t_final, dt))
            errors.append(float(np.max(np.abs(end.q.values - reference))))
            if self.logger:
                self.logger.log_debug("Convergence rung", {"dt": dt, "error": errors[-1]})
        order, degenerate = fit_order(ladder, errors)
        return ConvergenceStudy("mol_dt", ladder, errors, order, degenerate)

    def kernel_n_study(self, config: RunConfig) -> ConvergenceStudy:
        spec = config.initial_data
        if spec.kind == "from_file":
            raise InvalidInputError("initial_data", "kernel_n studies need a synthetic profile")
        ladder = sorted(int(n) for n in config.ladder)
        errors: List[float] = []
        for n_points in ladder:
            grid = Grid(half_width=config.grid_half_width, n_points=n_points)
            q0 = build_profile(spec.kind, grid, spec.amplitude, spec.parameters)
            kernel = propagate_kernel(q0, config.t_final, config.kernel_order)
            spectral = propagate_spectral(q0, config.t_final, mass_tolerance(q0, config.mass_tol_factor))
            errors.append(float(np.max(np.abs(kernel.values - spectral.values))))
            if self.logger:
                self.logger.log_debug("Convergence rung", {"N": n_points, "error": errors[-1]})
        # error ~ h^order with h = 2L / N
        order, degenerate = fit_order([1.0 / n for n in ladder], errors)
        return ConvergenceStudy("kernel_n", [float(n) for n in ladder], errors, order, degenerate)

    def execute(self, config: RunConfig) -> CommandResult:
        study = self.mol_dt_study(config) if config.study == "mol_dt" else self.kernel_n_study(config)
        formatter = self.formatter(config)
        csv_path = formatter.write_convergence(study, f"{config.label}_convergence.csv")
        summary = {
            "command": self.name,
            "label": config.label,
            "study": study.kind,
            "t_final": config.t_final,
            "parameters": study.parameters,
            "errors": study.errors,
            "fitted_order": study.fitted_order,
            "degenerate": study.degenerate,
            "grid": config.grid.to_dict(),
            "decay_tol": config.decay_tol,
        }
        json_path = formatter.write_json(f"{config.label}_convergence.json", summary)
        return CommandResult(
            success=True,
            data=summary,
            exit_code=EXIT_OK,
            metadata={"artifacts": [str(csv_path), str(json_path)]},
        )
