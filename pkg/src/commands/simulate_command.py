"""
simulate: evolve the configured initial data and write the trajectory.

Artifacts: <label>_trajectory.csv and <label>_summary.json.
"""

from config import Config
from evolution.driver import evolve
from grid.grid_core import mass_tolerance
from models.data_models import CommandResult, RunConfig, TerminationFlag
from commands.base_command import EXIT_HALTED, EXIT_OK, BaseCommand


class SimulateCommand(BaseCommand):
    """Run sg_evolution.evolve and report conserved-quantity drift."""

    name = "simulate"

    def execute(self, config: RunConfig) -> CommandResult:
        q0 = self.initial_data(config)
        summary = self.provenance(config, q0)
        trajectory = evolve(
            q0,
            config.t_final,
            config.stepper,
            q_c_bound=config.q_c_bound,
            logger=self.logger,
            mass_tol=mass_tolerance(q0, config.mass_tol_factor),
        )

        formatter = self.formatter(config)
        csv_path = formatter.write_trajectory(trajectory, f"{config.label}_trajectory.csv")
        halted = trajectory.termination is not TerminationFlag.COMPLETED
        summary.update({
            "termination": trajectory.termination.value,
            "reason": trajectory.reason,
            "final_time": trajectory.final_time,
            "t_final": config.t_final,
            "max_relative_drift": trajectory.max_relative_drift(),
            "max_q_inf": trajectory.max_q_inf(),
            "q_c_bound": config.q_c_bound,
            "samples": len(trajectory.records),
            "stepper": trajectory.settings,
            "significant_digits": Config.SIGNIFICANT_DIGITS,
        })
        json_path = formatter.write_json(f"{config.label}_summary.json", summary)

        return CommandResult(
            success=True,
            data=summary,
            exit_code=EXIT_HALTED if halted else EXIT_OK,
            metadata={"artifacts": [str(csv_path), str(json_path)]},
        )
