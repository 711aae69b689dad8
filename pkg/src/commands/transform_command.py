"""
transform: map sine-Gordon data q(y) to short-pulse fields on a uniform x-grid.

Artifacts: <label>_x_fields.csv (x,u,u_x,u_xx) and <label>_equivalence.json.
"""

from evolution.sg_evolution import make_state
from grid.grid_core import mass_tolerance
from hodograph.hodograph import (
    build_map,
    equivalence_report,
    fields_h2_norm,
    initial_u_mass,
    resample_to_x,
    zero_mass_check_u,
)
from models.data_models import CommandResult, RunConfig
from commands.base_command import EXIT_OK, BaseCommand
from commands.certify_command import CERTIFY_Q_BOUND


class TransformCommand(BaseCommand):
    """Build the hodograph map and resample u, u_x, u_xx."""

    name = "transform"

    def execute(self, config: RunConfig) -> CommandResult:
        q0 = self.initial_data(config)
        report = self.provenance(config, q0)
        state = make_state(q0, 0.0, CERTIFY_Q_BOUND, mass_tolerance(q0, config.mass_tol_factor))

        fields = build_map(state)
        xfields = resample_to_x(fields)
        equivalence = equivalence_report(state, fields)
        report.update({
            "x_period": fields.x_period,
            "anchor": fields.anchor,
            "derivative_mismatch": xfields.derivative_mismatch,
            "u_mass": zero_mass_check_u(fields),
            "u_mass_decaying_antiderivative": initial_u_mass(q0, config.decay_tol, self.logger),
            "h2_norm": fields_h2_norm(xfields),
            "equivalence": equivalence.to_dict(),
        })
        if self.logger and not equivalence.all_hold:
            self.logger.log_warning("Norm equivalence chain violated", equivalence.to_dict())

        formatter = self.formatter(config)
        csv_path = formatter.write_xfields(xfields, f"{config.label}_x_fields.csv")
        json_path = formatter.write_json(f"{config.label}_equivalence.json", report)
        return CommandResult(
            success=True,
            data=report,
            exit_code=EXIT_OK,
            metadata={"artifacts": [str(csv_path), str(json_path)]},
        )
