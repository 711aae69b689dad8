"""
certify: global well-posedness certificate for the configured data.

The verdict travels in <label>_certificate.json; the exit code is 0 for every
admissible input, certified or not.
"""

from certificates.certificates import apriori_q_bounds, certify, q_tilde_bounds
from error_handling import safe_execute
from evolution.sg_evolution import conserved_E, make_state
from grid.grid_core import mass_tolerance
from hodograph.hodograph import build_map, conserved_H, resample_to_x
from models.data_models import CommandResult, RunConfig
from commands.base_command import EXIT_OK, BaseCommand

# certification only needs an invertible map, not the evolution ceiling
CERTIFY_Q_BOUND = 1.0 - 1e-12


class CertifyCommand(BaseCommand):
    """Compute H_{-1}, H_0, H_1, the sum/sharp criteria and the a priori bounds."""

    name = "certify"

    def execute(self, config: RunConfig) -> CommandResult:
        q0 = self.initial_data(config)
        report = self.provenance(config, q0)
        state = make_state(q0, 0.0, CERTIFY_Q_BOUND, mass_tolerance(q0, config.mass_tol_factor))

        certificate = certify(state, self.logger)
        xfields = resample_to_x(build_map(state))
        h_triple = conserved_H(xfields)
        e_triple = conserved_E(state)

        report.update(certificate.to_dict())
        report.update({
            "h_from_x_grid": h_triple.to_dict(),
            "e_from_y_grid": e_triple.to_dict(),
            "derivative_mismatch": xfields.derivative_mismatch,
            "q_tilde_bounds": safe_execute(
                lambda: q_tilde_bounds(xfields), "undefined", self.logger, operation="q_tilde_bounds"
            ),
            "apriori_q_bounds": {
                k: ("undefined" if v is None else v) for k, v in apriori_q_bounds(e_triple).items()
            },
            "max_abs_q": state.max_abs_q,
        })
        path = self.formatter(config).write_json(f"{config.label}_certificate.json", report)
        return CommandResult(success=True, data=report, exit_code=EXIT_OK, metadata={"artifacts": [str(path)]})
