"""
kernels: table of sup and L^2 bounds for the Bessel kernels K_t and J_t.
"""

from kernels.bessel_kernels import kernel_bounds_report
from models.data_models import CommandResult, RunConfig
from commands.base_command import EXIT_OK, BaseCommand


class KernelsCommand(BaseCommand):
    name = "kernels"

    def validate_input(self, config: RunConfig) -> bool:
        return config.validate() and len(config.kernel_times) > 0

    def execute(self, config: RunConfig) -> CommandResult:
        rows = kernel_bounds_report(config.kernel_times)
        path = self.formatter(config).write_kernel_table(rows, f"{config.label}_kernels.csv")
        return CommandResult(
            success=True,
            data={"rows": [row.to_dict() for row in rows]},
            exit_code=EXIT_OK,
            metadata={"artifacts": [str(path)]},
        )
