"""
Commands module: the subcommands of the command-line runner.
"""

from .base_command import ANCHOR_CONVENTION, EXIT_HALTED, EXIT_OK, EXIT_USAGE, BaseCommand
from .certify_command import CertifyCommand
from .convergence_command import ConvergenceCommand, fit_order
from .kernels_command import KernelsCommand
from .run_config import apply_overrides, config_defaults, load_run_config, sweep_members
from .simulate_command import SimulateCommand
from .transform_command import TransformCommand

COMMANDS = {
    "simulate": SimulateCommand,
    "certify": CertifyCommand,
    "transform": TransformCommand,
    "kernels": KernelsCommand,
    "convergence": ConvergenceCommand,
}

__all__ = [
    "ANCHOR_CONVENTION",
    "BaseCommand",
    "CertifyCommand",
    "COMMANDS",
    "ConvergenceCommand",
    "EXIT_HALTED",
    "EXIT_OK",
    "EXIT_USAGE",
    "KernelsCommand",
    "SimulateCommand",
    "TransformCommand",
    "apply_overrides",
    "config_defaults",
    "fit_order",
    "load_run_config",
    "sweep_members",
]
