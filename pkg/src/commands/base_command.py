"""
Base command interface for the command-line runner.

This module defines the abstract base class that all subcommands implement,
ensuring consistent validation, error handling and exit codes:
0 success, 1 usage/configuration error, 2 halted evolution.
"""

import time
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from config import Config
from error_handling import ErrorContext, SimulationError
from grid.grid_core import check_decay
from grid.initial_profiles import build_profile
from models.data_models import CommandResult, GridFunction, RunConfig
from output_formatter import OutputFormatter
from structured_logging import StructuredLogger

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HALTED = 2

ANCHOR_CONVENTION = "x(y_min) = y_min, rebuilt per snapshot"


class BaseCommand(ABC):
    """
    Abstract base class for all subcommands.

    All commands must implement:
    - validate_input: Check the run configuration before execution
    - execute: Perform the command and write its artifacts

    Commands never raise; failures come back as CommandResult with exit code 1.
    """

    name = "command"

    def __init__(self, logger: Optional[StructuredLogger] = None):
        """
        Initialize command with optional logger.

        Args:
            logger: Structured logger for observability
        """
        self.logger = logger

    def validate_input(self, config: RunConfig) -> bool:
        """
        Validate the run configuration.

        Args:
            config: run configuration

        Returns:
            True if the configuration is admissible
        """
        return config.validate()

    @abstractmethod
    def execute(self, config: RunConfig) -> CommandResult:
        """
        Execute the command.

        Args:
            config: validated run configuration

        Returns:
            CommandResult with the command's summary as data
        """
        pass

    def formatter(self, config: RunConfig) -> OutputFormatter:
        return OutputFormatter(config.output_dir, Config.SIGNIFICANT_DIGITS)

    def initial_data(self, config: RunConfig) -> GridFunction:
        """Build q0 from the configured initial-data description."""
        spec = config.initial_data
        return build_profile(spec.kind, config.grid, spec.amplitude, spec.parameters, spec.path)

    def provenance(self, config: RunConfig, q0: GridFunction) -> Dict[str, Any]:
        """Grid, decay tolerance and map-anchor convention recorded with every output."""
        return {
            "command": self.name,
            "label": config.label,
            "grid": q0.grid.to_dict(),
            "decay_tol": config.decay_tol,
            "endpoint_ratio": check_decay(q0, config.decay_tol, self.logger),
            "anchor_convention": ANCHOR_CONVENTION,
        }

    def handle_error(self, error: Exception, context: Optional[Dict[str, Any]] = None) -> CommandResult:
        """
        Turn an exception into a failed result.

        The error itself is logged by the ErrorContext wrapping the command.

        Args:
            error: Exception that occurred
            context: Additional context about the error

        Returns:
            CommandResult with success=False and exit code 1
        """
        error_message = error.message if isinstance(error, SimulationError) else str(error)
        error_type = type(error).__name__

        return CommandResult(
            success=False,
            data=None,
            error=f"{error_type}: {error_message}",
            exit_code=EXIT_USAGE,
            metadata=context or {}
        )

    def run(self, config: RunConfig) -> CommandResult:
        """
        Run command with validation and error handling.

        Args:
            config: run configuration

        Returns:
            CommandResult from execution or error handling
        """
        start = time.time()
        context = {"command": self.name, "label": config.label}
        try:
            with ErrorContext(self.logger, self.name) as error_context:
                error_context.add("label", config.label)
                error_context.add("output_dir", config.output_dir)
                if not self.validate_input(config):
                    result = CommandResult(
                        success=False,
                        data=None,
                        error="Input validation failed",
                        exit_code=EXIT_USAGE,
                        metadata=context
                    )
                else:
                    result = self.execute(config)
                    if not result.validate():
                        result = CommandResult(
                            success=False,
                            data=None,
                            error="Command returned invalid result",
                            exit_code=EXIT_USAGE,
                            metadata=context
                        )
        except Exception as e:
            result = self.handle_error(e, context=context)

        if self.logger:
            self.logger.log_command(
                self.name, context, result.exit_code, time.time() - start, result.success
            )
        return result
