"""
Concurrent parameter sweeps: independent runs in a process pool.

Each member run is sequential and writes its own artifacts; the sweep exit code
is the maximum of the member exit codes.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional

from config import Config
from models.data_models import CommandResult, RunConfig
from output_formatter import OutputFormatter
from structured_logging import StructuredLogger
from commands.run_config import config_defaults, sweep_members


def run_member(command_name: str, member: Dict[str, Any]) -> Dict[str, Any]:
    """Run one sweep member in a worker process."""
    from commands import COMMANDS

    config = RunConfig.from_dict(member, config_defaults())
    logger = StructuredLogger(
        session_id=f"{command_name}-{config.label}",
        log_dir=Config.LOG_DIR,
        console_output=False,
        log_level=Config.LOG_LEVEL,
    )
    try:
        result = COMMANDS[command_name](logger).run(config)
    finally:
        logger.close()
    return {
        "label": config.label,
        "exit_code": result.exit_code,
        "success": result.success,
        "error": result.error,
    }


def run_sweep(
    command_name: str,
    config: RunConfig,
    max_workers: Optional[int] = None,
    logger: Optional[StructuredLogger] = None
) -> CommandResult:
    """
    Run every member of config.sweep and write <label>_sweep.json.

    Args:
        command_name: subcommand to run per member
        config: configuration carrying a non-empty sweep
        max_workers: pool size (default: min(members, CPUs))
        logger: optional logger for the sweep itself

    Returns:
        CommandResult whose exit code is the maximum member exit code
    """
    members = sweep_members(config)
    workers = max_workers or max(1, min(len(members), os.cpu_count() or 1))
    if logger:
        logger.log_info("Starting sweep", {"command": command_name, "members": len(members), "workers": workers})

    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_member, command_name, member) for member in members]
        outcomes: List[Dict[str, Any]] = [future.result() for future in futures]

    exit_code = max((o["exit_code"] for o in outcomes), default=0)
    summary = {"command": command_name, "label": config.label, "sweep": config.sweep, "members": outcomes}
    OutputFormatter(config.output_dir, Config.SIGNIFICANT_DIGITS).write_json(f"{config.label}_sweep.json", summary)
    return CommandResult(success=True, data=summary, exit_code=exit_code)
