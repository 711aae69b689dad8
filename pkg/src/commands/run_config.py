"""
Run-configuration loading: JSON file, then environment, then command-line flags.

Precedence for every field is flag > environment (OUTPUT_DIR only) > JSON > Config.
"""

import copy
import itertools
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from config import Config
from error_handling import ConfigurationError
from models.data_models import RunConfig

_STEPPER_KEYS = ("method", "dt", "tol", "max_iter", "nodes", "alpha", "t_max", "sample_every")
_INITIAL_KEYS = ("kind", "amplitude", "path")


def config_defaults() -> Dict[str, Any]:
    """Flat RunConfig defaults taken from Config."""
    return {
        "grid_half_width": Config.GRID_HALF_WIDTH,
        "grid_points": Config.GRID_POINTS,
        "q_c_bound": Config.Q_C_BOUND,
        "mass_tol_factor": Config.MASS_TOL_FACTOR,
        "decay_tol": Config.DECAY_TOL,
        "output_dir": Config.OUTPUT_DIR,
        "stepper_defaults": {
            "dt": Config.DEFAULT_DT,
            "tol": Config.PICARD_TOL,
            "max_iter": Config.PICARD_MAX_ITER,
            "nodes": Config.PICARD_NODES,
            "alpha": Config.STEP_ALPHA,
            "t_max": Config.T_MAX,
            "max_retries": Config.MAX_STEP_RETRIES,
        },
    }


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Parse a JSON run configuration.

    Raises:
        ConfigurationError: missing file, invalid JSON or a non-object document
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"Invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config {path} must be a JSON object")
    return data


def apply_overrides(data: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """
    Merge flag values into parsed JSON; None means "not given".

    Recognized keys: L, N, t_final, label, output_dir, q_c_bound, input (CSV path,
    switches the initial data to from_file), the stepper keys and the
    initial-data keys.
    """
    merged = copy.deepcopy(data)
    for key, value in overrides.items():
        if value is None:
            continue
        if key in ("L", "N"):
            merged.setdefault("grid", {})[key] = value
        elif key == "input":
            initial = merged.setdefault("initial_data", {})
            initial["kind"] = "from_file"
            initial["path"] = str(value)
            initial.setdefault("amplitude", 1.0)
        elif key in _STEPPER_KEYS:
            merged.setdefault("stepper", {})[key] = value
        elif key in _INITIAL_KEYS:
            merged.setdefault("initial_data", {})[key] = value
        else:
            merged[key] = value
    return merged


def load_run_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None
) -> RunConfig:
    """
    Build a validated RunConfig.

    Args:
        path: optional JSON config file
        overrides: command-line values (None entries are ignored)

    Returns:
        RunConfig

    Raises:
        ConfigurationError: unreadable file, unknown fields or invalid values
    """
    data = read_config_file(path) if path else {}
    env_output = os.environ.get("OUTPUT_DIR")
    if env_output:
        data = dict(data, output_dir=env_output)
    data = apply_overrides(data, overrides or {})
    try:
        config = RunConfig.from_dict(data, config_defaults())
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"Invalid run configuration: {exc}") from exc
    if not config.validate():
        raise ConfigurationError("Run configuration failed validation", context={"config": config.to_dict()})
    return config


def _assign(data: Dict[str, Any], key: str, value: Any) -> None:
    if key in _STEPPER_KEYS:
        data["stepper"][key] = value
    elif key in _INITIAL_KEYS:
        data["initial_data"][key] = value
    elif key in ("L", "N"):
        data["grid"][key] = value
    else:
        data[key] = value


def sweep_members(config: RunConfig) -> List[Dict[str, Any]]:
    """
    Expand a sweep into member configurations (cartesian product over sweep keys).

    Each member has an empty sweep and a label suffixed with its index.
    """
    keys = sorted(config.sweep)
    members = []
    for index, values in enumerate(itertools.product(*(config.sweep[k] for k in keys))):
        data = config.to_dict()
        data["sweep"] = {}
        data["label"] = f"{config.label}-{index:03d}"
        for key, value in zip(keys, values):
            _assign(data, key, value)
        members.append(data)
    return members
