"""
Configuration module for loading environment variables and application settings.

This module provides a centralized configuration management system that loads
numerical defaults, tolerances and output locations from environment variables
with sensible defaults. Run-specific settings (grid, initial data, stepper)
live in JSON run configs; anything missing there falls back to this module.
"""

import os
from typing import Dict
from dotenv import load_dotenv

from error_handling import ConfigurationError

# Load environment variables from .env file
load_dotenv()


class Config:
    """
    Application configuration loaded from environment variables.

    All configuration values are loaded from environment variables so that
    experiment defaults can change without touching code.
    """

    # Grid defaults: domain [-L, L) with N samples
    GRID_HALF_WIDTH: float = float(os.getenv("GRID_HALF_WIDTH", "20.0"))
    GRID_POINTS: int = int(os.getenv("GRID_POINTS", "1024"))

    # Constraint and tolerances
    Q_C_BOUND: float = float(os.getenv("Q_C_BOUND", "0.95"))
    MASS_TOL_FACTOR: float = float(os.getenv("MASS_TOL_FACTOR", "1e-8"))
    DECAY_TOL: float = float(os.getenv("DECAY_TOL", "1e-8"))

    # Time stepping
    DEFAULT_DT: float = float(os.getenv("DEFAULT_DT", "1e-3"))
    STEP_ALPHA: float = float(os.getenv("STEP_ALPHA", "0.5"))
    T_MAX: float = float(os.getenv("T_MAX", "1.0"))
    STEP_RESOLUTION: float = float(os.getenv("STEP_RESOLUTION", "1e-4"))
    MAX_STEP_RETRIES: int = int(os.getenv("MAX_STEP_RETRIES", "3"))

    # Picard iteration
    PICARD_TOL: float = float(os.getenv("PICARD_TOL", "1e-10"))
    PICARD_MAX_ITER: int = int(os.getenv("PICARD_MAX_ITER", "60"))
    PICARD_NODES: int = int(os.getenv("PICARD_NODES", "4"))

    # Constant estimation
    CONSTANTS_SEED: int = int(os.getenv("CONSTANTS_SEED", "20240101"))
    CONSTANTS_SAMPLES: int = int(os.getenv("CONSTANTS_SAMPLES", "48"))

    # Output Configuration
    OUTPUT_DIR: str = os.getenv("OUTPUT_DIR", "./outputs")
    SIGNIFICANT_DIGITS: int = int(os.getenv("SIGNIFICANT_DIGITS", "17"))

    # Logging Configuration
    LOG_DIR: str = os.getenv("LOG_DIR", "./logs")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    @classmethod
    def validate(cls) -> None:
        """
        Validate that configuration values are usable.

        Raises:
            ConfigurationError: If a value is outside its admissible range.
        """
        if cls.GRID_HALF_WIDTH <= 0:
            raise ConfigurationError("GRID_HALF_WIDTH must be positive")
        if cls.GRID_POINTS < 8:
            raise ConfigurationError("GRID_POINTS must be at least 8")
        if not 0 < cls.Q_C_BOUND < 1:
            raise ConfigurationError("Q_C_BOUND must lie in (0, 1)")
        if not 0 < cls.STEP_ALPHA < 1:
            raise ConfigurationError("STEP_ALPHA must lie in (0, 1)")

        for name, value in cls.get_tolerances().items():
            if value <= 0:
                raise ConfigurationError(
                    f"{name} must be positive, got {value}",
                    context={"setting": name}
                )

        if cls.PICARD_NODES < 2:
            raise ConfigurationError("PICARD_NODES must be at least 2")
        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR"):
            raise ConfigurationError(f"Unknown LOG_LEVEL '{cls.LOG_LEVEL}'")

    @classmethod
    def get_tolerances(cls) -> Dict[str, float]:
        """
        Get all tolerance-like settings as a dictionary.

        Returns:
            Dictionary mapping setting names to values.
        """
        return {
            "MASS_TOL_FACTOR": cls.MASS_TOL_FACTOR,
            "DECAY_TOL": cls.DECAY_TOL,
            "DEFAULT_DT": cls.DEFAULT_DT,
            "T_MAX": cls.T_MAX,
            "STEP_RESOLUTION": cls.STEP_RESOLUTION,
            "PICARD_TOL": cls.PICARD_TOL,
        }
