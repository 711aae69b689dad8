"""
Grid module: uniform periodic grids, spectral calculus, norms and initial profiles.
"""

from .grid_core import (
    antiderivative,
    check_decay,
    derivative_values,
    grid_function_digest,
    l2_norm,
    mass_residual,
    mass_tolerance,
    mean_zero_antiderivative,
    mean_zero_antiderivative_values,
    norm_report,
    require_valid,
    sobolev_norm,
    spectral_derivative,
    spectral_interpolate,
    x_norm,
)
from .initial_profiles import build_profile, gaussian_derivative, single_mode, wave_packet

__all__ = [
    "antiderivative",
    "check_decay",
    "derivative_values",
    "grid_function_digest",
    "l2_norm",
    "mass_residual",
    "mass_tolerance",
    "mean_zero_antiderivative",
    "mean_zero_antiderivative_values",
    "norm_report",
    "require_valid",
    "sobolev_norm",
    "spectral_derivative",
    "spectral_interpolate",
    "x_norm",
    "build_profile",
    "gaussian_derivative",
    "single_mode",
    "wave_packet",
]
