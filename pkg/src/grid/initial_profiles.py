"""
Initial profiles q0(y) used by the CLI and the test-suite.

Every synthetic profile is odd about its center, so its discrete mass vanishes
up to round-off and the antiderivative is defined.
"""

from pathlib import Path
from typing import Union

import numpy as np

from error_handling import InvalidInputError
from models.data_models import Grid, GridFunction


def gaussian_derivative(
    grid: Grid,
    amplitude: float,
    center: float = 0.0,
    width: float = 1.0
) -> GridFunction:
    """
    q0 = -2 A s exp(-s^2), s = (y - center) / width; its antiderivative is A width exp(-s^2).
    """
    if width <= 0:
        raise InvalidInputError("width", "must be positive")
    s = (np.asarray(grid.y) - center) / width
    return GridFunction(grid=grid, values=-2.0 * amplitude * s * np.exp(-s ** 2))


def single_mode(grid: Grid, amplitude: float, mode: int = 1) -> GridFunction:
    """q0 = A sin(mode pi y / L); periodic, does not decay at the grid ends."""
    try:
        integral = float(mode).is_integer()
    except (TypeError, ValueError):
        integral = False
    if not integral or mode < 1:
        raise InvalidInputError("mode", f"must be a positive integer, got {mode!r}")
    k = np.pi * int(mode) / grid.half_width
    return GridFunction(grid=grid, values=amplitude * np.sin(k * np.asarray(grid.y)))


def wave_packet(
    grid: Grid,
    amplitude: float,
    width: float = 2.0,
    wavenumber: float = 5.0,
    center: float = 0.0
) -> GridFunction:
    """
    Band-pass packet q0 = A exp(-s^2) sin(k0 (y - center)), s = (y - center) / width.

    Its Fourier transform near k = 0 is of size exp(-(k0 width / 2)^2), so the
    moments that distinguish the periodic and the whole-line problems vanish to
    round-off for the default parameters.
    """
    if width <= 0:
        raise InvalidInputError("width", "must be positive")
    offset = np.asarray(grid.y) - center
    s = offset / width
    return GridFunction(grid=grid, values=amplitude * np.exp(-s ** 2) * np.sin(wavenumber * offset))


def from_file(path: Union[str, Path]) -> GridFunction:
    """Read a `y,value` CSV written by OutputFormatter."""
    from output_formatter import read_grid_function_csv

    return read_grid_function_csv(path)


def build_profile(kind: str, grid: Grid, amplitude: float, parameters=None, path=None) -> GridFunction:
    """
    Dispatch on the initial-data kind.

    Args:
        kind: gaussian_derivative, single_mode, wave_packet or from_file
        grid: target grid (ignored for from_file, whose grid comes from the file)
        amplitude: amplitude A (from_file data is multiplied by it)
        parameters: kind-specific keyword parameters
        path: CSV path for from_file

    Returns:
        Initial q0
    """
    parameters = dict(parameters or {})
    if kind == "gaussian_derivative":
        return gaussian_derivative(grid, amplitude, **parameters)
    if kind == "single_mode":
        return single_mode(grid, amplitude, **parameters)
    if kind == "wave_packet":
        return wave_packet(grid, amplitude, **parameters)
    if kind == "from_file":
        if not path:
            raise InvalidInputError("path", "from_file needs a CSV path")
        data = from_file(path)
        return data.with_values(amplitude * data.values)
    raise InvalidInputError("kind", f"unknown initial data kind '{kind}'")
