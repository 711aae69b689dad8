"""
Output Formatter for Simulation Artifacts

This module writes the machine-readable outputs of the command-line runner:
CSV tables with floats at a fixed number of significant digits and JSON
documents with sorted keys, so identical runs produce identical files.
It also reads the `y,value` grid-function CSV format.
"""

import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from error_handling import InvalidInputError
from models.data_models import (
    ConvergenceStudy,
    Grid,
    GridFunction,
    KernelBoundsRow,
    Trajectory,
    XFields,
)

TRAJECTORY_COLUMNS = ["t", "E_minus1", "E_0", "E_1", "q_inf", "mass_residual", "x1_norm", "flag"]
KERNEL_COLUMNS = ["t", "sup_K", "l2_K", "sup_J", "C_inf_fit", "C_l2_fit"]
XFIELD_COLUMNS = ["x", "u", "u_x", "u_xx"]
GRID_FUNCTION_COLUMNS = ["y", "value"]
UNDEFINED = "undefined"


def format_float(value: Any, digits: int = 17) -> str:
    """Render a number at ``digits`` significant digits; None becomes 'undefined'."""
    if value is None:
        return UNDEFINED
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{digits}g}"
    return str(value)


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, enums and None-bounds to plain JSON types."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if hasattr(value, "value") and not isinstance(value, (str, int)):
        return value.value
    return value


class OutputFormatter:
    """
    Writes CSV and JSON artifacts into one output directory.

    Features:
    - Fixed column order per artifact type
    - Floats at a configurable number of significant digits (CSV)
    - Sorted-key JSON with "undefined" for missing bounds
    - Automatic directory creation
    """

    def __init__(self, output_dir: Union[str, Path] = "./outputs", significant_digits: int = 17):
        """
        Initialize the formatter.

        Args:
            output_dir: directory for all artifacts (created if missing)
            significant_digits: digits for CSV floats
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.digits = significant_digits

    def _path(self, filename: str) -> Path:
        if not filename or ".." in filename or filename.startswith(("/", "\\")):
            raise InvalidInputError("filename", f"unsafe output name '{filename}'")
        return self.output_dir / filename

    def write_csv(self, filename: str, columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> Path:
        """
        Write rows as CSV with the given column order.

        Returns:
            Path of the written file
        """
        path = self._path(filename)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_float(row.get(column), self.digits) for column in columns])
        return path

    def write_json(self, filename: str, data: Dict[str, Any]) -> Path:
        """Write a JSON document with sorted keys."""
        path = self._path(filename)
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(to_jsonable(data), handle, indent=2, sort_keys=True)
            handle.write("\n")
        return path

    def write_trajectory(self, trajectory: Trajectory, filename: str) -> Path:
        return self.write_csv(filename, TRAJECTORY_COLUMNS, (r.to_row() for r in trajectory.records))

    def write_kernel_table(self, rows: List[KernelBoundsRow], filename: str) -> Path:
        return self.write_csv(filename, KERNEL_COLUMNS, (row.to_dict() for row in rows))

    def write_xfields(self, xfields: XFields, filename: str) -> Path:
        rows = (
            {"x": x, "u": u, "u_x": ux, "u_xx": uxx}
            for x, u, ux, uxx in zip(xfields.x, xfields.u, xfields.u_x, xfields.u_xx)
        )
        return self.write_csv(filename, XFIELD_COLUMNS, rows)

    def write_convergence(self, study: ConvergenceStudy, filename: str) -> Path:
        rows = study.to_rows()
        columns = list(rows[0].keys()) if rows else ["parameter", "error"]
        return self.write_csv(filename, columns, rows)

    def write_grid_function(self, f: GridFunction, filename: str) -> Path:
        return write_grid_function_csv(f, self._path(filename), self.digits)


def write_grid_function_csv(f: GridFunction, path: Union[str, Path], digits: int = 17) -> Path:
    """Write samples in the `y,value` format."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(GRID_FUNCTION_COLUMNS)
        for y, value in zip(f.grid.y, f.values):
            writer.writerow([format_float(y, digits), format_float(value, digits)])
    return path


def read_grid_function_csv(path: Union[str, Path], spacing_tol: float = 1e-9) -> GridFunction:
    """
    Read a `y,value` CSV on a uniform periodic grid y_j = -L + j h, h = 2L/N.

    Raises:
        InvalidInputError: missing file, bad header, non-numeric or non-finite
            entries, fewer than 8 rows, non-uniform spacing, or a grid that is
            not symmetric about 0
    """
    path = Path(path)
    if not path.is_file():
        raise InvalidInputError("path", f"no such file '{path}'")
    with open(path, newline="", encoding="utf-8") as handle:
        rows = [row for row in csv.reader(handle) if row]
    if not rows or [cell.strip() for cell in rows[0]] != GRID_FUNCTION_COLUMNS:
        raise InvalidInputError("path", f"expected header 'y,value' in '{path}'")
    body = rows[1:]
    if len(body) < 8:
        raise InvalidInputError("path", "need at least 8 samples")
    try:
        data = np.array([[float(cell) for cell in row] for row in body])
    except ValueError as exc:
        raise InvalidInputError("path", f"non-numeric entry: {exc}") from exc
    if data.ndim != 2 or data.shape[1] != 2:
        raise InvalidInputError("path", "every row needs exactly two columns")
    if not np.all(np.isfinite(data)):
        raise InvalidInputError("path", "entries must be finite")

    y, values = data[:, 0], data[:, 1]
    n = y.size
    half_width = -float(y[0])
    if half_width <= 0:
        raise InvalidInputError("path", "first sample must be y = -L with L > 0")
    grid = Grid(half_width=half_width, n_points=n)
    if np.max(np.abs(y - grid.y)) > spacing_tol * max(1.0, half_width):
        raise InvalidInputError("path", "samples must be uniform with y_j = -L + 2 L j / N")
    return GridFunction(grid=grid, values=values)
