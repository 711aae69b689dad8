"""
Unit tests for the output formatter.
"""

import csv
import json

import numpy as np
import pytest

from error_handling import InvalidInputError
from grid.initial_profiles import gaussian_derivative
from models.data_models import (
    ConservedTriple,
    ConvergenceStudy,
    Grid,
    KernelBoundsRow,
    Trajectory,
    TrajectoryRecord,
    Verdict,
)
from output_formatter import (
    KERNEL_COLUMNS,
    TRAJECTORY_COLUMNS,
    OutputFormatter,
    format_float,
    read_grid_function_csv,
    to_jsonable,
    write_grid_function_csv,
)


@pytest.fixture
def formatter(tmp_path):
    return OutputFormatter(tmp_path / "out")


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


class TestFormatting:
    """Tests for scalar formatting and JSON conversion."""

    def test_float_round_trip(self):
        """17 significant digits reproduce every double."""
        for value in (0.1, 1 / 3, 2.0 ** -1074, 1e300, -np.pi):
            assert float(format_float(value)) == value

    def test_special_values(self):
        """None is 'undefined'; ints and bools keep their form."""
        assert format_float(None) == "undefined"
        assert format_float(3) == "3"
        assert format_float(np.int64(4)) == "4"
        assert format_float(True) == "true"
        assert format_float("completed") == "completed"
        assert format_float(0.5, digits=3) == "0.5"

    def test_to_jsonable(self):
        """numpy types, enums and non-finite floats become JSON types."""
        data = to_jsonable({
            "array": np.array([1.0, 2.0]),
            "flag": np.bool_(True),
            "count": np.int32(2),
            "verdict": Verdict.CERTIFIED_SHARP,
            "nan": float("nan"),
            1.5: (np.float64(0.25),),
        })
        assert data == {
            "array": [1.0, 2.0],
            "flag": True,
            "count": 2,
            "verdict": "certified_sharp",
            "nan": "nan",
            "1.5": [0.25],
        }
        json.dumps(data)


class TestOutputFormatter:
    """Tests for artifact writers."""

    def test_creates_directory(self, tmp_path):
        """The output directory is created on demand."""
        formatter = OutputFormatter(tmp_path / "a" / "b")
        assert formatter.output_dir.is_dir()

    def test_unsafe_names(self, formatter):
        """Paths escaping the output directory are rejected."""
        with pytest.raises(InvalidInputError):
            formatter.write_json("../escape.json", {})
        with pytest.raises(InvalidInputError):
            formatter.write_json("/abs.json", {})

    def test_write_json_sorted_and_exact(self, formatter):
        """Keys are sorted and floats survive exactly."""
        path = formatter.write_json("doc.json", {"b": 0.1 + 0.2, "a": None})
        text = path.read_text(encoding="utf-8")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text)["b"] == 0.1 + 0.2
        assert json.loads(text)["a"] is None

    def test_write_trajectory(self, formatter):
        """One row per record in the fixed column order."""
        trajectory = Trajectory(grid=Grid(half_width=10.0, n_points=64))
        trajectory.records = [
            TrajectoryRecord(0.0, "d", ConservedTriple(0.1, 0.2, 0.3), 0.1, 0.0, 0.5),
            TrajectoryRecord(0.5, "d", ConservedTriple(0.1, 0.2, 0.3), 0.1, 1e-17, 0.5, "completed"),
        ]
        rows = read_rows(formatter.write_trajectory(trajectory, "run_trajectory.csv"))
        assert rows[0] == TRAJECTORY_COLUMNS
        assert len(rows) == 3
        assert rows[2][-1] == "completed"
        assert float(rows[2][TRAJECTORY_COLUMNS.index("E_1")]) == 0.3

    def test_write_kernel_table(self, formatter):
        """Kernel rows keep only the table columns."""
        row = KernelBoundsRow(t=1.0, sup_K=1.0, l2_K=0.99, sup_J=1.0, C_inf_fit=1.0, C_l2_fit=1.0,
                              window=400.0, tail_estimate=0.01)
        rows = read_rows(formatter.write_kernel_table([row], "k.csv"))
        assert rows[0] == KERNEL_COLUMNS
        assert rows[1][0] == "1"

    def test_write_convergence(self, formatter):
        """The ladder column is named after the study."""
        study = ConvergenceStudy(kind="mol_dt", parameters=[0.1, 0.05], errors=[1e-4, 6.25e-6], fitted_order=4.0)
        rows = read_rows(formatter.write_convergence(study, "c.csv"))
        assert rows[0] == ["dt", "error"]
        assert float(rows[2][1]) == 6.25e-6


class TestGridFunctionCsv:
    """Tests for the y,value format."""

    def test_round_trip(self, tmp_path):
        """Written samples read back bit for bit on the same grid."""
        grid = Grid(half_width=12.5, n_points=128)
        q = gaussian_derivative(grid, 0.3)
        restored = read_grid_function_csv(write_grid_function_csv(q, tmp_path / "q.csv"))
        assert restored.grid == grid
        assert np.array_equal(restored.values, q.values)

    @pytest.mark.parametrize("content", [
        "x,value\n",
        "y,value\n-1,0\n0,0\n",
        "y,value\n" + "".join(f"{-4 + j},abc\n" for j in range(8)),
        "y,value\n" + "".join(f"{-4 + j},inf\n" for j in range(8)),
        "y,value\n" + "".join(f"{j},0\n" for j in range(8)),
        "y,value\n" + "".join(f"{-4 + j + (0.3 if j == 5 else 0)},0\n" for j in range(8)),
        "y,value\n" + "".join(f"{-4 + j},0,1\n" for j in range(8)),
    ])
    def test_malformed(self, tmp_path, content):
        """Bad headers, short files, bad entries and uneven spacing are rejected."""
        path = tmp_path / "bad.csv"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(InvalidInputError):
            read_grid_function_csv(path)

    def test_missing_file(self, tmp_path):
        """A missing file is an input error."""
        with pytest.raises(InvalidInputError):
            read_grid_function_csv(tmp_path / "none.csv")
