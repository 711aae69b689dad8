"""
Uniform-grid calculus: Fourier differentiation and interpolation, Sobolev and
Lebesgue norms, and the antiderivative operator under the zero-mass constraint.

All operations are pure functions of immutable GridFunction inputs. Fourier
coefficients use numpy's real FFT layout with wavenumbers k_j = pi j / L.
"""

import hashlib
from typing import Iterable, Optional, Sequence

import numpy as np

from error_handling import InvalidInputError, ZeroMassViolationError
from models.data_models import Grid, GridFunction, NormReport

DEFAULT_MASS_TOL_FACTOR = 1e-8
DEFAULT_DECAY_TOL = 1e-8


def require_valid(f: GridFunction, name: str = "f") -> np.ndarray:
    """Return the samples of ``f`` or raise InvalidInputError."""
    if not f.grid.validate():
        raise InvalidInputError(name, "grid needs L > 0 and N >= 8")
    if f.values.shape != (f.grid.n_points,):
        raise InvalidInputError(
            name, f"expected {f.grid.n_points} samples, got {f.values.size}"
        )
    if not np.all(np.isfinite(f.values)):
        raise InvalidInputError(name, "samples must be finite")
    return f.values


def _rfft_weights(grid: Grid) -> np.ndarray:
    # multiplicity of each rfft mode in the full spectrum
    weights = np.full(grid.n_points // 2 + 1, 2.0)
    weights[0] = 1.0
    if grid.n_points % 2 == 0:
        weights[-1] = 1.0
    return weights


def derivative_values(values: np.ndarray, grid: Grid, order: int = 1) -> np.ndarray:
    """Spectral derivative of periodic samples."""
    if order == 0:
        return np.array(values, dtype=float)
    coeffs = np.fft.rfft(values)
    symbol = (1j * grid.wavenumbers) ** order
    if order % 2 == 1 and grid.n_points % 2 == 0:
        symbol[-1] = 0.0
    return np.fft.irfft(coeffs * symbol, n=grid.n_points)


def mean_zero_antiderivative_values(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Antiderivative with the k = 0 mode removed (mean-zero result)."""
    coeffs = np.fft.rfft(values)
    k = grid.wavenumbers
    out = np.zeros_like(coeffs)
    out[1:] = coeffs[1:] / (1j * k[1:])
    if grid.n_points % 2 == 0:
        out[-1] = 0.0
    return np.fft.irfft(out, n=grid.n_points)


def spectral_derivative(f: GridFunction, order: int = 1) -> GridFunction:
    """
    Fourier differentiation of a grid function.

    Args:
        f: periodic samples
        order: derivative order (>= 0); odd orders drop the Nyquist mode

    Returns:
        d^order f / dy^order on the same grid
    """
    if order < 0:
        raise InvalidInputError("order", "derivative order must be non-negative")
    return f.with_values(derivative_values(require_valid(f), f.grid, order))


def mean_zero_antiderivative(q: GridFunction) -> GridFunction:
    """The mean-zero spectral antiderivative (no mass check)."""
    return q.with_values(mean_zero_antiderivative_values(require_valid(q, "q"), q.grid))


def spectral_interpolate(f: GridFunction, points: Sequence[float]) -> np.ndarray:
    """
    Evaluate the trigonometric interpolant of ``f`` at arbitrary points.

    Args:
        f: periodic samples
        points: evaluation points (any real values; the interpolant is periodic)

    Returns:
        Interpolated values
    """
    values = require_valid(f)
    grid = f.grid
    coeffs = np.fft.rfft(values) * _rfft_weights(grid) / grid.n_points
    offsets = np.asarray(points, dtype=float).reshape(-1) - grid.y[0]
    phase = np.exp(1j * np.outer(offsets, grid.wavenumbers))
    return (phase @ coeffs).real


def sobolev_norm(f: GridFunction, s: float) -> float:
    """
    H^s norm computed from the discrete Fourier transform.

    Args:
        f: grid function
        s: Sobolev order (>= 0)

    Returns:
        (sum_k (1 + k^2)^s |f_k|^2 dk)^{1/2}, equal to the L^2 norm at s = 0

    Raises:
        InvalidInputError: non-finite samples or negative s
    """
    if s < 0 or not np.isfinite(s):
        raise InvalidInputError("s", "Sobolev order must be finite and non-negative")
    values = require_valid(f)
    grid = f.grid
    coeffs = np.fft.rfft(values)
    weights = _rfft_weights(grid) * (1.0 + grid.wavenumbers ** 2) ** s
    total = np.sum(weights * np.abs(coeffs) ** 2) * grid.spacing / grid.n_points
    return float(np.sqrt(total))


def l2_norm(f: GridFunction) -> float:
    return float(np.sqrt(f.grid.spacing * np.sum(require_valid(f) ** 2)))


def mass_residual(q: GridFunction) -> float:
    """
    Discrete mass h * sum(q_j) (rectangle rule, exact trapezoid under periodicity).
    """
    return float(q.grid.spacing * np.sum(require_valid(q, "q")))


def mass_tolerance(q: GridFunction, factor: float = DEFAULT_MASS_TOL_FACTOR) -> float:
    """Default tolerance factor * ||q||_{L^2} * sqrt(2L)."""
    return factor * l2_norm(q) * np.sqrt(q.grid.length)


def check_decay(q: GridFunction, decay_tol: float = DEFAULT_DECAY_TOL, logger=None) -> float:
    """
    Endpoint-decay guard.

    Args:
        q: grid function
        decay_tol: allowed endpoint size relative to the sup norm
        logger: optional StructuredLogger for the warning

    Returns:
        max(|q(-L)|, |q(L - h)|) / ||q||_inf (0 for the zero function)
    """
    values = require_valid(q, "q")
    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        return 0.0
    ratio = max(abs(values[0]), abs(values[-1])) / peak
    if ratio > decay_tol and logger:
        logger.log_warning(
            "Data does not decay at the grid ends; line-faithful normalization is approximate",
            {"endpoint_ratio": ratio, "decay_tol": decay_tol, "half_width": q.grid.half_width}
        )
    return ratio


def antiderivative(
    q: GridFunction,
    mass_tol: Optional[float] = None,
    decay_tol: float = DEFAULT_DECAY_TOL,
    logger=None
) -> GridFunction:
    """
    The antiderivative p with p_y = q normalized as p = -int_y^inf q.

    The mean-zero spectral antiderivative is shifted so that the average of p
    at the two end samples vanishes.

    Args:
        q: zero-mass grid function
        mass_tol: tolerance on |h sum q| (default 1e-8 ||q||_{L^2} sqrt(2L))
        decay_tol: endpoint decay tolerance, relative to ||q||_inf
        logger: optional StructuredLogger

    Returns:
        p on the same grid

    Raises:
        ZeroMassViolationError: mass residual above tolerance
    """
    values = require_valid(q, "q")
    tolerance = mass_tolerance(q) if mass_tol is None else mass_tol
    residual = mass_residual(q)
    if abs(residual) > tolerance:
        raise ZeroMassViolationError(residual, tolerance, {"half_width": q.grid.half_width})

    check_decay(q, decay_tol, logger)
    p = mean_zero_antiderivative_values(values, q.grid)
    return q.with_values(p - 0.5 * (p[0] + p[-1]))


def x_norm(q: GridFunction, s: float = 1.0, mass_tol: Optional[float] = None) -> float:
    """
    ||q||_{X^s} = ||q||_{H^s} + ||p||_{L^2}.

    Raises:
        ZeroMassViolationError: propagated from antiderivative
    """
    return sobolev_norm(q, s) + sobolev_norm(antiderivative(q, mass_tol=mass_tol), 0.0)


def norm_report(
    f: GridFunction,
    orders: Iterable[float] = (0.0, 1.0, 2.0),
    mass_tol: Optional[float] = None
) -> NormReport:
    """
    Collect L^2, sup and H^s norms; H^{-1} only when the mass residual passes.
    """
    values = require_valid(f)
    hs = {float(s): sobolev_norm(f, s) for s in orders}
    hminus1 = None
    tolerance = mass_tolerance(f) if mass_tol is None else mass_tol
    if abs(mass_residual(f)) <= tolerance:
        hminus1 = sobolev_norm(antiderivative(f, mass_tol=tolerance), 0.0)
    return NormReport(
        l2=sobolev_norm(f, 0.0),
        linf=float(np.max(np.abs(values))),
        hs=hs,
        hminus1=hminus1,
    )


def grid_function_digest(f: GridFunction) -> str:
    """SHA-256 digest of the raw float64 samples."""
    digest = hashlib.sha256()
    digest.update(np.ascontiguousarray(f.values, dtype="<f8").tobytes())
    return digest.hexdigest()
