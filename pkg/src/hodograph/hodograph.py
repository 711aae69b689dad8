"""
Coordinate change between the sine-Gordon variables (y, q, p) and the
short-pulse variables (x, u):

    dx/dy = sqrt(1 - q^2),   u = p,   u_x = q / sqrt(1 - q^2),   u_xx = q_y / (1 - q^2)^2.

The map is rebuilt per snapshot with x(y_min) = anchor (default y_min). On the
periodic y-grid it is x(y) = anchor + (y - y_min) m + periodic part, with m the
mean slope, so one y-period maps onto one x-period of length 2 L m.
"""

from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from error_handling import DomainError, InvalidInputError, NonInvertibleMapError
from evolution.sg_evolution import cos_factor, f_nonlinear
from grid.grid_core import (
    antiderivative,
    derivative_values,
    mean_zero_antiderivative_values,
    require_valid,
    spectral_interpolate,
)
from models.data_models import (
    ConservedFamily,
    ConservedTriple,
    EquivalenceReport,
    Grid,
    GridFunction,
    HodographFields,
    NormRatio,
    SgState,
    XFields,
)

NEWTON_ITERATIONS = 12
_RATIO_SLACK = 1e-8


def inverse_q(u_x):
    """q = u_x / sqrt(1 + u_x^2), the inverse of u_x = q / sqrt(1 - q^2)."""
    array = np.asarray(u_x, dtype=float)
    if not np.all(np.isfinite(array)):
        raise InvalidInputError("u_x", "must be finite")
    value = array / np.sqrt(1.0 + array * array)
    return float(value) if np.ndim(u_x) == 0 else value


def build_map(state: SgState, anchor: Optional[float] = None) -> HodographFields:
    """
    Build x(y) and the short-pulse fields of one snapshot.

    Args:
        state: sine-Gordon state
        anchor: x at the leftmost y sample (default: that y)

    Returns:
        HodographFields aligned with the y-grid

    Raises:
        NonInvertibleMapError: max|q| >= 1, or x(y) fails to increase
    """
    grid = state.grid
    q = state.q.values
    peak = state.max_abs_q
    if peak >= 1.0:
        raise NonInvertibleMapError(peak)
    y = grid.y
    y0 = float(y[0])
    anchor = y0 if anchor is None else float(anchor)

    f = f_nonlinear(q)
    mean_f = float(np.mean(f))
    periodic = mean_zero_antiderivative_values(f - mean_f, grid)
    x_of_y = anchor + (y - y0) * (1.0 - mean_f) - (periodic - periodic[0])

    slope = 1.0 - f
    q_y = derivative_values(q, grid, 1)
    fields = HodographFields(
        grid=grid,
        t=state.t,
        anchor=anchor,
        x_of_y=x_of_y,
        u=state.p.values,
        u_x=q / slope,
        u_xx=q_y / slope ** 4,
        q=q,
        slope=slope,
        mean_slope=1.0 - mean_f,
    )
    if not fields.validate():
        raise NonInvertibleMapError(peak, {"reason": "x(y) is not strictly increasing"})
    return fields


def _periodic_part(fields: HodographFields) -> GridFunction:
    y = fields.grid.y
    return GridFunction(grid=fields.grid, values=fields.x_of_y - fields.anchor - (y - y[0]) * fields.mean_slope)


def _map_at(fields: HodographFields, periodic: GridFunction, y_points: np.ndarray) -> np.ndarray:
    y0 = fields.grid.y[0]
    return fields.anchor + (y_points - y0) * fields.mean_slope + spectral_interpolate(periodic, y_points)


def inverse_map(fields: HodographFields, x_points: Sequence[float]) -> np.ndarray:
    """
    y(x) for x in one period [anchor, anchor + period).

    A monotone PCHIP inverse of the samples seeds Newton's method on the
    spectral interpolant of x(y).

    Raises:
        DomainError: a target lies outside the period
    """
    x_points = np.asarray(x_points, dtype=float).reshape(-1)
    grid = fields.grid
    period = fields.x_period
    if x_points.size and (x_points.min() < fields.anchor or x_points.max() >= fields.anchor + period):
        raise DomainError(
            "inverse_map",
            f"x outside [{fields.anchor:.6g}, {fields.anchor + period:.6g})"
        )
    y = grid.y
    x_ext = np.append(fields.x_of_y, fields.anchor + period)
    y_ext = np.append(y, y[0] + grid.length)
    guess = PchipInterpolator(x_ext, y_ext)(x_points)

    periodic = _periodic_part(fields)
    slope = GridFunction(grid=grid, values=fields.slope)
    for _ in range(NEWTON_ITERATIONS):
        correction = (_map_at(fields, periodic, guess) - x_points) / spectral_interpolate(slope, guess)
        guess = guess - correction
        if not correction.size or np.max(np.abs(correction)) < 1e-14 * grid.length:
            break
    return guess


def evaluate_at_x(
    fields: HodographFields,
    x_points: Sequence[float]
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """u, u_x, u_xx at arbitrary x inside one period of the map."""
    y_points = inverse_map(fields, x_points)
    grid = fields.grid
    return tuple(
        spectral_interpolate(GridFunction(grid=grid, values=values), y_points)
        for values in (fields.u, fields.u_x, fields.u_xx)
    )


def x_grid(xfields: XFields) -> Grid:
    """Periodic grid with the spacing and size of the x samples."""
    return Grid(half_width=0.5 * xfields.period, n_points=xfields.x.size)


def interpolate_x_field(xfields: XFields, values: np.ndarray, x_points: Sequence[float]) -> np.ndarray:
    """Trigonometric interpolant of samples on the x-grid, at arbitrary x."""
    grid = x_grid(xfields)
    offsets = np.asarray(x_points, dtype=float) - xfields.x[0]
    return spectral_interpolate(GridFunction(grid=grid, values=values), offsets + grid.y[0])


def resample_to_x(fields: HodographFields, n_x: Optional[int] = None) -> XFields:
    """
    Sample u, u_x, u_xx on a uniform x-grid covering one period of the map.

    The monotone cubic (PCHIP) inverse of the x(y) samples is only the seed:
    y(x) is then solved by Newton's method on the trigonometric interpolant of
    x(y), and the fields are evaluated by trigonometric interpolation on the
    y-grid. Spectral accuracy is kept through the resampling; a PCHIP-only
    resampler is limited to O(h^4).

    Args:
        fields: map and fields on the y-grid
        n_x: number of x samples (default: the y-grid size)

    Returns:
        XFields with the chain-rule mismatch max|d/dx u - u_x|
    """
    n_x = fields.grid.n_points if n_x is None else int(n_x)
    if n_x < 8:
        raise InvalidInputError("n_x", "need at least 8 x samples")
    spacing = fields.x_period / n_x
    x = fields.anchor + spacing * np.arange(n_x)
    u, u_x, u_xx = evaluate_at_x(fields, x)
    grid = Grid(half_width=0.5 * fields.x_period, n_points=n_x)
    mismatch = float(np.max(np.abs(derivative_values(u, grid, 1) - u_x)))
    return XFields(
        x=x,
        u=u,
        u_x=u_x,
        u_xx=u_xx,
        t=fields.t,
        anchor=fields.anchor,
        spacing=spacing,
        derivative_mismatch=mismatch,
    )


def conserved_H(xfields: XFields) -> ConservedTriple:
    """
    H_{-1} = int u^2, H_0 = int u_x^2 / (1 + sqrt(1 + u_x^2)), H_1 = int u_xx^2 / (1 + u_x^2)^{5/2}
    by the periodic rectangle rule, with a half-resolution error estimate.
    """
    if not xfields.validate():
        raise InvalidInputError("xfields", "samples must be finite and aligned")
    u, u_x, u_xx = xfields.u, xfields.u_x, xfields.u_xx
    lift = 1.0 + u_x * u_x
    densities = (
        u * u,
        u_x * u_x / (1.0 + np.sqrt(lift)),
        u_xx * u_xx / lift ** 2.5,
    )
    dx = xfields.spacing
    totals = []
    error = 0.0
    for density in densities:
        full = dx * float(np.sum(density))
        totals.append(full)
        error = max(error, abs(full - 2.0 * dx * float(np.sum(density[::2]))))
    return ConservedTriple(
        e_minus1=totals[0],
        e_0=totals[1],
        e_1=totals[2],
        family=ConservedFamily.H,
        quadrature_error=error,
    )


def _ratio_entry(name: str, numerator: float, denominator: float, lower: float, upper: float) -> NormRatio:
    ratio = numerator / denominator if denominator > 0 else 1.0
    holds = lower * (1.0 - _RATIO_SLACK) <= ratio <= upper * (1.0 + _RATIO_SLACK)
    return NormRatio(name=name, ratio=float(ratio), lower=float(lower), upper=float(upper), holds=bool(holds))


def equivalence_report(state: SgState, fields: HodographFields) -> EquivalenceReport:
    """
    Norm equivalences between u in x and (p, q) in y, with q_c = max|q|:

        sqrt(1-q_c^2) |p|^2   <= |u|^2    <= |p|^2
        |q|^2                 <= |u_x|^2  <= |q|^2 / sqrt(1-q_c^2)
        |q_y|^2               <= |u_xx|^2 <= |q_y|^2 / (1-q_c^2)^{7/2}

    The x-integrals are evaluated in y through dx = sqrt(1-q^2) dy.
    """
    if fields.grid != state.grid:
        raise InvalidInputError("fields", "fields and state live on different grids")
    h = state.grid.spacing
    q = state.q.values
    p = state.p.values
    w = fields.slope
    q_y = derivative_values(q, state.grid, 1)
    q_c = state.max_abs_q
    w_min = float(np.sqrt(1.0 - q_c ** 2))
    entries = [
        _ratio_entry("u_L2", h * np.sum(w * p * p), h * np.sum(p * p), w_min, 1.0),
        _ratio_entry("u_x_L2", h * np.sum(q * q / w), h * np.sum(q * q), 1.0, 1.0 / w_min),
        _ratio_entry("u_xx_L2", h * np.sum(q_y * q_y / w ** 7), h * np.sum(q_y * q_y), 1.0, w_min ** -7),
    ]
    return EquivalenceReport(q_c=q_c, entries=entries)


def zero_mass_check_u(fields: Union[HodographFields, XFields]) -> float:
    """int u dx over one period (exact change of variables on the y-grid)."""
    if isinstance(fields, XFields):
        return float(fields.spacing * np.sum(fields.u))
    return float(fields.grid.spacing * np.sum(fields.u * fields.slope))


def initial_u_mass(q0: GridFunction, decay_tol: float = 1e-8, logger=None) -> float:
    """
    int u0 dx with u0 the decaying antiderivative p0 = -int_y^inf q0.

    Unlike evolved states, initial data may carry u-mass.
    """
    values = require_valid(q0, "q0")
    p0 = antiderivative(q0, decay_tol=decay_tol, logger=logger)
    return float(q0.grid.spacing * np.sum(p0.values * cos_factor(values)))


def map_time_derivative(state: SgState) -> GridFunction:
    """dx/dt at fixed y under the x(y_min) = anchor convention: -(p^2 - p(y_min)^2) / 2."""
    p = state.p.values
    return state.p.with_values(-0.5 * (p * p - p[0] ** 2))


def fields_h2_norm(xfields: XFields) -> float:
    """(|u|^2 + |u_x|^2 + |u_xx|^2)^{1/2} on the x-grid."""
    total = np.sum(xfields.u ** 2 + xfields.u_x ** 2 + xfields.u_xx ** 2)
    return float(np.sqrt(xfields.spacing * total))
