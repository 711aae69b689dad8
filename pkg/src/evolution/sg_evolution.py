"""
Sine-Gordon evolution in characteristic coordinates, in the variable q = sin(w):

    q_t = sqrt(1 - q^2) p,    p_y = q.

On the periodic grid the constant in p is fixed by the zero-flux condition
sum sqrt(1 - q^2) p = 0, which keeps the mass of q at zero under the flow.
This module holds the state constructors, the right-hand side and its linear /
nonlinear splitting, the method-of-lines stepper, the conserved quantities
and the discrete balance laws.
"""

from typing import Dict, List, Optional, Sequence

import numpy as np

from error_handling import (
    ConstraintViolationError,
    InvalidInputError,
    StepRejectedError,
    ZeroMassViolationError,
)
from grid.grid_core import (
    derivative_values,
    mass_residual,
    mass_tolerance,
    mean_zero_antiderivative_values,
    require_valid,
    sobolev_norm,
)
from models.data_models import (
    ConservedFamily,
    ConservedTriple,
    EquivalenceReport,
    Grid,
    GridFunction,
    NormRatio,
    SgState,
)

DEFAULT_Q_C_BOUND = 0.95
_BOUND_SLACK = 1e-10


def f_nonlinear(q):
    """
    f(q) = 1 - sqrt(1 - q^2) in the cancellation-free form q^2 / (1 + sqrt(1 - q^2)).

    Raises:
        ConstraintViolationError: |q| > 1 anywhere
    """
    array = np.asarray(q, dtype=float)
    peak = float(np.max(np.abs(array))) if array.size else 0.0
    if peak > 1.0:
        raise ConstraintViolationError(peak, 1.0)
    value = array * array / (1.0 + np.sqrt(1.0 - array * array))
    return float(value) if np.ndim(q) == 0 else value


def cos_factor(q):
    """sqrt(1 - q^2), evaluated as 1 - f(q)."""
    value = 1.0 - np.asarray(f_nonlinear(q))
    return float(value) if np.ndim(q) == 0 else value


def zero_flux_values(values: np.ndarray, grid: Grid) -> np.ndarray:
    p = mean_zero_antiderivative_values(values, grid)
    weight = cos_factor(values)
    return p - np.sum(weight * p) / np.sum(weight)


def zero_flux_antiderivative(q: GridFunction) -> GridFunction:
    """
    Antiderivative p of q with sum sqrt(1 - q^2) p = 0.

    Raises:
        ConstraintViolationError: |q| >= 1 everywhere is degenerate; |q| > 1 anywhere
    """
    values = require_valid(q, "q")
    weight = cos_factor(values)
    if not np.any(weight > 0):
        raise ConstraintViolationError(float(np.max(np.abs(values))), 1.0)
    return q.with_values(zero_flux_values(values, q.grid))


def _check_mass(q: GridFunction, mass_tol: Optional[float]) -> None:
    tolerance = mass_tolerance(q) if mass_tol is None else mass_tol
    residual = mass_residual(q)
    if abs(residual) > tolerance:
        raise ZeroMassViolationError(residual, tolerance)


def make_state(
    q: GridFunction,
    t: float = 0.0,
    q_c_bound: float = DEFAULT_Q_C_BOUND,
    mass_tol: Optional[float] = None
) -> SgState:
    """
    Build a validated state from q samples.

    Args:
        q: zero-mass samples with max|q| <= q_c_bound
        t: time stamp
        q_c_bound: working ceiling in (0, 1)
        mass_tol: tolerance on the mass residual

    Returns:
        SgState with the zero-flux antiderivative cached

    Raises:
        InvalidInputError: bound outside (0, 1)
        ConstraintViolationError: max|q| above the bound
        ZeroMassViolationError: mass residual above tolerance
    """
    if not 0 < q_c_bound < 1:
        raise InvalidInputError("q_c_bound", "must lie in (0, 1)")
    require_valid(q, "q")
    if q.max_abs() > q_c_bound:
        raise ConstraintViolationError(q.max_abs(), q_c_bound, {"t": t})
    _check_mass(q, mass_tol)
    return SgState(t=float(t), q=q, p=zero_flux_antiderivative(q), q_c_bound=q_c_bound)


def check_state(state: SgState) -> Dict[str, float]:
    """
    Audit the state invariants.

    Returns:
        max_abs_q, mass_residual, derivative_mismatch (max|p_y - q|),
        flux_residual (h sum sqrt(1-q^2) p) and valid (1.0 or 0.0)
    """
    q = state.q.values
    grid = state.grid
    mismatch = float(np.max(np.abs(derivative_values(state.p.values, grid, 1) - q)))
    flux = float(grid.spacing * np.sum(cos_factor(q) * state.p.values))
    mass = mass_residual(state.q)
    valid = (
        state.validate()
        and mismatch <= 1e-8 * max(1.0, state.q.max_abs())
        and abs(mass) <= max(mass_tolerance(state.q), 1e-14)
    )
    return {
        "max_abs_q": state.max_abs_q,
        "mass_residual": mass,
        "derivative_mismatch": mismatch,
        "flux_residual": flux,
        "valid": 1.0 if valid else 0.0,
    }


def _rhs_values(values: np.ndarray, grid: Grid) -> np.ndarray:
    peak = float(np.max(np.abs(values)))
    if peak >= 1.0:
        raise ConstraintViolationError(peak, 1.0)
    return cos_factor(values) * zero_flux_values(values, grid)


def rhs(q: GridFunction, mass_tol: Optional[float] = None) -> GridFunction:
    """
    q_t = sqrt(1 - q^2) p with p the zero-flux antiderivative.

    Raises:
        ConstraintViolationError: max|q| >= 1
        ZeroMassViolationError: mass residual above tolerance
    """
    values = require_valid(q, "q")
    _check_mass(q, mass_tol)
    return q.with_values(_rhs_values(values, q.grid))


def linear_part(q: GridFunction) -> GridFunction:
    """L q, the mean-zero antiderivative."""
    return q.with_values(mean_zero_antiderivative_values(require_valid(q, "q"), q.grid))


def nonlinear_values(values: np.ndarray, grid: Grid) -> np.ndarray:
    # rhs = L q - N(q), N(q) = f(q) p - c
    p_tilde = mean_zero_antiderivative_values(values, grid)
    return p_tilde - _rhs_values(values, grid)


def nonlinear_part(q: GridFunction) -> GridFunction:
    """N(q) = L q - rhs(q) = f(q) p - c, the term treated by the Duhamel integral."""
    return q.with_values(nonlinear_values(require_valid(q, "q"), q.grid))


def x1_norm_values(values: np.ndarray, grid: Grid) -> float:
    """||q||_{H^1} + ||L q||_{L^2} on the periodic grid."""
    f = GridFunction(grid=grid, values=values)
    return sobolev_norm(f, 1.0) + sobolev_norm(f.with_values(mean_zero_antiderivative_values(values, grid)), 0.0)


def x1_norm(q: GridFunction) -> float:
    return x1_norm_values(require_valid(q, "q"), q.grid)


def step_mol(state: SgState, dt: float) -> SgState:
    """
    One classical RK4 step of q_t = sqrt(1 - q^2) p.

    Args:
        state: current state
        dt: positive step

    Returns:
        State at t + dt (mean re-projected to zero, p recomputed)

    Raises:
        StepRejectedError: a stage left |q| < 1 or the result exceeds q_c_bound
    """
    if not dt > 0:
        raise InvalidInputError("dt", "step must be positive")
    grid = state.grid
    q = state.q.values
    try:
        k1 = _rhs_values(q, grid)
        k2 = _rhs_values(q + 0.5 * dt * k1, grid)
        k3 = _rhs_values(q + 0.5 * dt * k2, grid)
        k4 = _rhs_values(q + dt * k3, grid)
    except ConstraintViolationError as exc:
        raise StepRejectedError(state.t, dt, exc.max_abs_q, state.q_c_bound, {"stage": "rk4"}) from exc

    q_new = q + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    q_new = q_new - np.mean(q_new)
    peak = float(np.max(np.abs(q_new)))
    if peak >= state.q_c_bound:
        raise StepRejectedError(state.t, dt, peak, state.q_c_bound)
    new_q = state.q.with_values(q_new)
    return SgState(t=state.t + dt, q=new_q, p=new_q.with_values(zero_flux_values(q_new, grid)), q_c_bound=state.q_c_bound)


def integrate_mol(state: SgState, dt: float, n_steps: int) -> SgState:
    """Fixed-step RK4 driver."""
    if n_steps < 0:
        raise InvalidInputError("n_steps", "must be non-negative")
    for _ in range(n_steps):
        state = step_mol(state, dt)
    return state


def _energy_densities(q: np.ndarray, p: np.ndarray, grid: Grid):
    q_y = derivative_values(q, grid, 1)
    return (
        cos_factor(q) * p * p,
        f_nonlinear(q),
        q_y * q_y / (1.0 - q * q),
    )


def conserved_E(state: SgState) -> ConservedTriple:
    """
    E_{-1} = int sqrt(1-q^2) p^2, E_0 = int f(q), E_1 = int q_y^2 / (1-q^2).

    The quadrature error estimate compares the rectangle rule on the full grid
    with the rule on every other sample.

    Raises:
        ConstraintViolationError: max|q| >= 1
    """
    q = state.q.values
    peak = state.max_abs_q
    if peak >= 1.0:
        raise ConstraintViolationError(peak, 1.0)
    h = state.grid.spacing
    totals = []
    error = 0.0
    for density in _energy_densities(q, state.p.values, state.grid):
        full = h * float(np.sum(density))
        coarse = 2.0 * h * float(np.sum(density[::2]))
        totals.append(full)
        error = max(error, abs(full - coarse))
    return ConservedTriple(
        e_minus1=totals[0],
        e_0=totals[1],
        e_1=totals[2],
        family=ConservedFamily.E,
        quadrature_error=error,
    )


def p_time_derivative(state: SgState) -> GridFunction:
    """
    p_t for the zero-flux normalization: L(q_t) plus the drift of the constant,

        c' = (int q p^2 - int sqrt(1-q^2) L(q_t)) / int sqrt(1-q^2).
    """
    grid = state.grid
    q = state.q.values
    p = state.p.values
    q_t = _rhs_values(q, grid)
    shape = mean_zero_antiderivative_values(q_t, grid)
    weight = cos_factor(q)
    drift = (np.sum(q * p * p) - np.sum(weight * shape)) / np.sum(weight)
    return state.q.with_values(shape + drift)


def _balance_terms(state: SgState):
    q = state.q.values
    p = state.p.values
    grid = state.grid
    p_t = p_time_derivative(state).values
    q_y = derivative_values(q, grid, 1)
    densities = {
        "E_minus1": cos_factor(q) * p * p,
        "E_0": f_nonlinear(q),
        "E_1": q_y * q_y / (1.0 - q * q),
    }
    fluxes = {
        "E_minus1": p_t * p_t - 0.25 * p ** 4,
        "E_0": 0.5 * p * p,
        "E_1": 2.0 * f_nonlinear(q),
    }
    return densities, fluxes


def balance_residual(states: Sequence[SgState], dt_tol: float = 1e-9) -> List[Dict[str, float]]:
    """
    Discrete residuals of the local balance laws

        d_t f(q)               = d_y (p^2 / 2),
        d_t (q_y^2 / (1-q^2))  = d_y (2 f(q)),
        d_t (sqrt(1-q^2) p^2)  = d_y (p_t^2 - p^4 / 4),

    with central differences in t and spectral derivatives in y.

    Args:
        states: at least three stored states with uniform spacing in t
        dt_tol: relative tolerance on the uniformity of the spacing

    Returns:
        One row per interior state: t and the L^2 residual of each law
    """
    if len(states) < 3:
        raise InvalidInputError("states", "need at least three consecutive states")
    times = np.array([s.t for s in states])
    steps = np.diff(times)
    dt = float(steps[0])
    if dt <= 0 or np.any(np.abs(steps - dt) > dt_tol * max(dt, 1.0)):
        raise InvalidInputError("states", "states must be uniformly spaced in t")

    grid = states[0].grid
    rows = []
    for before, centre, after in zip(states[:-2], states[1:-1], states[2:]):
        rho_before, _ = _balance_terms(before)
        rho_after, _ = _balance_terms(after)
        _, fluxes = _balance_terms(centre)
        row = {"t": centre.t}
        for name in ("E_minus1", "E_0", "E_1"):
            residual = (rho_after[name] - rho_before[name]) / (2.0 * dt) - derivative_values(fluxes[name], grid, 1)
            row[name] = float(np.sqrt(grid.spacing * np.sum(residual ** 2)))
        rows.append(row)
    return rows


def apriori_energy_checks(state: SgState, triple: Optional[ConservedTriple] = None) -> EquivalenceReport:
    """
    Compare E's with the plain norms they are squeezed between.

        sqrt(1-|q|_inf^2) |p|^2 <= E_{-1} <= |p|^2
        |q|^2 / 2              <= E_0    <= |q|^2
        |q_y|^2                <= E_1    <= |q_y|^2 / (1-|q|_inf^2)

    Each entry holds E divided by the plain norm. Zero norms give ratio 1.
    """
    triple = triple or conserved_E(state)
    grid = state.grid
    h = grid.spacing
    q = state.q.values
    q_inf = state.max_abs_q
    root = np.sqrt(1.0 - q_inf ** 2)
    norms = {
        "E_minus1": h * float(np.sum(state.p.values ** 2)),
        "E_0": h * float(np.sum(q ** 2)),
        "E_1": h * float(np.sum(derivative_values(q, grid, 1) ** 2)),
    }
    brackets = {
        "E_minus1": (root, 1.0),
        "E_0": (0.5, 1.0),
        "E_1": (1.0, 1.0 / (1.0 - q_inf ** 2)),
    }
    values = dict(zip(("E_minus1", "E_0", "E_1"), triple.as_tuple()))
    entries = []
    for name, (lower, upper) in brackets.items():
        ratio = values[name] / norms[name] if norms[name] > 0 else 1.0
        holds = lower * (1.0 - 1e-8) - _BOUND_SLACK <= ratio <= upper * (1.0 + 1e-8) + _BOUND_SLACK
        entries.append(NormRatio(name=name, ratio=ratio, lower=lower, upper=upper, holds=bool(holds)))
    return EquivalenceReport(q_c=q_inf, entries=entries)
