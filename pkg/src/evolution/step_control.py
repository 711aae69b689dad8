"""
Step-size selection for the local existence argument.

A slab of length T is admissible for data with X^1 norm at most alpha*delta
and sup norm at most alpha*q_c when

    alpha + T (1 + C_s^2) delta^2                              <= 1,
    alpha q_c + C_1 T^{1/2} alpha delta + C_2 T (T + 2) delta^3 / 2 <= q_c.

The constants C_1, C_2 are estimated numerically, so the rule is conservative
in practice but not rigorous.
"""

from typing import Optional, Sequence

import numpy as np

from error_handling import InfeasibleStepError, InvalidInputError
from evolution.sg_evolution import f_nonlinear, x1_norm_values, zero_flux_values
from grid.initial_profiles import gaussian_derivative, wave_packet
from kernels.bessel_kernels import kernel_bounds_report
from models.data_models import ConstantsEstimate, Grid, SgState, StepRule

DEFAULT_RESOLUTION = 1e-4
DEFAULT_T_MAX = 1.0
_TINY_DELTA = 1e-12


def step_feasible(rule: StepRule, T: float) -> bool:
    """Both step-size inequalities at T."""
    first = rule.alpha + T * (1.0 + rule.c_s ** 2) * rule.delta ** 2 <= 1.0
    second = (
        rule.alpha * rule.q_c
        + rule.c_1 * np.sqrt(T) * rule.alpha * rule.delta
        + 0.5 * rule.c_2 * T * (T + 2.0) * rule.delta ** 3
    ) <= rule.q_c
    return bool(first and second)


def select_step(
    rule: StepRule,
    t_max: float = DEFAULT_T_MAX,
    resolution: float = DEFAULT_RESOLUTION
) -> float:
    """
    Largest T = n * resolution <= t_max satisfying both inequalities.

    Both left-hand sides increase with T, so the feasible set is an interval
    and integer bisection finds its right end.

    Raises:
        InvalidInputError: rule invariants fail
        InfeasibleStepError: no feasible T >= resolution
    """
    if not rule.validate():
        raise InvalidInputError("rule", "step rule needs alpha, q_c in (0, 1) and positive delta and constants")
    if not resolution > 0 or t_max < resolution:
        raise InvalidInputError("resolution", "need 0 < resolution <= t_max")
    if not step_feasible(rule, resolution):
        raise InfeasibleStepError(rule.delta, rule.alpha, {"q_c": rule.q_c})

    low, high = 1, int(np.floor(t_max / resolution + 1e-9))
    if step_feasible(rule, high * resolution):
        return high * resolution
    while high - low > 1:
        middle = (low + high) // 2
        if step_feasible(rule, middle * resolution):
            low = middle
        else:
            high = middle
    return low * resolution


def step_rule_from_state(
    state: SgState,
    constants: ConstantsEstimate,
    alpha: float = 0.5
) -> StepRule:
    """
    Step rule whose ball just contains the current state.

    alpha is raised to max|q| / q_c when the sup norm needs it; delta is
    ||q||_{X^1} / alpha.

    Raises:
        InfeasibleStepError: max|q| / q_c >= 1
    """
    q_c = state.q_c_bound
    alpha = max(alpha, state.max_abs_q / q_c)
    if alpha >= 1.0:
        raise InfeasibleStepError(float("inf"), alpha, {"max_abs_q": state.max_abs_q, "q_c": q_c})
    delta = max(x1_norm_values(state.q.values, state.grid) / alpha, _TINY_DELTA)
    return StepRule(
        alpha=alpha,
        delta=delta,
        q_c=q_c,
        c_s=constants.c_s,
        c_1=constants.c_1,
        c_2=constants.c_2,
    )


def _random_state_values(grid: Grid, rng: np.random.Generator) -> np.ndarray:
    reach = 0.25 * grid.half_width
    bump = gaussian_derivative(grid, 1.0, center=rng.uniform(-reach, reach), width=rng.uniform(0.5, 3.0))
    packet = wave_packet(
        grid,
        rng.uniform(-1.0, 1.0),
        width=rng.uniform(1.0, 3.0),
        wavenumber=rng.uniform(0.5, 4.0),
        center=rng.uniform(-reach, reach),
    )
    values = bump.values + packet.values
    values = values - np.mean(values)
    return rng.uniform(0.05, 0.9) * values / np.max(np.abs(values))


def estimate_constants(
    grid: Grid,
    t_samples: Optional[Sequence[float]] = None,
    n_states: int = 48,
    seed: int = 20240101
) -> ConstantsEstimate:
    """
    Empirical constants of the step rule.

    Args:
        grid: grid of the states sampled for C_2
        t_samples: kernel times for C_1 (default eight log-spaced points in [0.1, 10])
        n_states: number of random admissible states for C_2
        seed: random seed

    Returns:
        ConstantsEstimate with C_s = 1 (H^1 is a Banach algebra with constant 1),
        C_1 = max ||K_t||_{L^2} / sqrt(t), and C_2 = max of
        max(||f(q) p||_inf, ||f(q) p||_{L^1}) / ||q||_{X^1}^3 over the sample
    """
    times = list(np.geomspace(0.1, 10.0, 8) if t_samples is None else t_samples)
    if not times or min(times) <= 0 or max(times) > 10.0:
        raise InvalidInputError("t_samples", "times must lie in (0, 10]")
    c_1 = max(row.C_l2_fit for row in kernel_bounds_report(times))

    rng = np.random.default_rng(seed)
    c_2 = 0.0
    for _ in range(n_states):
        q = _random_state_values(grid, rng)
        product = f_nonlinear(q) * zero_flux_values(q, grid)
        norm = x1_norm_values(q, grid)
        ratio = max(np.max(np.abs(product)), grid.spacing * np.sum(np.abs(product))) / norm ** 3
        c_2 = max(c_2, float(ratio))

    return ConstantsEstimate(
        c_s=1.0,
        c_1=float(c_1),
        c_2=c_2 if c_2 > 0 else 1.0,
        t_samples=[float(t) for t in times],
        n_states=n_states,
        seed=seed,
    )
