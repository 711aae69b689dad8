"""
Solution operator e^{tL}, L = d/dy^{-1}, of the linear problem Q_yt = Q.

Two evaluation paths share one interface:

* spectral: the Fourier multiplier exp(-i t / k) with the k = 0 mode removed;
* kernel: the Bessel-kernel representation

      Q(y, t) = Q0(y) + int_y^inf K_t(y' - y) Q0(y') dy',
      P(y, t) = -int_y^inf J_t(y' - y) Q0(y') dy',

  evaluated by the trapezoid rule on [y, L) with left-end Euler-Maclaurin
  corrections. The kernel path costs O(N^2) and serves as a cross-check.
"""

from math import comb, factorial
from typing import Callable, Optional

import numpy as np
from scipy.special import bernoulli

from error_handling import DomainError, InvalidInputError, ZeroMassViolationError
from grid.grid_core import (
    antiderivative,
    derivative_values,
    mass_residual,
    mass_tolerance,
    require_valid,
)
from kernels.bessel_kernels import (
    kernel_J,
    kernel_K,
    kernel_K_limit,
    kernel_taylor_J,
    kernel_taylor_K,
)
from models.data_models import Grid, GridFunction, PropagatorMode, PropagatorPlan

KERNEL_ORDERS = (2, 4, 6, 8)


def spectral_multiplier(grid: Grid, t: float) -> np.ndarray:
    """exp(-i t / k) on the rfft wavenumbers, zero at k = 0."""
    k = grid.wavenumbers
    symbol = np.zeros(k.shape, dtype=complex)
    symbol[1:] = np.exp(-1j * t / k[1:])
    return symbol


def _require_zero_mass(q0: GridFunction, mass_tol: Optional[float]) -> None:
    tolerance = mass_tolerance(q0) if mass_tol is None else mass_tol
    residual = mass_residual(q0)
    if abs(residual) > tolerance:
        raise ZeroMassViolationError(residual, tolerance, {"operation": "propagate"})


def propagate_spectral(q0: GridFunction, t: float, mass_tol: Optional[float] = None) -> GridFunction:
    """
    Apply e^{tL} through its Fourier multiplier.

    Args:
        q0: zero-mass initial data
        t: time (any finite sign)
        mass_tol: tolerance on the mass residual (default from mass_tolerance)

    Returns:
        Q(., t) on the same grid

    Raises:
        ZeroMassViolationError: mass residual above tolerance
    """
    values = require_valid(q0, "q0")
    if not np.isfinite(t):
        raise InvalidInputError("t", "time must be finite")
    _require_zero_mass(q0, mass_tol)
    if t == 0:
        return q0.with_values(values)
    coeffs = np.fft.rfft(values) * spectral_multiplier(q0.grid, t)
    return q0.with_values(np.fft.irfft(coeffs, n=q0.grid.n_points))


def _kernel_quadrature(
    q0: GridFunction,
    kernel_at_zero: float,
    kernel: Callable[[np.ndarray], np.ndarray],
    taylor: Callable[[int], float],
    order: int
) -> np.ndarray:
    """
    Trapezoid approximation of int_y^L k(y' - y) Q0(y') dy' at every grid point,
    corrected at the left end to the requested order.
    """
    if order not in KERNEL_ORDERS:
        raise InvalidInputError("order", f"quadrature order must be one of {KERNEL_ORDERS}")
    values = q0.values
    grid = q0.grid
    h = grid.spacing
    n = grid.n_points

    samples = np.empty(n)
    samples[0] = kernel_at_zero
    samples[1:] = kernel(h * np.arange(1, n))

    # S_i = sum_{j >= i} k(y_j - y_i) Q0(y_j)
    tail_sums = np.convolve(values[::-1], samples)[:n][::-1]
    result = h * (tail_sums - 0.5 * kernel_at_zero * values)

    if order > 2:
        b = bernoulli(order)
        derivatives = [values] + [derivative_values(values, grid, m) for m in range(1, order - 2)]
        for r in range(1, order // 2):
            n_deriv = 2 * r - 1
            # d^n/ds^n [k(s) Q0(y + s)] at s = 0
            g = sum(comb(n_deriv, m) * taylor(m) * derivatives[n_deriv - m] for m in range(n_deriv + 1))
            result += b[2 * r] / factorial(2 * r) * h ** (2 * r) * g
    return result


def propagate_kernel(q0: GridFunction, t: float, order: int = 8) -> GridFunction:
    """
    Apply e^{tL} through the K_t convolution.

    Args:
        q0: initial data decaying at the grid ends
        t: non-negative time
        order: quadrature order (2, 4, 6 or 8)

    Returns:
        Q(., t) on the same grid

    Raises:
        DomainError: t < 0
    """
    values = require_valid(q0, "q0")
    if t < 0:
        raise DomainError("propagate_kernel", f"t = {t} (kernel form holds for t >= 0)")
    if t == 0:
        return q0.with_values(values)
    integral = _kernel_quadrature(
        q0,
        kernel_K_limit(t),
        lambda y: kernel_K(t, y),
        lambda m: kernel_taylor_K(t, m),
        order,
    )
    return q0.with_values(values + integral)


def propagate_P(
    q0: GridFunction,
    t: float,
    mode: PropagatorMode = PropagatorMode.KERNEL,
    order: int = 8
) -> GridFunction:
    """
    The integrated field P(., t) = -int_y^inf J_t(y' - y) Q0(y') dy', so that P_y = Q.

    Args:
        q0: initial data decaying at the grid ends
        t: non-negative time
        mode: kernel quadrature, or the antiderivative of the spectral Q
        order: kernel quadrature order

    Returns:
        P(., t) on the same grid
    """
    require_valid(q0, "q0")
    if t < 0:
        raise DomainError("propagate_P", f"t = {t}")
    if mode is PropagatorMode.SPECTRAL:
        return antiderivative(propagate_spectral(q0, t))
    integral = _kernel_quadrature(
        q0,
        1.0,
        lambda y: kernel_J(t, y),
        lambda m: kernel_taylor_J(t, m),
        order,
    )
    return q0.with_values(-integral)


def propagate(plan: PropagatorPlan, q0: GridFunction) -> GridFunction:
    """Dispatch on the plan's mode."""
    if not plan.validate():
        raise InvalidInputError("plan", f"invalid propagator plan (t={plan.t}, mode={plan.mode.value})")
    if q0.grid != plan.grid:
        raise InvalidInputError("q0", "grid does not match the plan")
    if plan.mode is PropagatorMode.KERNEL:
        return propagate_kernel(q0, plan.t, plan.order)
    return propagate_spectral(q0, plan.t)
