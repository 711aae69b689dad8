"""
Kernels module: Bessel functions and the propagator kernels K_t, J_t.
"""

from .bessel_kernels import (
    bessel_j0,
    bessel_j0_prime,
    bessel_j1,
    kernel_bounds_report,
    kernel_J,
    kernel_K,
    kernel_K_limit,
    kernel_l2_squared,
    kernel_l2_tail,
    kernel_profile,
    kernel_taylor_J,
    kernel_taylor_K,
    kernel_window,
    sample_kernels,
)

__all__ = [
    "bessel_j0",
    "bessel_j0_prime",
    "bessel_j1",
    "kernel_bounds_report",
    "kernel_J",
    "kernel_K",
    "kernel_K_limit",
    "kernel_l2_squared",
    "kernel_l2_tail",
    "kernel_profile",
    "kernel_taylor_J",
    "kernel_taylor_K",
    "kernel_window",
    "sample_kernels",
]
