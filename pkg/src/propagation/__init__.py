"""
Propagation module: the linear solution operator e^{tL} and the integrated field P.
"""

from .linear_propagator import (
    KERNEL_ORDERS,
    propagate,
    propagate_kernel,
    propagate_P,
    propagate_spectral,
    spectral_multiplier,
)

__all__ = [
    "KERNEL_ORDERS",
    "propagate",
    "propagate_kernel",
    "propagate_P",
    "propagate_spectral",
    "spectral_multiplier",
]
