"""
Certificates module: well-posedness criteria, scaling and a priori bounds.
"""

from .certificates import (
    apriori_h2_bound,
    apriori_q_bounds,
    certificate_from_triple,
    certify,
    phi_min,
    predicted_scaling,
    q_tilde_bounds,
    rescale_to_certify,
    scale,
)

__all__ = [
    "apriori_h2_bound",
    "apriori_q_bounds",
    "certificate_from_triple",
    "certify",
    "phi_min",
    "predicted_scaling",
    "q_tilde_bounds",
    "rescale_to_certify",
    "scale",
]
