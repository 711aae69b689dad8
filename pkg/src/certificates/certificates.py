"""
Global well-posedness certificates for the short-pulse equation, the scaling
symmetry X = alpha x, T = t / alpha, U = alpha u, and the time-independent
H^2 bound for certified data.

Under the scaling H_{-1} -> alpha^3 H_{-1}, H_0 -> alpha H_0, H_1 -> H_1 / alpha,
so the product H_0 H_1 and the sharp criterion 2 sqrt(2 H_0 H_1) are invariant.
"""

from typing import Any, Dict, Optional, Union

import numpy as np
from scipy.optimize import minimize_scalar

from error_handling import InvalidInputError
from evolution.sg_evolution import conserved_E
from grid.grid_core import derivative_values
from hodograph.hodograph import conserved_H, inverse_q, x_grid
from models.data_models import (
    Certificate,
    ConservedFamily,
    ConservedTriple,
    PhiMinimum,
    ScaledFields,
    SgState,
    Verdict,
    XFields,
)

PHI_GRID = np.geomspace(0.01, 100.0, 10_000)


def phi_min(h0: float, h1: float, alpha_grid: Optional[np.ndarray] = None) -> PhiMinimum:
    """
    Minimize phi(alpha) = 2 alpha H0 + H1 / alpha over alpha > 0.

    The minimizer is alpha* = sqrt(H1 / (2 H0)) with phi(alpha*) = 2 sqrt(2 H0 H1).
    When H0 or H1 vanishes the infimum is 0 and there is no interior minimizer.
    """
    if h0 < 0 or h1 < 0:
        raise InvalidInputError("h", "H0 and H1 must be non-negative")
    if h0 == 0 or h1 == 0:
        return PhiMinimum(alpha_star=None, phi_star=0.0, grid_minimum=None, degenerate=True)
    alpha_grid = PHI_GRID if alpha_grid is None else np.asarray(alpha_grid, dtype=float)
    alpha_star = float(np.sqrt(h1 / (2.0 * h0)))
    phi_star = float(2.0 * np.sqrt(2.0 * h0 * h1))

    def phi(alpha):
        return 2.0 * alpha * h0 + h1 / alpha

    # grid search, then bounded refinement between the neighbours of the best node
    best = int(np.argmin(phi(alpha_grid)))
    low = alpha_grid[max(best - 1, 0)]
    high = alpha_grid[min(best + 1, alpha_grid.size - 1)]
    grid_minimum = float(phi(alpha_grid[best]))
    if high > low:
        refined = minimize_scalar(phi, bounds=(low, high), method="bounded", options={"xatol": 1e-12 * high})
        grid_minimum = min(grid_minimum, float(refined.fun))
    return PhiMinimum(alpha_star=alpha_star, phi_star=phi_star, grid_minimum=grid_minimum)


def apriori_h2_bound(h_minus1: float, h0: float, h1: float) -> Optional[float]:
    """
    (H_{-1} + s / (1 - s))^{1/2} with s = H1 + 2 H0, or None when s >= 1.
    """
    s = h1 + 2.0 * h0
    if s >= 1.0:
        return None
    return float(np.sqrt(h_minus1 + s / (1.0 - s)))


def _raw_hypothesis_y(state: SgState) -> float:
    # |u_x|^2 + |u_xx|^2 in x, evaluated in y with dx = sqrt(1-q^2) dy
    q = state.q.values
    w = np.sqrt(1.0 - q * q)
    q_y = derivative_values(q, state.grid, 1)
    return float(state.grid.spacing * np.sum(q * q / w + q_y * q_y / w ** 7))


def _raw_hypothesis_x(xfields: XFields) -> float:
    return float(xfields.spacing * np.sum(xfields.u_x ** 2 + xfields.u_xx ** 2))


def certificate_from_triple(triple: ConservedTriple, raw_hypothesis: Optional[float] = None) -> Certificate:
    """Fill a Certificate from (H_{-1}, H_0, H_1)."""
    h_minus1, h0, h1 = triple.as_tuple()
    h0 = max(h0, 0.0)
    h1 = max(h1, 0.0)
    sum_criterion = 2.0 * h0 + h1
    sharp_criterion = float(2.0 * np.sqrt(2.0 * h0 * h1))
    if sum_criterion < 1.0:
        verdicts = [Verdict.CERTIFIED_SUM.value, Verdict.CERTIFIED_SHARP.value]
    elif sharp_criterion < 1.0:
        verdicts = [Verdict.CERTIFIED_SHARP.value]
    else:
        verdicts = [Verdict.UNCERTIFIED.value]
    return Certificate(
        h_minus1=h_minus1,
        h_0=h0,
        h_1=h1,
        sum_criterion=sum_criterion,
        sharp_criterion=sharp_criterion,
        optimal_alpha=phi_min(h0, h1).alpha_star,
        apriori_h2=apriori_h2_bound(h_minus1, h0, h1),
        raw_hypothesis=raw_hypothesis,
        verdicts=verdicts,
    )


def certify(data: Union[SgState, XFields], logger=None) -> Certificate:
    """
    Certificate for short-pulse data given in either variable set.

    Args:
        data: a sine-Gordon state (H's via H_i = E_i) or x-grid fields
        logger: optional StructuredLogger

    Returns:
        Certificate with sum / sharp criteria, alpha*, the H^2 bound and the
        raw hypothesis |u0'|^2 + |u0''|^2
    """
    if isinstance(data, SgState):
        triple = conserved_E(data)
        triple = ConservedTriple(*triple.as_tuple(), family=ConservedFamily.H,
                                 quadrature_error=triple.quadrature_error)
        raw = _raw_hypothesis_y(data)
    elif isinstance(data, XFields):
        triple = conserved_H(data)
        raw = _raw_hypothesis_x(data)
    else:
        raise InvalidInputError("data", f"cannot certify {type(data).__name__}")

    certificate = certificate_from_triple(triple, raw)
    if logger:
        logger.log_certificate(
            certificate.verdicts,
            certificate.sum_criterion,
            certificate.sharp_criterion,
            {"alpha_star": certificate.optimal_alpha, "raw_hypothesis": raw},
        )
    return certificate


def predicted_scaling(triple: ConservedTriple, alpha: float) -> ConservedTriple:
    """H triple after X = alpha x, U = alpha u."""
    return ConservedTriple(
        e_minus1=alpha ** 3 * triple.e_minus1,
        e_0=alpha * triple.e_0,
        e_1=triple.e_1 / alpha,
        family=ConservedFamily.H,
    )


def scale(xfields: XFields, alpha: float) -> ScaledFields:
    """
    Apply X = alpha x, U = alpha u to sampled fields.

    U_X = u_x and U_XX = u_xx / alpha at the image points, so the scaled
    samples live on the uniform grid alpha x.

    Returns:
        ScaledFields with measured and predicted H triples
    """
    if not alpha > 0 or not np.isfinite(alpha):
        raise InvalidInputError("alpha", "scale must be positive and finite")
    scaled = XFields(
        x=alpha * xfields.x,
        u=alpha * xfields.u,
        u_x=xfields.u_x,
        u_xx=xfields.u_xx / alpha,
        t=xfields.t / alpha,
        anchor=alpha * xfields.anchor,
        spacing=alpha * xfields.spacing,
        derivative_mismatch=xfields.derivative_mismatch,
    )
    before = conserved_H(xfields)
    after = conserved_H(scaled)
    predicted = predicted_scaling(before, alpha)
    deviation = max(
        abs(a - b) / max(abs(b), 1e-300) if b != 0 else abs(a)
        for a, b in zip(after.as_tuple(), predicted.as_tuple())
    )
    return ScaledFields(
        fields=scaled,
        alpha=float(alpha),
        before=before,
        after=after,
        predicted=predicted,
        max_relative_deviation=float(deviation),
    )


def rescale_to_certify(xfields: XFields) -> ScaledFields:
    """
    Scale by alpha* so that 2 H0 + H1 drops to the sharp value 2 sqrt(2 H0 H1).

    Degenerate data (H0 or H1 zero) is returned unscaled.
    """
    triple = conserved_H(xfields)
    minimum = phi_min(max(triple.e_0, 0.0), max(triple.e_1, 0.0))
    return scale(xfields, minimum.alpha_star if minimum.alpha_star else 1.0)


def q_tilde_bounds(xfields: XFields) -> Dict[str, Any]:
    """
    Bounds on q~ = u_x / sqrt(1 + u_x^2): int q~^2 <= 2 H0 and int q~_x^2 <= H1.
    """
    triple = conserved_H(xfields)
    q_tilde = inverse_q(xfields.u_x)
    q_tilde_x = derivative_values(q_tilde, x_grid(xfields), 1)
    l2 = float(xfields.spacing * np.sum(q_tilde ** 2))
    h1 = float(xfields.spacing * np.sum(q_tilde_x ** 2))
    slack = 1e-8
    return {
        "q_tilde_l2": l2,
        "two_h0": 2.0 * triple.e_0,
        "q_tilde_l2_holds": bool(l2 <= 2.0 * triple.e_0 * (1 + slack) + 1e-14),
        "q_tilde_x_l2": h1,
        "h1": triple.e_1,
        "q_tilde_x_l2_holds": bool(h1 <= triple.e_1 * (1 + slack) + 1e-14),
    }


def apriori_q_bounds(triple: ConservedTriple) -> Dict[str, Optional[float]]:
    """
    Time-independent bounds for certified data:

        max|q| <= q_c = sqrt(E1 + 2 E0) / sqrt(2),
        |q|_{X^1} <= sqrt(E1 + 2 E0) + sqrt(E_{-1} / sqrt(1 - q_c^2)).

    The X^1 bound is None when q_c >= 1.
    """
    energy = triple.e_1 + 2.0 * triple.e_0
    q_c = float(np.sqrt(max(energy, 0.0) / 2.0))
    x1 = None
    if q_c < 1.0:
        x1 = float(np.sqrt(max(energy, 0.0)) + np.sqrt(max(triple.e_minus1, 0.0) / np.sqrt(1.0 - q_c ** 2)))
    return {"q_c": q_c, "h1_energy": float(energy), "x1_bound": x1}
