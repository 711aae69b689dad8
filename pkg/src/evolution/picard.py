"""
Duhamel-Picard stepper.

On one slab [0, T] the solution satisfies

    q(t) = e^{tL} q0 - int_0^t e^{(t-s)L} N(q(s)) ds,

with N(q) = f(q) p - c. In the interaction variable V(t) = e^{-tL} q(t) this
is V(t) = q0 - int_0^t e^{-sL} N(q(s)) ds, which is discretized by collocation
on Gauss-Lobatto nodes and solved by fixed-point iteration starting from the
free evolution.
"""

from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import Legendre

from error_handling import (
    ConstraintViolationError,
    ContractionFailureError,
    ConvergenceFailureError,
    InvalidInputError,
    StepRejectedError,
)
from evolution.sg_evolution import zero_flux_values, nonlinear_values, x1_norm_values
from models.data_models import PicardReport, SgState
from propagation.linear_propagator import spectral_multiplier

GROWTH_LIMIT = 3


def gauss_lobatto_nodes(count: int) -> np.ndarray:
    """
    Gauss-Lobatto nodes on [0, 1]: the ends plus the roots of P'_{count-1}.
    """
    if count < 2:
        raise InvalidInputError("nodes", "need at least two collocation nodes")
    interior = Legendre.basis(count - 1).deriv().roots().real if count > 2 else np.array([])
    reference = np.concatenate(([-1.0], np.sort(interior), [1.0]))
    return 0.5 * (reference + 1.0)


def integration_matrix(nodes: np.ndarray) -> np.ndarray:
    """S[i, j] = int_0^{nodes[i]} l_j(s) ds for the Lagrange basis l_j on the nodes."""
    count = len(nodes)
    matrix = np.empty((count, count))
    for j in range(count):
        others = np.delete(nodes, j)
        basis = Polynomial.fromroots(others)
        basis = basis / basis(nodes[j])
        matrix[:, j] = basis.integ(lbnd=0.0)(nodes)
    return matrix


def picard_iterate(
    state: SgState,
    T: float,
    tol: float = 1e-10,
    max_iter: int = 60,
    nodes: int = 4,
    logger=None
) -> PicardReport:
    """
    Fixed-point iteration of the collocated Duhamel formula on [t, t + T].

    Args:
        state: initial state of the slab
        T: slab length
        tol: stop when successive iterates differ by <= tol in X^1 (max over nodes)
        max_iter: iteration cap
        nodes: number of Gauss-Lobatto nodes (>= 2)
        logger: optional StructuredLogger

    Returns:
        PicardReport with the endpoint state and the iterate distances

    Raises:
        ContractionFailureError: distances grew three times in a row, or an
            iterate left |q| < 1
        ConvergenceFailureError: max_iter reached
        StepRejectedError: endpoint exceeds q_c_bound
    """
    if not T > 0:
        raise InvalidInputError("T", "slab length must be positive")
    if not tol > 0:
        raise InvalidInputError("tol", "tolerance must be positive")
    grid = state.grid
    n = grid.n_points
    tau = T * gauss_lobatto_nodes(nodes)
    weights = T * integration_matrix(tau / T)
    forward = [spectral_multiplier(grid, s) for s in tau]
    backward = [spectral_multiplier(grid, -s) for s in tau]

    q0_hat = np.fft.rfft(state.q.values)
    iterates = [np.fft.irfft(forward[i] * q0_hat, n=n) for i in range(nodes)]

    distances = []
    growths = 0
    for iteration in range(1, max_iter + 1):
        try:
            pulled = [backward[j] * np.fft.rfft(nonlinear_values(iterates[j], grid)) for j in range(nodes)]
        except ConstraintViolationError as exc:
            raise ContractionFailureError(T, distances, {"max_abs_q": exc.max_abs_q}) from exc
        updated = []
        for i in range(nodes):
            v_hat = q0_hat - sum(weights[i, j] * pulled[j] for j in range(nodes))
            updated.append(np.fft.irfft(forward[i] * v_hat, n=n))

        distance = max(x1_norm_values(updated[i] - iterates[i], grid) for i in range(nodes))
        iterates = updated
        if logger:
            logger.log_picard_iteration(iteration, distance, T, nodes)

        growths = growths + 1 if distances and distance > distances[-1] else 0
        distances.append(distance)
        if distance <= tol:
            break
        if growths >= GROWTH_LIMIT:
            raise ContractionFailureError(T, distances)
    else:
        raise ConvergenceFailureError(max_iter, distances[-1])

    endpoint = iterates[-1] - np.mean(iterates[-1])
    peak = float(np.max(np.abs(endpoint)))
    if peak >= state.q_c_bound:
        raise StepRejectedError(state.t, T, peak, state.q_c_bound, {"stepper": "picard"})
    q_new = state.q.with_values(endpoint)
    new_state = SgState(
        t=state.t + T,
        q=q_new,
        p=q_new.with_values(zero_flux_values(endpoint, grid)),
        q_c_bound=state.q_c_bound,
    )
    return PicardReport(
        state=new_state,
        distances=distances,
        iterations=len(distances),
        nodes=nodes,
        step_size=T,
    )


def step_picard(
    state: SgState,
    T: float,
    tol: float = 1e-10,
    max_iter: int = 60,
    nodes: int = 4,
    logger: Optional[object] = None
) -> SgState:
    """Endpoint state of picard_iterate."""
    return picard_iterate(state, T, tol, max_iter, nodes, logger).state
