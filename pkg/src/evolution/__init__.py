"""
Evolution module: sine-Gordon right-hand side, steppers, step control and the driver.
"""

from .sg_evolution import (
    DEFAULT_Q_C_BOUND,
    apriori_energy_checks,
    balance_residual,
    check_state,
    conserved_E,
    cos_factor,
    f_nonlinear,
    integrate_mol,
    linear_part,
    make_state,
    nonlinear_part,
    p_time_derivative,
    rhs,
    step_mol,
    x1_norm,
    zero_flux_antiderivative,
)
from .picard import gauss_lobatto_nodes, integration_matrix, picard_iterate, step_picard
from .step_control import estimate_constants, select_step, step_feasible, step_rule_from_state
from .driver import Evolver, evolve, record_state

__all__ = [
    "DEFAULT_Q_C_BOUND",
    "apriori_energy_checks",
    "balance_residual",
    "check_state",
    "conserved_E",
    "cos_factor",
    "f_nonlinear",
    "integrate_mol",
    "linear_part",
    "make_state",
    "nonlinear_part",
    "p_time_derivative",
    "rhs",
    "step_mol",
    "x1_norm",
    "zero_flux_antiderivative",
    "gauss_lobatto_nodes",
    "integration_matrix",
    "picard_iterate",
    "step_picard",
    "estimate_constants",
    "select_step",
    "step_feasible",
    "step_rule_from_state",
    "Evolver",
    "evolve",
    "record_state",
]
