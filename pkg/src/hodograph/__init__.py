"""
Hodograph module: the coordinate map between sine-Gordon and short-pulse variables.
"""

from .hodograph import (
    build_map,
    conserved_H,
    equivalence_report,
    evaluate_at_x,
    fields_h2_norm,
    initial_u_mass,
    interpolate_x_field,
    inverse_map,
    inverse_q,
    map_time_derivative,
    resample_to_x,
    x_grid,
    zero_mass_check_u,
)

__all__ = [
    "build_map",
    "conserved_H",
    "equivalence_report",
    "evaluate_at_x",
    "fields_h2_norm",
    "initial_u_mass",
    "interpolate_x_field",
    "inverse_map",
    "inverse_q",
    "map_time_derivative",
    "resample_to_x",
    "x_grid",
    "zero_mass_check_u",
]
