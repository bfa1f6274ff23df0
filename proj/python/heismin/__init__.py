"""Constant p-mean curvature surfaces in the Heisenberg group."""

from ._core import (
    ExprSyntaxError,
    General,
    NumericError,
    SpecialI,
    SpecialII,
    Zero,
    classify,
    conserved_quantity,
    contact_value,
    eval_alpha,
    family_name,
    fit_solution,
    group_inv,
    group_mul,
    helicoid_alpha,
    integrate_ivp,
    lienard_residual,
    pmge_residual,
    run_cli,
    singular_set,
    zeta_round_trip,
)

__all__ = [
    "ExprSyntaxError",
    "General",
    "NumericError",
    "SpecialI",
    "SpecialII",
    "Zero",
    "classify",
    "conserved_quantity",
    "contact_value",
    "eval_alpha",
    "family_name",
    "fit_solution",
    "group_inv",
    "group_mul",
    "helicoid_alpha",
    "integrate_ivp",
    "lienard_residual",
    "pmge_residual",
    "run_cli",
    "singular_set",
    "zeta_round_trip",
]
