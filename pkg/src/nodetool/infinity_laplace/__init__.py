"""Finite-difference lab for the infinity(x)-Laplace equation on rectangles."""

from nodetool.infinity_laplace.domain import (
    BoundaryData,
    ExponentField,
    Grid,
    ScalarField,
    grad_ln_p_gap,
    make_affine_exponent,
    make_constant_exponent,
    make_exponential_exponent,
    make_tabulated_exponent,
    sup_difference,
)
from nodetool.infinity_laplace.errors import BracketError, QuadratureError
from nodetool.infinity_laplace.estimates import BoundParams
from nodetool.infinity_laplace.solvers import (
    SolveConfig,
    SolveResult,
    solve_infinity_harmonic,
    solve_infinity_x,
    solve_lower,
    solve_sandwich,
    solve_upper,
)
from nodetool.infinity_laplace.transform import TransformParams

__all__ = [
    "BoundParams",
    "BoundaryData",
    "BracketError",
    "ExponentField",
    "Grid",
    "QuadratureError",
    "ScalarField",
    "SolveConfig",
    "SolveResult",
    "TransformParams",
    "grad_ln_p_gap",
    "make_affine_exponent",
    "make_constant_exponent",
    "make_exponential_exponent",
    "make_tabulated_exponent",
    "solve_infinity_harmonic",
    "solve_infinity_x",
    "solve_lower",
    "solve_sandwich",
    "solve_upper",
    "sup_difference",
]
