"""Lie symmetries and similarity reductions of u_t = A u_xx + B u_x + C u."""

from ._simred import (
    Ansatz,
    Domain,
    EvalError,
    Expr,
    Generator,
    Grid,
    ParseError,
    Pde,
    Reduction,
    StabilityError,
    convergence_order,
    determining_residuals,
    diff,
    fd_solve,
    invariance_residual,
    is_zero,
    mode_solve,
    parse,
    residual_on_grid,
    similarity_reduce,
    simplify,
    synth,
)

__all__ = [
    "Ansatz",
    "Domain",
    "EvalError",
    "Expr",
    "Generator",
    "Grid",
    "ParseError",
    "Pde",
    "Reduction",
    "StabilityError",
    "convergence_order",
    "determining_residuals",
    "diff",
    "fd_solve",
    "invariance_residual",
    "is_zero",
    "mode_solve",
    "parse",
    "residual_on_grid",
    "similarity_reduce",
    "simplify",
    "synth",
]
