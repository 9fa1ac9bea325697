"""Exact rational kernel: polynomials, root isolation, simplex with certificates."""

from .poly import (
    Polynomial,
    X,
    bernstein_term,
    bernstein_value,
    poly_add,
    poly_equal,
    poly_eval,
    poly_mul,
    poly_scale,
    poly_sub,
)
from .simplex import (
    FEASIBLE,
    INFEASIBLE,
    FeasibilityOutcome,
    LPResult,
    lp_maximize,
    solve_feasibility,
    verify_outcome,
)
from .sturm import RealRoot, count_roots, isolate_roots, sturm_sequence

__all__ = [
    "FEASIBLE",
    "INFEASIBLE",
    "FeasibilityOutcome",
    "LPResult",
    "Polynomial",
    "RealRoot",
    "X",
    "bernstein_term",
    "bernstein_value",
    "count_roots",
    "isolate_roots",
    "lp_maximize",
    "poly_add",
    "poly_equal",
    "poly_eval",
    "poly_mul",
    "poly_scale",
    "poly_sub",
    "solve_feasibility",
    "sturm_sequence",
    "verify_outcome",
]
