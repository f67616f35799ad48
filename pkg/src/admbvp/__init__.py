"""Adomian decomposition solver for high-order two-point boundary value
problems, with truncated power-series arithmetic and boundary shooting."""

from .adomian import Monomial, NonlinearTerm, adomian_sequence, oracle_adomian
from .engine import (
    Approximant,
    GridRow,
    NewtonOptions,
    SolveResult,
    approximant,
    build_u0,
    recursion_step,
    residuals,
    solve,
)
from .problems import (
    BUILTIN_NAMES,
    BoundaryConditions,
    ExpPoly,
    ExpPolySum,
    MissingExactSolution,
    ProblemSpec,
    ProblemValidationError,
    builtin,
    eval_exact,
    validate,
)
from .series import PowerSeries

__version__ = "0.1.0"

__all__ = [
    "Approximant",
    "BUILTIN_NAMES",
    "BoundaryConditions",
    "ExpPoly",
    "ExpPolySum",
    "GridRow",
    "MissingExactSolution",
    "Monomial",
    "NewtonOptions",
    "NonlinearTerm",
    "PowerSeries",
    "ProblemSpec",
    "ProblemValidationError",
    "SolveResult",
    "adomian_sequence",
    "approximant",
    "build_u0",
    "builtin",
    "eval_exact",
    "oracle_adomian",
    "recursion_step",
    "residuals",
    "solve",
    "validate",
]
