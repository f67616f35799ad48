"""Decomposition engine: series recursion plus boundary shooting.

The unknown initial derivatives (orders ``n_left .. order-1`` at 0) are
collected in a parameter vector.  For a given parameter guess the solution
is expanded into components: ``u_0`` carries the initial data and the
``order``-fold integral of the source, and each later component is the
``order``-fold integral of ``phi * u_k`` plus the matching Adomian
polynomial of the nonlinearity.  Newton iteration on the right-boundary
residuals then pins the parameters down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .adomian import adomian_sequence
from .problems import ProblemSpec, eval_exact, validate
from .series import PowerSeries

__all__ = [
    "Approximant",
    "GridRow",
    "NewtonOptions",
    "SolveResult",
    "approximant",
    "build_u0",
    "recursion_step",
    "residuals",
    "solve",
]

GRID_FIT_TOL = 1e-9


@dataclass(frozen=True)
class Approximant:
    """Truncated solution: the exact series sum of ``n_terms`` components."""

    series: PowerSeries
    n_terms: int


class GridRow(NamedTuple):
    x: float
    approx: float
    exact: float | None
    abs_error: float | None


@dataclass(frozen=True)
class NewtonOptions:
    """Knobs for the boundary shooting iteration."""

    tol: float = 1e-12
    max_iter: int = 25
    fd_step_scale: float = 1e-6
    max_condition: float = 1e14


@dataclass(frozen=True)
class SolveResult:
    approximant: Approximant
    params: tuple[float, ...]
    residual_norm: float
    newton_iterations: int
    converged: bool
    message: str = ""
    grid_report: tuple[GridRow, ...] | None = None


def _param_array(spec: ProblemSpec, params: Sequence[float]) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(params, dtype=float))
    expected = spec.order - spec.bc.n_left
    if arr.shape != (expected,):
        raise ValueError(
            f"expected {expected} shooting parameters, got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise ValueError("non-finite shooting parameter")
    return arr


def _require_room(spec: ProblemSpec) -> None:
    if spec.truncation_order <= spec.order:
        raise ValueError(
            f"truncation order {spec.truncation_order} leaves no room above "
            f"equation order {spec.order}"
        )


def build_u0(spec: ProblemSpec, params: Sequence[float]) -> PowerSeries:
    """Zeroth component: initial data plus the integrated source.

    ``u_0 = sum_i alpha_i x^i / i! + sum_m p_m x^(n_left+m) / (n_left+m)!
    + I^order(psi)`` where ``I`` integrates from 0.
    """
    _require_room(spec)
    p = _param_array(spec, params)
    m = spec.truncation_order
    head = np.zeros(m)
    for order_i, value in spec.bc.left:
        head[order_i] = value / math.factorial(order_i)
    n_left = spec.bc.n_left
    for j, pj in enumerate(p):
        head[n_left + j] = pj / math.factorial(n_left + j)
    return PowerSeries(head) + spec.psi.integrate(spec.order)


def recursion_step(
    spec: ProblemSpec, components: Sequence[PowerSeries]
) -> PowerSeries:
    """Next component from ``u_0 .. u_k``.

    ``u_{k+1} = I^order(phi * u_k) + I^order(A_k)`` with ``A_k`` the k-th
    Adomian polynomial of the nonlinearity (series multipliers included),
    recomputed from scratch on every call.
    """
    if not components:
        raise ValueError("at least one component is required")
    u_k = components[-1]
    forcing = spec.phi * u_k
    for term in spec.nonlinear:
        forcing = forcing + adomian_sequence(components, term)[-1]
    return forcing.integrate(spec.order)


def approximant(
    spec: ProblemSpec, params: Sequence[float], k_components: int
) -> Approximant:
    """Sum of the first ``k_components`` components at the given parameters."""
    if k_components < 1:
        raise ValueError("k_components must be at least 1")
    comps = [build_u0(spec, params)]
    for _ in range(k_components - 1):
        comps.append(recursion_step(spec, comps))
    total = comps[0]
    for c in comps[1:]:
        total = total + c
    return Approximant(series=total, n_terms=k_components)


def _boundary_residuals(spec: ProblemSpec, approx: Approximant) -> np.ndarray:
    b = spec.bc.b
    return np.array(
        [approx.series.eval_derivative(j, b) - beta for j, beta in spec.bc.right]
    )


def residuals(
    spec: ProblemSpec, params: Sequence[float], k_components: int
) -> np.ndarray:
    """Right-boundary defects of the ``k_components``-term approximant."""
    return _boundary_residuals(spec, approximant(spec, params, k_components))


def _residual_norm(r: np.ndarray) -> float:
    return float(np.max(np.abs(r))) if r.size else 0.0


def _grid_report(
    spec: ProblemSpec, approx: Approximant, grid_step: float
) -> tuple[GridRow, ...]:
    b = spec.bc.b
    if grid_step <= 0.0:
        raise ValueError("grid step must be positive")
    n = round(b / grid_step)
    if n < 1 or abs(n * grid_step - b) > GRID_FIT_TOL:
        raise ValueError(f"grid step {grid_step} does not divide [0, {b}]")
    rows = []
    for i in range(n + 1):
        x = b if i == n else i * grid_step
        value = approx.series(x)
        if spec.exact is None:
            rows.append(GridRow(x, value, None, None))
        else:
            ex = eval_exact(spec, x)
            rows.append(GridRow(x, value, ex, abs(value - ex)))
    return tuple(rows)


def solve(
    spec: ProblemSpec,
    k_components: int = 4,
    options: NewtonOptions | None = None,
    grid_step: float | None = None,
    initial_params: Sequence[float] | None = None,
) -> SolveResult:
    """Newton shooting, by default from a zero parameter vector.

    The Jacobian comes from forward differences, one residual evaluation
    per parameter with step ``fd_step_scale * max(1, |p_m|)``.  A
    condition estimate above ``max_condition`` or running out of
    iterations yields ``converged=False`` with the last iterate kept.
    The reported residual norm is recomputed from the returned
    approximant rather than carried over from the loop.
    """
    validate(spec)
    _require_room(spec)
    opts = options or NewtonOptions()
    n_params = spec.order - spec.bc.n_left
    if initial_params is None:
        p = np.zeros(n_params)
    else:
        p = _param_array(spec, initial_params).copy()
    converged = False
    message = ""
    iterations = 0
    r = residuals(spec, p, k_components)
    while True:
        if _residual_norm(r) <= opts.tol:
            converged = True
            break
        if iterations >= opts.max_iter:
            message = f"no convergence after {iterations} Newton updates"
            break
        jac = np.empty((r.size, n_params))
        for col in range(n_params):
            h = opts.fd_step_scale * max(1.0, abs(p[col]))
            shifted = p.copy()
            shifted[col] += h
            jac[:, col] = (residuals(spec, shifted, k_components) - r) / h
        cond = np.linalg.cond(jac)
        if not np.isfinite(cond) or cond > opts.max_condition:
            message = f"Jacobian numerically singular (condition estimate {cond:.3e})"
            break
        p = p + np.linalg.solve(jac, -r)
        iterations += 1
        r = residuals(spec, p, k_components)

    final = approximant(spec, p, k_components)
    report = None if grid_step is None else _grid_report(spec, final, grid_step)
    return SolveResult(
        approximant=final,
        params=tuple(float(v) for v in p),
        residual_norm=_residual_norm(_boundary_residuals(spec, final)),
        newton_iterations=iterations,
        converged=converged,
        message=message,
        grid_report=report,
    )
