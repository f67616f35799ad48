"""Command-line runner and the JSON problem-file format.

A problem file is a JSON object with keys ``order``, ``b``, ``left``,
``right`` (boundary values ordered by derivative), ``phi``, ``psi``
(arrays of ``{"poly": [c0, c1, ...], "exp_rate": a}`` terms meaning
``(polynomial) * exp(a x)``), ``nonlinear`` (array of
``{"weight_poly", "weight_exp_rate", "u_power", "du_power",
"coefficient"}``) and optionally ``exact`` in the same term grammar as
``phi``.  Unknown keys are rejected.  Exit codes: 0 solved, 2 solver did
not converge, 3 input/output failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .engine import GRID_FIT_TOL, GridRow, NewtonOptions, SolveResult, solve
from .problems import (
    BUILTIN_NAMES,
    BoundaryConditions,
    ExpPoly,
    ExpPolySum,
    ProblemSpec,
    ProblemValidationError,
    builtin,
    validate,
)
from .adomian import NonlinearTerm
from .series import PowerSeries

__all__ = [
    "RunConfig",
    "document_from_spec",
    "emit_plot_script",
    "main",
    "parse_problem_document",
    "parse_problem_file",
    "run",
]


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs."""

    problem: str
    k_components: int = 4
    truncation_order: int = 30
    grid_step: float = 0.1
    tol: float = 1e-12
    output: str | None = None
    format: str = "table"
    plot: str | None = None


def _is_number(value: object) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _series_terms(
    entries: object, key: str, errors: list[str]
) -> ExpPolySum | None:
    if not isinstance(entries, list):
        errors.append(f"{key}: expected an array of terms")
        return None
    terms = []
    for i, entry in enumerate(entries):
        where = f"{key}[{i}]"
        if not isinstance(entry, dict):
            errors.append(f"{where}: expected an object")
            continue
        unknown = set(entry) - {"poly", "exp_rate"}
        if unknown:
            errors.append(f"{where}: unknown keys {sorted(unknown)}")
        poly = entry.get("poly")
        if not isinstance(poly, list) or not poly or not all(
            _is_number(c) for c in poly
        ):
            errors.append(f"{where}.poly: expected a non-empty array of numbers")
            continue
        rate = entry.get("exp_rate", 0.0)
        if not _is_number(rate):
            errors.append(f"{where}.exp_rate: expected a number")
            continue
        terms.append(ExpPoly(tuple(poly), float(rate)))
    return ExpPolySum(tuple(terms))


def _boundary_values(values: object, key: str, errors: list[str]) -> tuple:
    if not isinstance(values, list) or not all(_is_number(v) for v in values):
        errors.append(f"{key}: expected an array of numbers")
        return ()
    return tuple(float(v) for v in values)


def parse_problem_document(
    document: object, truncation_order: int = 30
) -> ProblemSpec:
    """Problem from an already-decoded JSON document."""
    errors: list[str] = []
    if not isinstance(document, dict):
        raise ProblemValidationError(["top level: expected a JSON object"])
    known = {"order", "b", "left", "right", "phi", "psi", "nonlinear", "exact"}
    unknown = set(document) - known
    if unknown:
        errors.append(f"top level: unknown keys {sorted(unknown)}")
    for key in ("order", "b", "left", "right"):
        if key not in document:
            errors.append(f"{key}: required key missing")

    order = document.get("order", 0)
    if not isinstance(order, int) or isinstance(order, bool):
        errors.append("order: expected an integer")
        order = 0
    b = document.get("b", 1.0)
    if not _is_number(b):
        errors.append("b: expected a number")
        b = 1.0
    left = _boundary_values(document.get("left", []), "left", errors)
    right = _boundary_values(document.get("right", []), "right", errors)

    m = int(truncation_order)
    phi_sum = _series_terms(document.get("phi", []), "phi", errors)
    psi_sum = _series_terms(document.get("psi", []), "psi", errors)

    nonlinear: list[NonlinearTerm] = []
    raw_nonlinear = document.get("nonlinear", [])
    if not isinstance(raw_nonlinear, list):
        errors.append("nonlinear: expected an array")
        raw_nonlinear = []
    for i, entry in enumerate(raw_nonlinear):
        where = f"nonlinear[{i}]"
        if not isinstance(entry, dict):
            errors.append(f"{where}: expected an object")
            continue
        allowed = {"weight_poly", "weight_exp_rate", "u_power", "du_power",
                   "coefficient"}
        unknown = set(entry) - allowed
        if unknown:
            errors.append(f"{where}: unknown keys {sorted(unknown)}")
            continue
        powers = {}
        for field_name in ("u_power", "du_power"):
            v = entry.get(field_name, 0)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                errors.append(f"{where}.{field_name}: expected a non-negative integer")
                v = 0
            powers[field_name] = v
        coefficient = entry.get("coefficient", 1.0)
        if not _is_number(coefficient):
            errors.append(f"{where}.coefficient: expected a number")
            coefficient = 1.0
        weight_poly = entry.get("weight_poly", [1.0])
        if not isinstance(weight_poly, list) or not weight_poly or not all(
            _is_number(c) for c in weight_poly
        ):
            errors.append(f"{where}.weight_poly: expected a non-empty array of numbers")
            weight_poly = [1.0]
        weight_rate = entry.get("weight_exp_rate", 0.0)
        if not _is_number(weight_rate):
            errors.append(f"{where}.weight_exp_rate: expected a number")
            weight_rate = 0.0
        try:
            nonlinear.append(
                NonlinearTerm(
                    monomials=(
                        (float(coefficient), powers["u_power"], powers["du_power"]),
                    ),
                    x_weight=ExpPoly(tuple(weight_poly), float(weight_rate)).series(m),
                )
            )
        except ValueError as exc:
            errors.append(f"{where}: {exc}")

    exact = None
    if "exact" in document:
        exact = _series_terms(document["exact"], "exact", errors)

    if errors:
        raise ProblemValidationError(errors)

    spec = ProblemSpec(
        order=order,
        phi=phi_sum.series(m),
        psi=psi_sum.series(m),
        nonlinear=tuple(nonlinear),
        bc=BoundaryConditions.from_values(float(b), left, right),
        exact=exact,
    )
    return validate(spec)


def parse_problem_file(path: str | Path, truncation_order: int = 30) -> ProblemSpec:
    """Load and validate a JSON problem file."""
    text = Path(path).read_text()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemValidationError([f"{path}: not valid JSON ({exc})"]) from None
    return parse_problem_document(document, truncation_order)


def _trimmed(coeffs: np.ndarray) -> list[float]:
    last = int(np.max(np.nonzero(coeffs))) if np.any(coeffs) else -1
    return [float(c) for c in coeffs[: last + 1]]


def _series_document(series: PowerSeries) -> list[dict]:
    poly = _trimmed(series.coeffs)
    return [{"poly": poly, "exp_rate": 0.0}] if poly else []


def document_from_spec(spec: ProblemSpec) -> dict:
    """JSON document for the problem, inverse of :func:`parse_problem_document`.

    Series data is emitted as plain polynomials (``exp_rate`` 0), which
    reproduces the coefficients exactly on re-parse.  Terms with several
    monomials are flattened to one document entry per monomial.  The
    closed-form solution must be an :class:`ExpPolySum` (as in the
    bundled problems) to be serializable.
    """
    doc: dict = {
        "order": spec.order,
        "b": spec.bc.b,
        "left": [v for _, v in spec.bc.left],
        "right": [v for _, v in spec.bc.right],
        "phi": _series_document(spec.phi),
        "psi": _series_document(spec.psi),
        "nonlinear": [
            {
                "weight_poly": _trimmed(term.x_weight.coeffs) or [0.0],
                "weight_exp_rate": 0.0,
                "u_power": mono.u_power,
                "du_power": mono.du_power,
                "coefficient": mono.weight,
            }
            for term in spec.nonlinear
            for mono in term.monomials
        ],
    }
    if spec.exact is not None:
        if not isinstance(spec.exact, ExpPolySum):
            raise TypeError("closed-form solution is not serializable")
        doc["exact"] = [
            {"poly": list(t.poly), "exp_rate": t.rate} for t in spec.exact.terms
        ]
    return doc


def _fmt(value: float) -> str:
    return format(value, ".10g")


def _csv_text(rows: Sequence[GridRow]) -> str:
    lines = ["x,exact,approx,abs_error"]
    for row in rows:
        exact = "" if row.exact is None else _fmt(row.exact)
        err = "" if row.abs_error is None else _fmt(row.abs_error)
        lines.append(f"{_fmt(row.x)},{exact},{_fmt(row.approx)},{err}")
    return "\n".join(lines) + "\n"


def _table_text(rows: Sequence[GridRow]) -> str:
    has_exact = any(row.exact is not None for row in rows)
    if has_exact:
        header = ("x", "exact", "approx", "abs_error")
        cells = [
            (_fmt(r.x), _fmt(r.exact), _fmt(r.approx), _fmt(r.abs_error))
            for r in rows
        ]
    else:
        header = ("x", "approx")
        cells = [(_fmt(r.x), _fmt(r.approx)) for r in rows]
    widths = [
        max(len(header[c]), max(len(row[c]) for row in cells))
        for c in range(len(header))
    ]
    out = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for row in cells:
        out.append("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    return "\n".join(out) + "\n"


def _summary_text(config: RunConfig, result: SolveResult) -> str:
    state = "yes" if result.converged else f"no ({result.message})"
    lines = [
        f"problem: {config.problem}",
        f"components: {result.approximant.n_terms}, "
        f"truncation order: {config.truncation_order}",
        "recovered parameters: " + ", ".join(_fmt(p) for p in result.params),
        f"residual norm: {_fmt(result.residual_norm)}",
        f"newton iterations: {result.newton_iterations}",
        f"converged: {state}",
    ]
    return "\n".join(lines) + "\n"


def emit_plot_script(result: SolveResult, path: str | Path) -> tuple[Path, Path]:
    """Write ``<path>`` (gnuplot script) and ``<path>.csv`` next to it."""
    if result.grid_report is None:
        raise ValueError("solve result carries no grid report")
    script_path = Path(path)
    data_path = script_path.with_suffix(".csv")
    data_path.write_text(_csv_text(result.grid_report))
    has_exact = any(row.exact is not None for row in result.grid_report)
    name = data_path.name
    lines = [
        f"# Data: {name} with columns x, exact, approx, abs_error.",
        "set datafile separator ','",
        "set key left top",
    ]
    if has_exact:
        lines += [
            "set multiplot layout 2,1",
            "set title 'solution'",
            f"plot '{name}' skip 1 using 1:3 with lines title 'approximation', \\",
            f"     '{name}' skip 1 using 1:2 with points title 'exact'",
            "set title 'absolute error'",
            "set logscale y",
            f"plot '{name}' skip 1 using 1:4 with lines title 'abs error'",
            "unset multiplot",
        ]
    else:
        lines += [
            "set title 'solution'",
            f"plot '{name}' skip 1 using 1:3 with lines title 'approximation'",
        ]
    script_path.write_text("\n".join(lines) + "\n")
    return script_path, data_path


def _config_errors(config: RunConfig, spec: ProblemSpec) -> list[str]:
    errors = []
    if config.k_components < 1:
        errors.append(f"components: {config.k_components} is below 1")
    if config.format not in ("table", "csv"):
        errors.append(f"format: {config.format!r} is not 'table' or 'csv'")
    if not (math.isfinite(config.tol) and config.tol > 0.0):
        errors.append(f"tol: {config.tol!r} is not a positive real")
    floor = spec.order + 7
    if config.truncation_order < floor:
        errors.append(
            f"order: truncation order {config.truncation_order} is below "
            f"{floor} (equation order + 7)"
        )
    b = spec.bc.b
    step = config.grid_step
    if not (math.isfinite(step) and 0.0 < step <= b):
        errors.append(f"grid: step {step!r} does not lie in (0, {b}]")
    elif abs(round(b / step) * step - b) > GRID_FIT_TOL:
        errors.append(f"grid: step {step} does not divide [0, {b}]")
    return errors


def _load_problem(config: RunConfig) -> ProblemSpec:
    if config.problem in BUILTIN_NAMES:
        return builtin(config.problem, config.truncation_order)
    path = Path(config.problem)
    if not path.exists():
        raise FileNotFoundError(
            f"{config.problem!r} is neither a bundled problem "
            f"({', '.join(BUILTIN_NAMES)}) nor an existing file"
        )
    return parse_problem_file(path, config.truncation_order)


def run(config: RunConfig) -> int:
    """Solve one problem per the config; return the process exit code."""
    try:
        spec = _load_problem(config)
    except (OSError, ProblemValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    errors = _config_errors(config, spec)
    if errors:
        for line in errors:
            print(f"error: {line}", file=sys.stderr)
        return 3

    result = solve(
        spec,
        k_components=config.k_components,
        options=NewtonOptions(tol=config.tol),
        grid_step=config.grid_step,
    )

    payload = (
        _csv_text(result.grid_report)
        if config.format == "csv"
        else _table_text(result.grid_report)
    )
    summary = _summary_text(config, result)
    try:
        if config.output is None:
            sys.stdout.write(payload)
            if config.format == "table":
                sys.stdout.write("\n" + summary)
            else:
                sys.stderr.write(summary)
        else:
            text = payload + "\n" + summary if config.format == "table" else payload
            Path(config.output).write_text(text)
            if config.format == "csv":
                sys.stderr.write(summary)
        if config.plot is not None:
            emit_plot_script(result, config.plot)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0 if result.converged else 2


class _Parser(argparse.ArgumentParser):
    # Usage mistakes are input failures; keep exit code 2 for the solver.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="admbvp",
        description="Solve a high-order two-point boundary value problem "
        "by Adomian decomposition with boundary shooting.",
    )
    parser.add_argument(
        "--problem",
        required=True,
        help=f"bundled problem name ({', '.join(BUILTIN_NAMES)}) or path to "
        "a JSON problem file",
    )
    parser.add_argument(
        "--components", type=int, default=4, metavar="K",
        help="number of decomposition components (default 4)",
    )
    parser.add_argument(
        "--order", type=int, default=30, metavar="M",
        help="series truncation order (default 30)",
    )
    parser.add_argument(
        "--grid", type=float, default=0.1, metavar="STEP",
        help="report grid spacing; must divide the interval (default 0.1)",
    )
    parser.add_argument(
        "--tol", type=float, default=1e-12,
        help="Newton residual tolerance (default 1e-12)",
    )
    parser.add_argument(
        "--format", choices=("table", "csv"), default="table",
        help="report format (default table)",
    )
    parser.add_argument(
        "--out", default=None, metavar="PATH",
        help="write the report here instead of stdout",
    )
    parser.add_argument(
        "--plot", default=None, metavar="PATH",
        help="also write a gnuplot script here plus a CSV next to it",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(
        problem=args.problem,
        k_components=args.components,
        truncation_order=args.order,
        grid_step=args.grid,
        tol=args.tol,
        output=args.out,
        format=args.format,
        plot=args.plot,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
