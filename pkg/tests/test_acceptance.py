"""Acceptance checks, one per solver guarantee, each printing a verdict line.

Run with ``pytest -s tests/test_acceptance.py`` to see the verdicts.
"""

import json
import math

import numpy as np

from admbvp.adomian import NonlinearTerm, adomian_sequence, oracle_adomian
from admbvp.cli import document_from_spec, parse_problem_file
from admbvp.engine import NewtonOptions, approximant, solve
from admbvp.problems import BUILTIN_NAMES, builtin
from admbvp.series import PowerSeries


def _verdict(num, label, ok, detail):
    state = "PASS" if ok else "FAIL"
    print(f"[{state}] criterion {num:02d} {label}: {detail}")
    assert ok, f"criterion {num:02d} {label}: {detail}"


def _grid_solve(name, k, targets):
    res = solve(builtin(name), k_components=k, grid_step=0.1)
    param_err = max(abs(p - t) for p, t in zip(res.params, targets))
    grid_err = max(row.abs_error for row in res.grid_report)
    return res.converged, param_err, grid_err


def test_criterion_01_linear_problem_ex41():
    conv, param_err, grid_err = _grid_solve("ex41", 4, (-3.0, -4.0, -5.0))
    ok = conv and param_err <= 1e-5 and grid_err <= 1e-8
    _verdict(
        1, "ex41 linear solve", ok,
        f"param err {param_err:.2e} (tol 1e-05), grid err {grid_err:.2e} (tol 1e-08)",
    )


def test_criterion_02_quadratic_problem_ex42():
    conv, param_err, grid_err = _grid_solve("ex42", 2, (1.0, -1.0, 1.0))
    ok = conv and param_err <= 1e-5 and grid_err <= 1e-6
    _verdict(
        2, "ex42 quadratic solve", ok,
        f"param err {param_err:.2e} (tol 1e-05), grid err {grid_err:.2e} (tol 1e-06)",
    )


def test_criterion_03_linear_problem_ex43():
    conv, _, grid_err = _grid_solve("ex43", 4, (-8.0, -15.0, -24.0))
    ok = conv and grid_err <= 1e-9
    _verdict(
        3, "ex43 linear solve", ok,
        f"grid err {grid_err:.2e} (tol 1e-09)",
    )


def test_criterion_04_product_problem_ex44():
    conv, _, grid_err = _grid_solve("ex44", 2, (5.0, -6.0, 7.0))
    ok = conv and grid_err <= 1e-8
    _verdict(
        4, "ex44 product solve", ok,
        f"grid err {grid_err:.2e} (tol 1e-08)",
    )


def test_criterion_05_polynomial_generator_matches_oracle():
    rng = np.random.default_rng(5)
    m = 12
    one = PowerSeries([1.0], m)
    terms = [
        NonlinearTerm(((1.0, 2, 0),), one),
        NonlinearTerm(((1.0, 1, 1),), one),
        NonlinearTerm(((1.0, 3, 2),), one),
    ]
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 7))
        comps = [
            PowerSeries(rng.uniform(-1.0, 1.0, size=int(rng.integers(1, m + 1))), m)
            for _ in range(n)
        ]
        for term in terms:
            for fast, slow in zip(
                adomian_sequence(comps, term), oracle_adomian(comps, term)
            ):
                worst = max(worst, float(np.max(np.abs(fast.coeffs - slow.coeffs))))
    _verdict(
        5, "generator vs oracle", worst <= 1e-12,
        f"worst coefficient dev {worst:.2e} over 50 random sets (tol 1e-12)",
    )


def test_criterion_06_square_nonlinearity_closed_forms():
    rng = np.random.default_rng(6)
    m = 16
    u0, u1, u2 = (
        PowerSeries(rng.uniform(-1.0, 1.0, size=m), m) for _ in range(3)
    )
    term = NonlinearTerm(((1.0, 2, 0),), PowerSeries([1.0], m))
    a0, a1, a2 = adomian_sequence([u0, u1, u2], term)
    ok = (
        np.array_equal(a0.coeffs, (u0 * u0).coeffs)
        and np.array_equal(a1.coeffs, (2.0 * (u0 * u1)).coeffs)
        and np.array_equal(a2.coeffs, (2.0 * (u0 * u2) + u1 * u1).coeffs)
    )
    _verdict(
        6, "square closed forms", ok,
        "A0 = u0^2, A1 = 2 u0 u1, A2 = 2 u0 u2 + u1^2 bitwise",
    )


def test_criterion_07_linear_problems_need_one_update():
    # the residual map is affine, so a forward-difference Jacobian is
    # exact up to ~1e-8 noise; tol 1e-6 keeps margin above that floor
    rng = np.random.default_rng(7)
    worst_iters = 0
    all_converged = True
    for name in ("ex41", "ex43"):
        for _ in range(12):
            start = rng.uniform(-10.0, 10.0, size=3)
            res = solve(
                builtin(name),
                k_components=4,
                options=NewtonOptions(tol=1e-6),
                initial_params=start,
            )
            all_converged &= res.converged
            worst_iters = max(worst_iters, res.newton_iterations)
    ok = all_converged and worst_iters == 1
    _verdict(
        7, "one-update convergence", ok,
        f"24 random starts in [-10,10]^3, max updates {worst_iters}, "
        f"all converged {all_converged}",
    )


def test_criterion_08_left_boundary_exactness():
    rng = np.random.default_rng(8)
    worst = 0.0
    for name in BUILTIN_NAMES:
        spec = builtin(name)
        for _ in range(5):
            params = rng.uniform(-5.0, 5.0, size=3)
            series = approximant(spec, params, 3).series
            for order_i, alpha in spec.bc.left:
                worst = max(worst, abs(series.eval_derivative(order_i, 0.0) - alpha))
    _verdict(
        8, "left-boundary exactness", worst <= 1e-13,
        f"worst derivative dev at 0 is {worst:.2e} (tol 1e-13)",
    )


def test_criterion_09_series_algebra_laws():
    rng = np.random.default_rng(9)
    m = 30
    ok = True
    worst = 0.0

    def dev(a, b):
        return float(np.max(np.abs(a.coeffs - b.coeffs)))

    for _ in range(200):
        p, q, r = (
            PowerSeries(rng.uniform(-1.0, 1.0, size=int(rng.integers(1, m + 1))), m)
            for _ in range(3)
        )
        ok &= np.array_equal((p + q).coeffs, (q + p).coeffs)
        worst = max(worst, dev((p + q) + r, p + (q + r)))
        worst = max(worst, dev(p * q, q * p))
        worst = max(worst, dev((p * q) * r, p * (q * r)))
        worst = max(worst, dev(p * (q + r), p * q + p * r))

        restored = p.integrate(1).differentiate()
        ok &= bool(
            np.allclose(restored.coeffs[:-1], p.coeffs[:-1], rtol=1e-14, atol=0.0)
        )
        ok &= restored.coeffs[-1] == 0.0
        deep = p.integrate(7)
        ok &= not np.any(deep.coeffs[:7])
        worst = max(worst, dev(p.integrate(3).integrate(4), deep))

        x = float(rng.uniform(0.0, 1.0))
        direct = math.fsum(c * x**j for j, c in enumerate(p.coeffs))
        ok &= abs(p(x) - direct) <= 1e-13 * (1.0 + abs(direct))
    ok = ok and worst <= 1e-12
    _verdict(
        9, "series algebra laws", ok,
        f"200 cases, worst law deviation {worst:.2e} (tol 1e-12)",
    )


def test_criterion_10_problem_file_round_trip(tmp_path):
    worst = 0.0
    all_converged = True
    for name in BUILTIN_NAMES:
        k = 2 if name in ("ex42", "ex44") else 4
        ref = builtin(name)
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(document_from_spec(ref)))
        direct = solve(ref, k_components=k)
        reloaded = solve(parse_problem_file(path), k_components=k)
        all_converged &= direct.converged and reloaded.converged
        worst = max(
            worst,
            max(abs(a - b) for a, b in zip(direct.params, reloaded.params)),
        )
    ok = all_converged and worst <= 1e-12
    _verdict(
        10, "problem-file round trip", ok,
        f"worst parameter dev {worst:.2e} (tol 1e-12), all converged {all_converged}",
    )
