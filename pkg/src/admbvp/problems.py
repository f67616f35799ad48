"""Problem definitions: boundary data, coefficients, bundled examples.

A :class:`ProblemSpec` describes ``u^(order) = phi(x) u + psi(x) + f(x, u, u')``
on ``[0, b]`` with the low derivatives ``0 .. n_left-1`` prescribed at 0 and
``0 .. n_right-1`` prescribed at ``b``, where ``n_left + n_right = order``.
Four ready-made seventh-order examples with known closed-form solutions are
available through :func:`builtin`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .adomian import NonlinearTerm
from .series import PowerSeries

__all__ = [
    "BUILTIN_NAMES",
    "BoundaryConditions",
    "ExpPoly",
    "ExpPolySum",
    "MissingExactSolution",
    "ProblemSpec",
    "ProblemValidationError",
    "builtin",
    "eval_exact",
    "validate",
]


class ProblemValidationError(ValueError):
    """Problem definition breaks one or more structural rules."""

    def __init__(self, violations: Iterable[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


class MissingExactSolution(LookupError):
    """The problem carries no closed-form solution to evaluate."""


@dataclass(frozen=True)
class ExpPoly:
    """``(c_0 + c_1 x + ...) * exp(rate * x)`` evaluated in closed form."""

    poly: tuple[float, ...]
    rate: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "poly", tuple(float(c) for c in self.poly))
        object.__setattr__(self, "rate", float(self.rate))

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.poly):
            acc = acc * x + c
        return acc * math.exp(self.rate * x)

    def series(self, truncation_order: int) -> PowerSeries:
        return PowerSeries(self.poly, truncation_order) * PowerSeries.exp_scaled(
            self.rate, truncation_order
        )


@dataclass(frozen=True)
class ExpPolySum:
    """Sum of :class:`ExpPoly` terms; callable like a plain function."""

    terms: tuple[ExpPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def __call__(self, x: float) -> float:
        return math.fsum(t(x) for t in self.terms)

    def series(self, truncation_order: int) -> PowerSeries:
        acc = PowerSeries([0.0], truncation_order)
        for t in self.terms:
            acc = acc + t.series(truncation_order)
        return acc


@dataclass(frozen=True)
class BoundaryConditions:
    """Derivative values pinned at the two ends of ``[0, b]``.

    ``left`` and ``right`` hold ``(derivative_order, value)`` pairs at
    ``x = 0`` and ``x = b``.  Structural rules (contiguous orders from 0,
    counts summing to the equation order) are checked by
    :func:`validate`, not here, so that every violation can be reported
    at once.
    """

    b: float
    left: tuple[tuple[int, float], ...]
    right: tuple[tuple[int, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(
            self, "left", tuple((int(o), float(v)) for o, v in self.left)
        )
        object.__setattr__(
            self, "right", tuple((int(o), float(v)) for o, v in self.right)
        )

    @classmethod
    def from_values(
        cls, b: float, left_values: Sequence[float], right_values: Sequence[float]
    ) -> "BoundaryConditions":
        """Build conditions for derivative orders ``0, 1, ...`` in turn."""
        return cls(
            b=b,
            left=tuple(enumerate(left_values)),
            right=tuple(enumerate(right_values)),
        )

    @property
    def n_left(self) -> int:
        return len(self.left)

    @property
    def n_right(self) -> int:
        return len(self.right)


@dataclass(frozen=True)
class ProblemSpec:
    """One boundary value problem, ready for the decomposition engine."""

    order: int
    phi: PowerSeries
    psi: PowerSeries
    nonlinear: tuple[NonlinearTerm, ...]
    bc: BoundaryConditions
    exact: Callable[[float], float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "nonlinear", tuple(self.nonlinear))

    @property
    def truncation_order(self) -> int:
        return self.phi.truncation_order


def validate(spec: ProblemSpec) -> ProblemSpec:
    """Check every structural rule; raise listing all violations."""
    problems: list[str] = []
    if not isinstance(spec.order, int) or spec.order < 2:
        problems.append(f"order {spec.order!r} is not an integer >= 2")
    bc = spec.bc
    if not math.isfinite(bc.b) or bc.b <= 0.0:
        problems.append(f"interval end b = {bc.b!r} is not a positive real")
    for side, pairs in (("left", bc.left), ("right", bc.right)):
        if [o for o, _ in pairs] != list(range(len(pairs))):
            problems.append(f"non-contiguous {side} derivative orders "
                            f"{[o for o, _ in pairs]}")
        if any(not math.isfinite(v) for _, v in pairs):
            problems.append(f"non-finite {side} boundary value")
    count = bc.n_left + bc.n_right
    if isinstance(spec.order, int) and count != spec.order:
        problems.append(f"condition count {count} != order {spec.order}")
    m = spec.phi.truncation_order
    if spec.psi.truncation_order != m:
        problems.append(
            f"truncation order mismatch: psi has {spec.psi.truncation_order}, "
            f"phi has {m}"
        )
    for i, term in enumerate(spec.nonlinear):
        if term.x_weight.truncation_order != m:
            problems.append(
                f"truncation order mismatch: nonlinear[{i}].x_weight has "
                f"{term.x_weight.truncation_order}, phi has {m}"
            )
    if spec.exact is not None and not callable(spec.exact):
        problems.append("exact solution must be callable or None")
    if problems:
        raise ProblemValidationError(problems)
    return spec


def eval_exact(spec: ProblemSpec, x: float) -> float:
    """Closed-form solution value; :class:`MissingExactSolution` if absent."""
    if spec.exact is None:
        raise MissingExactSolution("problem has no closed-form solution")
    return float(spec.exact(x))


def _zero(m: int) -> PowerSeries:
    return PowerSeries([0.0], m)


def _ex41(m: int) -> ProblemSpec:
    # u^(7) = x u + e^x (x^2 - 2x - 6), solution (1 - x) e^x.
    e = math.e
    return ProblemSpec(
        order=7,
        phi=PowerSeries([0.0, 1.0], m),
        psi=ExpPoly((-6.0, -2.0, 1.0), 1.0).series(m),
        nonlinear=(),
        bc=BoundaryConditions.from_values(
            1.0, (1.0, 0.0, -1.0, -2.0), (0.0, -e, -2.0 * e)
        ),
        exact=ExpPolySum((ExpPoly((1.0, -1.0), 1.0),)),
    )


def _ex42(m: int) -> ProblemSpec:
    # u^(7) = -e^x u^2, solution e^-x.
    inv_e = math.exp(-1.0)
    return ProblemSpec(
        order=7,
        phi=_zero(m),
        psi=_zero(m),
        nonlinear=(
            NonlinearTerm(
                monomials=((1.0, 2, 0),),
                x_weight=ExpPoly((-1.0,), 1.0).series(m),
            ),
        ),
        bc=BoundaryConditions.from_values(
            1.0, (1.0, -1.0, 1.0, -1.0), (inv_e, -inv_e, inv_e)
        ),
        exact=ExpPolySum((ExpPoly((1.0,), -1.0),)),
    )


def _ex43(m: int) -> ProblemSpec:
    # u^(7) = -u - e^x (35 + 12x + 2x^2), solution x (1 - x) e^x.
    e = math.e
    return ProblemSpec(
        order=7,
        phi=PowerSeries([-1.0], m),
        psi=ExpPoly((-35.0, -12.0, -2.0), 1.0).series(m),
        nonlinear=(),
        bc=BoundaryConditions.from_values(
            1.0, (0.0, 1.0, 0.0, -3.0), (0.0, -e, -4.0 * e)
        ),
        exact=ExpPolySum((ExpPoly((0.0, 1.0, -1.0), 1.0),)),
    )


def _ex44(m: int) -> ProblemSpec:
    # u^(7) = u u' + e^-2x (2 - 3x + x^2) + e^-x (x - 8), solution (1 - x) e^-x.
    inv_e = math.exp(-1.0)
    psi_form = ExpPolySum(
        (ExpPoly((2.0, -3.0, 1.0), -2.0), ExpPoly((-8.0, 1.0), -1.0))
    )
    return ProblemSpec(
        order=7,
        phi=_zero(m),
        psi=psi_form.series(m),
        nonlinear=(
            NonlinearTerm(monomials=((1.0, 1, 1),), x_weight=PowerSeries([1.0], m)),
        ),
        bc=BoundaryConditions.from_values(
            1.0, (1.0, -2.0, 3.0, -4.0), (0.0, -inv_e, 2.0 * inv_e)
        ),
        exact=ExpPolySum((ExpPoly((1.0, -1.0), -1.0),)),
    )


_BUILTINS = {"ex41": _ex41, "ex42": _ex42, "ex43": _ex43, "ex44": _ex44}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin(name: str, truncation_order: int = 30) -> ProblemSpec:
    """One of the bundled example problems, built at the given order."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise KeyError(
            f"unknown problem {name!r}; available: {', '.join(BUILTIN_NAMES)}"
        ) from None
    return validate(factory(int(truncation_order)))
