"""Adomian polynomials for nonlinearities built from powers of u and u'.

A nonlinearity is a sum of monomials ``weight * u**a * (u')**b`` times a
known series multiplier in x.  Given solution components ``u_0 .. u_n``,
``adomian_sequence`` returns the polynomials ``A_0 .. A_n`` where ``A_k``
collects exactly the k-th-grade part of the nonlinearity applied to the
graded sum ``sum_j p**j u_j`` (grade = subscript sum).  ``A_k`` therefore
depends on ``u_0 .. u_k`` only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .series import PowerSeries

__all__ = ["Monomial", "NonlinearTerm", "adomian_sequence", "oracle_adomian"]


class Monomial(NamedTuple):
    """One term ``weight * u**u_power * (u')**du_power``."""

    weight: float
    u_power: int
    du_power: int


@dataclass(frozen=True)
class NonlinearTerm:
    """A sum of monomials in u and u', times a series multiplier in x."""

    monomials: tuple[Monomial, ...]
    x_weight: PowerSeries

    def __init__(self, monomials: Iterable[Sequence], x_weight: PowerSeries):
        parsed = tuple(Monomial(float(w), int(a), int(b)) for w, a, b in monomials)
        if not parsed:
            raise ValueError("a nonlinear term needs at least one monomial")
        for mono in parsed:
            if mono.u_power < 0 or mono.du_power < 0:
                raise ValueError("monomial powers must be non-negative")
            if mono.u_power + mono.du_power < 1:
                raise ValueError("a monomial must involve u or u'")
            if not math.isfinite(mono.weight):
                raise ValueError("monomial weight must be finite")
        object.__setattr__(self, "monomials", parsed)
        object.__setattr__(self, "x_weight", x_weight)


def _graded_mul(
    a: Sequence[PowerSeries], b: Sequence[PowerSeries]
) -> list[PowerSeries]:
    # Convolution over grades, truncated at the highest grade present.
    n = len(a) - 1
    out: list[PowerSeries] = []
    if a is b:
        # Self-product: pair (i, k-i) with (k-i, i) so each off-diagonal
        # product is computed once and doubled.
        for k in range(n + 1):
            acc = None
            for i in range((k + 1) // 2):
                t = a[i] * a[k - i]
                acc = t if acc is None else acc + t
            total = 2.0 * acc if acc is not None else None
            if k % 2 == 0:
                mid = a[k // 2] * a[k // 2]
                total = mid if total is None else total + mid
            out.append(total)
        return out
    for k in range(n + 1):
        acc = a[0] * b[k]
        for i in range(1, k + 1):
            acc = acc + a[i] * b[k - i]
        out.append(acc)
    return out


def _graded_pow(seq: Sequence[PowerSeries], power: int) -> list[PowerSeries]:
    if power == 1:
        return list(seq)
    g = _graded_mul(seq, seq)
    for _ in range(power - 2):
        g = _graded_mul(g, seq)
    return g


def _components_tuple(components: Iterable[PowerSeries]) -> tuple[PowerSeries, ...]:
    comps = tuple(components)
    if not comps:
        raise ValueError("at least one solution component is required")
    m = comps[0].truncation_order
    for c in comps:
        if c.truncation_order != m:
            raise ValueError("solution components disagree on truncation order")
    return comps


def adomian_sequence(
    components: Iterable[PowerSeries],
    term: NonlinearTerm,
    apply_x_weight: bool = True,
) -> tuple[PowerSeries, ...]:
    """Polynomials ``A_0 .. A_n`` for ``n + 1`` solution components.

    Each monomial costs one graded convolution pass: ``u_power +
    du_power`` series multiplications per grade, building the graded
    powers of the component list and of its termwise derivatives.  With
    ``apply_x_weight`` the term's series multiplier is folded into every
    polynomial before it is returned.
    """
    comps = _components_tuple(components)
    m = comps[0].truncation_order
    if term.x_weight.truncation_order != m:
        raise ValueError("x_weight truncation order does not match the components")
    n = len(comps) - 1
    zero = PowerSeries([0.0], m)
    dcomps: tuple[PowerSeries, ...] | None = None
    total = [zero] * (n + 1)
    for mono in term.monomials:
        if mono.du_power:
            if dcomps is None:
                dcomps = tuple(c.differentiate() for c in comps)
            g = _graded_pow(dcomps, mono.du_power)
            if mono.u_power:
                g = _graded_mul(_graded_pow(comps, mono.u_power), g)
        else:
            g = _graded_pow(comps, mono.u_power)
        if mono.weight != 1.0:
            g = [mono.weight * gk for gk in g]
        total = [t + gk for t, gk in zip(total, g)]
    if apply_x_weight:
        total = [t * term.x_weight for t in total]
    return tuple(total)


def oracle_adomian(
    components: Iterable[PowerSeries],
    term: NonlinearTerm,
    apply_x_weight: bool = True,
) -> tuple[PowerSeries, ...]:
    """Reference construction, for tests only.

    Substitutes the parametrized expansion ``U(p) = sum_k p**k u_k`` into
    the nonlinearity, keeping the full polynomial in p with series-valued
    coefficients, then recovers ``A_k`` as the k-fold p-derivative at
    ``p = 0`` divided by ``k!``.  Slower than :func:`adomian_sequence`
    and organized completely differently on purpose.
    """
    comps = _components_tuple(components)
    m = comps[0].truncation_order
    n = len(comps) - 1
    zero = PowerSeries([0.0], m)
    one = PowerSeries([1.0], m)

    def poly_mul(p: list[PowerSeries], q: Sequence[PowerSeries]) -> list[PowerSeries]:
        out = [zero] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            for j, qj in enumerate(q):
                out[i + j] = out[i + j] + pi * qj
        return out

    du = [c.differentiate() for c in comps]
    total = [zero] * (n + 1)
    for mono in term.monomials:
        expanded = [one]
        for _ in range(mono.u_power):
            expanded = poly_mul(expanded, comps)
        for _ in range(mono.du_power):
            expanded = poly_mul(expanded, du)
        for k in range(n + 1):
            work = list(expanded)
            for _ in range(k):
                work = [
                    float(j + 1) * work[j + 1] for j in range(len(work) - 1)
                ] or [zero]
            at_zero = work[0] * (mono.weight / math.factorial(k))
            total[k] = total[k] + at_zero
    if apply_x_weight:
        total = [t * term.x_weight for t in total]
    return tuple(total)
