"""Arithmetic on truncated Maclaurin series.

A :class:`PowerSeries` holds the coefficients ``c_0 .. c_{M-1}`` of
``sum_j c_j x**j`` for a fixed truncation order ``M``.  The order never
changes under arithmetic: products are Cauchy products with every term of
degree ``>= M`` discarded, differentiation shifts coefficients down and
leaves a zero in the last slot, and ``k``-fold integration shifts them up
with the factorial scaling ``c_{j+k} = c_j * j! / (j+k)!`` (integration
constants are zero, so the first ``k`` coefficients of the result vanish).

Two series entering a binary operation must share the same truncation
order; nothing is promoted or truncated implicitly.  Coefficients are
float64 and instances are immutable, so values can be shared freely,
including across threads.
"""

from __future__ import annotations

import numbers
from typing import Sequence

import numpy as np

__all__ = ["PowerSeries"]


def _checked(coeffs: np.ndarray) -> np.ndarray:
    if not np.isfinite(coeffs).all():
        raise ValueError("non-finite series coefficient (NaN or Inf)")
    coeffs.setflags(write=False)
    return coeffs


class PowerSeries:
    """A Maclaurin series truncated to a fixed number of coefficients.

    ``PowerSeries(values)`` takes the coefficients as given;
    ``PowerSeries(values, M)`` zero-pads them up to truncation order ``M``.
    Arithmetic uses the natural operators: ``p + q``, ``p - q``, ``p * q``
    (truncated Cauchy product), ``2.0 * p``, ``-p``.  ``p(x)`` evaluates
    the polynomial by Horner's rule.
    """

    __slots__ = ("_c",)

    def __init__(
        self,
        coefficients: Sequence[float] | np.ndarray,
        truncation_order: int | None = None,
    ):
        c = np.asarray(coefficients, dtype=float)
        if c.ndim != 1:
            raise ValueError("coefficients must form a one-dimensional sequence")
        m = c.size if truncation_order is None else int(truncation_order)
        if m < 1:
            raise ValueError("truncation order must be at least 1")
        if c.size > m:
            raise ValueError(
                f"{c.size} coefficients do not fit truncation order {m}"
            )
        out = np.zeros(m)
        out[: c.size] = c
        self._c = _checked(out)

    @classmethod
    def exp_scaled(cls, rate: float, truncation_order: int) -> "PowerSeries":
        """Series of exp(rate * x): coefficients ``rate**j / j!``."""
        m = int(truncation_order)
        if m < 1:
            raise ValueError("truncation order must be at least 1")
        c = np.empty(m)
        c[0] = 1.0
        for j in range(1, m):
            c[j] = c[j - 1] * rate / j
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        """Coefficient array ``c_0 .. c_{M-1}`` (read-only view)."""
        return self._c

    @property
    def truncation_order(self) -> int:
        return self._c.size

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, j: int) -> float:
        return float(self._c[j])

    def _match(self, other: "PowerSeries") -> None:
        if self._c.size != other._c.size:
            raise ValueError(
                "truncation order mismatch: "
                f"{self._c.size} vs {other._c.size}"
            )

    def __add__(self, other: object) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._match(other)
        return PowerSeries(self._c + other._c)

    def __sub__(self, other: object) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._match(other)
        return PowerSeries(self._c - other._c)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(-self._c)

    def __mul__(self, other: object) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            self._match(other)
            return PowerSeries(np.convolve(self._c, other._c)[: self._c.size])
        if isinstance(other, numbers.Real):
            return PowerSeries(self._c * float(other))
        return NotImplemented

    def __rmul__(self, other: object) -> "PowerSeries":
        if isinstance(other, numbers.Real):
            return PowerSeries(self._c * float(other))
        return NotImplemented

    def differentiate(self) -> "PowerSeries":
        """Termwise derivative; the lost top coefficient becomes zero."""
        m = self._c.size
        out = np.zeros(m)
        out[: m - 1] = self._c[1:] * np.arange(1, m)
        return PowerSeries(out)

    def integrate(self, k: int = 1) -> "PowerSeries":
        """k-fold integral from 0 with zero integration constants."""
        if k < 1:
            raise ValueError("integration count must be at least 1")
        m = self._c.size
        out = np.zeros(m)
        if k < m:
            denom = np.empty(m - k)
            for j in range(m - k):
                d = 1
                for i in range(1, k + 1):
                    d *= j + i
                denom[j] = d
            out[k:] = self._c[: m - k] / denom
        return PowerSeries(out)

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in self._c[::-1]:
            acc = acc * x + c
        return float(acc)

    def eval_derivative(self, order: int, x: float) -> float:
        """Value of the series' ``order``-th derivative at ``x``."""
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        s = self
        for _ in range(order):
            s = s.differentiate()
        return s(x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._c.size == other._c.size and bool(
            np.array_equal(self._c, other._c)
        )

    def __hash__(self) -> int:
        return hash((self._c.size, self._c.tobytes()))

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self._c[:4])
        tail = ", ..." if self._c.size > 4 else ""
        return f"PowerSeries([{head}{tail}], order={self._c.size})"
