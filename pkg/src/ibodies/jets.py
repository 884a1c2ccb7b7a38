"""Truncated Taylor jets.

A :class:`Jet` stores the Taylor coefficients ``a_k = f^(k)(x0)/k!`` of a
function about a fixed expansion point, up to a truncation order.  Arithmetic
propagates coefficients through the standard power-series recurrences, so the
derivatives obtained from a jet are exact up to floating-point rounding --
no step-size noise, no symbolic blowup.

The default truncation order used by the profile layer is 3; transform-level
compositions internally run at order 4 (a second derivative of a function
that itself consumes two derivative levels).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError, SmoothnessError

Scalar = Union[int, float]

# Tolerance for recognising an integer exponent given as a float.
_INT_EXP_TOL = 1e-12


class Jet:
    """Taylor coefficients of a function about one point, with arithmetic."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[float]):
        self.coeffs = tuple(float(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a jet needs at least the order-0 coefficient")

    # ---------------------------------------------------------------- basics

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "Jet":
        return cls((float(value),) + (0.0,) * order)

    @classmethod
    def variable(cls, value: Scalar, order: int) -> "Jet":
        """Jet of the identity function t -> t at the point ``value``."""
        if order == 0:
            return cls((float(value),))
        return cls((float(value), 1.0) + (0.0,) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return self.coeffs[0]

    def deriv(self, k: int) -> float:
        """k-th derivative at the expansion point."""
        if k > self.order:
            raise SmoothnessError(f"jet of order {self.order} has no derivative {k}")
        return math.factorial(k) * self.coeffs[k]

    def derivs(self) -> tuple:
        """(f, f', ..., f^(order)) at the expansion point."""
        return tuple(math.factorial(k) * c for k, c in enumerate(self.coeffs))

    def truncated(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        return Jet(self.coeffs[: order + 1])

    def derivative(self) -> "Jet":
        """Jet of f', one order lower."""
        if self.order == 0:
            raise SmoothnessError("cannot differentiate an order-0 jet")
        return Jet(tuple((k + 1) * self.coeffs[k + 1] for k in range(self.order)))

    def is_finite(self) -> bool:
        return all(math.isfinite(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Jet({self.coeffs})"

    # ------------------------------------------------------------ arithmetic

    def _align(self, other) -> tuple:
        if not isinstance(other, Jet):
            other = Jet.constant(other, self.order)
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other) -> "Jet":
        a, b, n = self._align(other)
        return Jet(tuple(a[k] + b[k] for k in range(n + 1)))

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        a, b, n = self._align(other)
        return Jet(tuple(a[k] - b[k] for k in range(n + 1)))

    def __rsub__(self, other) -> "Jet":
        a, b, n = self._align(other)
        return Jet(tuple(b[k] - a[k] for k in range(n + 1)))

    def __neg__(self) -> "Jet":
        return Jet(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(tuple(c * float(other) for c in self.coeffs))
        a, b, n = self._align(other)
        return Jet(
            tuple(
                math.fsum(a[j] * b[k - j] for j in range(k + 1))
                for k in range(n + 1)
            )
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(tuple(c / float(other) for c in self.coeffs))
        a, b, n = self._align(other)
        if b[0] == 0.0:
            raise SmoothnessError("division by a quantity vanishing at the evaluation point")
        out = [a[0] / b[0]]
        for k in range(1, n + 1):
            acc = a[k] - math.fsum(b[j] * out[k - j] for j in range(1, k + 1))
            out.append(acc / b[0])
        return Jet(out)

    def __rtruediv__(self, other) -> "Jet":
        return Jet.constant(other, self.order) / self

    # ----------------------------------------------------------- elementary

    def __pow__(self, exponent) -> "Jet":
        """Raise to a rational (or float) power via the series recurrence.

        A vanishing base is allowed only for non-negative integer exponents
        (computed by repeated multiplication, exactly) or for exponents larger
        than the truncation order (all retained derivatives vanish).  Other
        fractional powers of a vanishing quantity have unbounded derivatives
        and raise :class:`SmoothnessError`.
        """
        if isinstance(exponent, Fraction):
            q = float(exponent)
            is_int = exponent.denominator == 1
        else:
            q = float(exponent)
            is_int = abs(q - round(q)) <= _INT_EXP_TOL
        n = self.order
        a0 = self.coeffs[0]

        if a0 == 0.0:
            if is_int and round(q) >= 0:
                return self._int_power(round(q))
            if q > n + _INT_EXP_TOL:
                return Jet.constant(0.0, n)
            raise SmoothnessError(
                f"power {q} of a quantity vanishing at the evaluation point "
                "has no finite jet at this order"
            )
        if a0 < 0.0 and not is_int:
            raise DomainError(f"fractional power {q} of a negative quantity")
        if is_int:
            k = round(q)
            if k >= 0:
                return self._int_power(k)
            return Jet.constant(1.0, n) / self._int_power(-k)
        out = [a0 ** q]
        for k in range(1, n + 1):
            acc = math.fsum(
                (j * (q + 1.0) - k) * self.coeffs[j] * out[k - j]
                for j in range(1, k + 1)
            )
            out.append(acc / (k * a0))
        return Jet(out)

    def _int_power(self, k: int) -> "Jet":
        result = Jet.constant(1.0, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sqrt(self) -> "Jet":
        return self.__pow__(Fraction(1, 2))

    def exp(self) -> "Jet":
        out = [math.exp(self.coeffs[0])]
        for k in range(1, self.order + 1):
            acc = math.fsum(j * self.coeffs[j] * out[k - j] for j in range(1, k + 1))
            out.append(acc / k)
        return Jet(out)

    # ---------------------------------------------------------- composition

    def compose(self, inner: "Jet") -> "Jet":
        """Jet of f(u(.)) where ``self`` is the jet of f at ``inner.value``.

        Used for variable-convention changes such as t -> sqrt(1 - t^2).
        """
        n = min(self.order, inner.order)
        delta = Jet((0.0,) + inner.coeffs[1 : n + 1])
        acc = Jet.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            acc = acc * delta + self.coeffs[k]
        return acc
