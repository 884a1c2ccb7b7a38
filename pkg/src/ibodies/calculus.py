"""Numerical workhorses: adaptive quadrature, one-sided limits, root finding.

Everything downstream (the transform pipeline, criteria margins, parameter
sweeps) funnels through this module so that tolerances and failure modes are
decided in exactly one place.  Integration delegates to scipy's adaptive
Gauss-Kronrod routine; the value of this layer is the bookkeeping around it:
splitting at known breakpoints, honest error propagation, and hard failures
instead of silently degraded answers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from scipy import integrate as _sp_integrate

from .errors import Divergent, InvalidBracket, NoConvergence

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12


def set_default_tolerances(rel_tol: Optional[float] = None,
                           abs_tol: Optional[float] = None) -> None:
    """Override the process-wide quadrature tolerance defaults."""
    global DEFAULT_REL_TOL, DEFAULT_ABS_TOL
    if rel_tol is not None:
        if rel_tol <= 0:
            raise ValueError("relative tolerance must be positive")
        DEFAULT_REL_TOL = rel_tol
    if abs_tol is not None:
        if abs_tol <= 0:
            raise ValueError("absolute tolerance must be positive")
        DEFAULT_ABS_TOL = abs_tol


@dataclass
class QuadratureRequest:
    """Definite integral of a scalar function with explicit interior splits.

    ``breakpoints`` lists interior locations where the integrand (or its
    derivatives) may jump; the interval is split there so the adaptive rule
    never straddles a kink.  Tolerances default to the module-level settings
    at request-creation time (so they can be overridden process-wide).
    """

    fn: Callable[[float], float]
    lower: float
    upper: float
    breakpoints: Sequence[float] = field(default_factory=tuple)
    rel_tol: Optional[float] = None
    abs_tol: Optional[float] = None

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")
        inside = sorted(b for b in self.breakpoints
                        if self.lower < b < self.upper)
        self.breakpoints = tuple(inside)
        if self.rel_tol is None:
            self.rel_tol = DEFAULT_REL_TOL
        if self.abs_tol is None:
            self.abs_tol = DEFAULT_ABS_TOL


def integrate(request: QuadratureRequest) -> float:
    """Evaluate the integral, raising NoConvergence if the error target fails.

    Subintervals are integrated left to right and summed in that fixed order,
    so results are bit-reproducible for a given request.
    """
    edges = [request.lower, *request.breakpoints, request.upper]
    total = 0.0
    err_budget = 0.0
    for a, b in zip(edges, edges[1:]):
        out = _sp_integrate.quad(request.fn, a, b, full_output=1,
                                 epsabs=request.abs_tol, epsrel=request.rel_tol,
                                 limit=200)
        val, abserr = out[0], out[1]
        if len(out) == 4:  # scipy attached a warning message
            tol = 10.0 * max(request.abs_tol, request.rel_tol * abs(val))
            if abserr > tol:
                raise NoConvergence(
                    f"quadrature on [{a}, {b}] did not converge: "
                    f"estimate {val}, error {abserr}: {out[3].splitlines()[0]}"
                )
        total += val
        err_budget += abserr
    tol = 10.0 * max(request.abs_tol, request.rel_tol * abs(total))
    if err_budget > tol:
        raise NoConvergence(
            f"accumulated quadrature error {err_budget} exceeds tolerance {tol}"
        )
    return total


def one_sided_limit(fn: Callable[[float], float], t0: float, side: str,
                    initial_h: float = 2.0 ** -8, levels: int = 17,
                    rel_tol: float = 1e-11) -> float:
    """Limit of fn(t0 +/- h) as h -> 0 by Richardson extrapolation in h.

    Samples at geometrically shrinking offsets h = initial_h * 2^-i and
    accelerates the sequence; raises Divergent if no stable value emerges.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    sign = -1.0 if side == "left" else 1.0
    rows: list[list[float]] = []
    best = None
    best_delta = math.inf
    for i in range(levels):
        h = initial_h * 2.0 ** -i
        try:
            v = fn(t0 + sign * h)
        except (ArithmeticError, ValueError) as e:
            raise Divergent(f"function not evaluable at offset {h} from {t0}") from e
        if not math.isfinite(v):
            raise Divergent(f"function not finite at offset {h} from {t0}")
        row = [v]
        if rows:
            prev = rows[-1]
            for j in range(min(len(prev), 8)):
                # Eliminate the O(h^(j+1)) term of the expansion in h.
                fac = 2.0 ** (j + 1)
                row.append((fac * row[j] - prev[j]) / (fac - 1.0))
        rows.append(row)
        if len(row) >= 2:
            delta = abs(row[-1] - row[-2])
            scale = max(1.0, abs(row[-1]))
            if delta < best_delta:
                best_delta = delta
                best = row[-1]
            if delta <= rel_tol * scale:
                return row[-1]
    scale = max(1.0, abs(best) if best is not None else 1.0)
    if best is not None and best_delta <= 1e-7 * scale:
        return best
    raise Divergent(
        f"one-sided limit at t={t0} ({side}) did not stabilize "
        f"(best residual {best_delta:g})"
    )


@dataclass
class RootBracket:
    """Interval whose endpoint values have opposite signs."""

    lower: float
    upper: float
    f_lower: float
    f_upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise InvalidBracket(f"empty bracket [{self.lower}, {self.upper}]")
        if not (self.f_lower * self.f_upper < 0.0):
            raise InvalidBracket(
                f"no sign change on [{self.lower}, {self.upper}]: "
                f"f = {self.f_lower}, {self.f_upper}"
            )

    @classmethod
    def from_fn(cls, fn: Callable[[float], float], lower: float, upper: float):
        return cls(lower, upper, fn(lower), fn(upper))


def bisect(fn: Callable[[float], float], bracket: RootBracket,
           x_tol: float = 1e-12, max_iter: int = 200) -> float:
    """Plain bisection to x_tol; robust against noisy sign evaluations."""
    lo, hi = bracket.lower, bracket.upper
    f_lo = bracket.f_lower
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= x_tol:
            return mid
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def fd_check(value_fn: Callable[[float], float], deriv_fn: Callable[[float], float],
             t: float, order: int = 1, h0: float = 1e-2, levels: int = 8) -> tuple:
    """Compare an analytic derivative against a Richardson-refined central
    difference.  Returns (analytic, numeric, relative_error)."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")

    def stencil(h: float) -> float:
        if order == 1:
            return (value_fn(t + h) - value_fn(t - h)) / (2.0 * h)
        return (value_fn(t + h) - 2.0 * value_fn(t) + value_fn(t - h)) / (h * h)

    rows: list[list[float]] = []
    best = None
    best_delta = math.inf
    for i in range(levels):
        h = h0 * 2.0 ** -i
        row = [stencil(h)]
        if rows:
            prev = rows[-1]
            for j in range(len(prev)):
                fac = 4.0 ** (j + 1)  # central stencils improve in powers of h^2
                row.append((fac * row[j] - prev[j]) / (fac - 1.0))
        rows.append(row)
        if len(row) >= 2:
            delta = abs(row[-1] - row[-2])
            if delta < best_delta:
                best_delta = delta
                best = row[-1]
    numeric = best if best is not None else rows[-1][-1]
    analytic = deriv_fn(t)
    rel = abs(analytic - numeric) / max(1.0, abs(analytic), abs(numeric))
    return analytic, numeric, rel
