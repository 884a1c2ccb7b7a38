"""Integral-transform pipeline for bodies of revolution.

The chain implemented here, for an origin-symmetric convex body of revolution
K in R^n (n = 4 or 6) with radial profile rho(t), t = cosine of the vertical
angle:

  1. h_n(x) = integral_0^x rho(t)^(n-1) (x^2 - t^2)^((n-4)/2) dt;
  2. the intersection-body radial function rho_IK(x) = h_n(x) / x^(n-3)
     (multiplicative constants omitted throughout -- they only dilate);
  3. the inverse spherical Radon transform g = R^{-1}(1/rho_IK);
  4. the box operator (1-t^2) g'' - (n-1) t g' + (n-1) g.

The resulting signed measure (continuous density plus atoms at kinks of g)
is the obstruction field: if it is negative anywhere, the intersection body
IK is provably not a polar zonoid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Sequence

import numpy as np

from .calculus import QuadratureRequest, integrate
from .errors import DomainError, SmoothnessError
from .jets import Jet
from .profile import (COSINE, SINE, BodyOfRevolution, DerivedProfile, Piece,
                      ProfileLike, RadialProfile, _classify_joint, add, div,
                      mul, powr, sub, var_t)

_EPS_AXIS = 1e-6  # lower evaluation cutoff: the pipeline formulas hold on (0, 1]
_FACT = [1, 1, 2, 6, 24]


def _require_even_dimension(n: int, minimum: int = 4):
    if int(n) != n or n < minimum or n % 2 != 0:
        raise DomainError(f"dimension must be an even integer >= {minimum}, got {n}")


# --------------------------------------------------------------- kernel jets

def _kernel_integral_jet(q_values: Callable[[float], float],
                         q_jet: Callable[[float, int, Optional[str]], Jet],
                         breakpoints: Sequence[float], n: int, x: float,
                         order: int, side: Optional[str]) -> Jet:
    """Taylor jet at x of H(x) = integral_0^x q(t) (x^2 - t^2)^((n-4)/2) dt.

    Only n = 4 and n = 6 are supported; for these, every derivative of H
    above the first (n=4) or second (n=6) localizes to jets of q at t = x,
    so a single quadrature pass (plus local jets) gives an exact jet:

      n=4:  H' = q
      n=6:  H = x^2 B - C,  B = int q,  C = int t^2 q;
            H' = 2xB,  H'' = 2B + 2xq,  H''' = 4q + 2xq',  H'''' = 6q' + 2xq''
    """
    if n not in (4, 6):
        raise DomainError(f"kernel-integral jets are implemented for n in {{4, 6}}, got {n}")
    if not 0 <= order <= 4:
        raise ValueError("order must be between 0 and 4")
    if x <= 0.0:
        raise DomainError(f"upper limit must be positive, got {x}")
    bps = [b for b in breakpoints if 0.0 < b < x]
    if n == 4:
        value = integrate(QuadratureRequest(q_values, 0.0, x, bps))
        derivs = [value]
        if order >= 1:
            jq = q_jet(x, order - 1, side)
            derivs += [jq.deriv(k - 1) for k in range(1, order + 1)]
    else:
        b_val = integrate(QuadratureRequest(q_values, 0.0, x, bps))
        c_val = integrate(QuadratureRequest(lambda t: t * t * q_values(t), 0.0, x, bps))
        derivs = [x * x * b_val - c_val]
        if order >= 1:
            derivs.append(2.0 * x * b_val)
        if order >= 2:
            jq = q_jet(x, order - 2, side)
            q0 = jq.deriv(0)
            derivs.append(2.0 * b_val + 2.0 * x * q0)
            if order >= 3:
                q1 = jq.deriv(1)
                derivs.append(4.0 * q0 + 2.0 * x * q1)
            if order >= 4:
                q2 = jq.deriv(2)
                derivs.append(6.0 * q1 + 2.0 * x * q2)
    return Jet([d / _FACT[k] for k, d in enumerate(derivs)])


def _power_integrand(profile: ProfileLike, power: int) -> Callable[[float], float]:
    def fn(t: float) -> float:
        return profile.value(t) ** power
    return fn


def _power_jet(profile: ProfileLike, power: int):
    def fn(x: float, order: int, side: Optional[str]) -> Jet:
        return profile._jet(x, order, side) ** power
    return fn


# ------------------------------------------------------------------ h and IK

def h_fn(profile: RadialProfile, n: int, x: float) -> float:
    """The moment integral h_n(x) = int_0^x rho^(n-1)(t) (x^2-t^2)^((n-4)/2) dt."""
    _require_even_dimension(n)
    if not 0.0 < x <= 1.0:
        raise DomainError(f"x must lie in (0, 1], got {x}")
    power = (n - 4) // 2

    def integrand(t: float) -> float:
        base = profile.value(t) ** (n - 1)
        return base if power == 0 else base * (x * x - t * t) ** power

    bps = [b for b in profile.breakpoint_locations if b < x]
    return integrate(QuadratureRequest(integrand, 0.0, x, bps))


def h_jet(profile: RadialProfile, n: int, x: float, order: int = 4,
          side: Optional[str] = None) -> Jet:
    """Jet of h_n at x (derivatives exact via the localization identities)."""
    return _kernel_integral_jet(_power_integrand(profile, n - 1),
                                _power_jet(profile, n - 1),
                                profile.breakpoint_locations, n, x, order, side)


def radon_transform(q: ProfileLike, n: int) -> DerivedProfile:
    """Forward spherical Radon transform of a rotationally symmetric function.

    Input q is a function of t (cosine convention); output is the function
    x -> x^(3-n) * integral_0^x q(t) (x^2-t^2)^((n-4)/2) dt of the sine of
    the vertical angle, constants omitted.
    """
    _require_even_dimension(n)
    if q.variable != COSINE:
        raise DomainError("forward transform input must use the cosine convention")

    def q_values(t: float) -> float:
        return q.value(t)

    def source(x: float, order: int, side: Optional[str]) -> Jet:
        jh = _kernel_integral_jet(q_values, q._jet, q.breakpoint_locations,
                                  n, x, order, side)
        return jh / Jet.variable(x, order) ** (n - 3)

    return DerivedProfile(source, q.breakpoint_locations, domain=(_EPS_AXIS, 1.0),
                          variable=SINE, max_order=4,
                          name=f"radon[{getattr(q, 'name', '') or 'q'}]")


def cylinder_intersection_closed_form() -> RadialProfile:
    """Known piecewise closed form of the R^6 cylinder's intersection profile.

    Pieces (x = sine of the vertical angle):
        1/sqrt(1-x^2)              on [0, 1/sqrt(2)]
        (3 - 16x^2 + 28x^4)/(8x^5) on [1/sqrt(2), 1]
    This carries a fixed positive normalization (3/2 times the bare moment
    ratio h_6(x)/x^3); downstream sign decisions are scale-free.
    """
    t = var_t()
    t2 = mul(t, t)
    left = powr(sub(1, t2), -1 / 2)
    right = div(add(sub(3, mul(16, t2)), mul(28, mul(t2, t2))),
                mul(8, powr(t, 5)))
    r = math.sqrt(0.5)
    return RadialProfile([Piece((0.0, r), left), Piece((r, 1.0), right)],
                         variable=SINE, name="cylinder intersection profile")


def intersection_radial(body: BodyOfRevolution) -> DerivedProfile:
    """Radial profile of the intersection body, x -> h_n(x)/x^(n-3).

    Quadrature-backed and evaluable (with derivatives) on [1e-6, 1].  For the
    R^6 cylinder the known piecewise closed form is attached as
    ``.closed_form`` (note it carries a 3/2 normalization relative to the
    bare moment ratio computed here).
    """
    n = body.dimension
    _require_even_dimension(n)
    profile = body.profile

    def source(x: float, order: int, side: Optional[str]) -> Jet:
        jh = h_jet(profile, n, x, order, side)
        return jh / Jet.variable(x, order) ** (n - 3)

    out = DerivedProfile(source, profile.breakpoint_locations,
                         domain=(_EPS_AXIS, 1.0), variable=SINE, max_order=3,
                         name=f"intersection[{body.describe()}]")
    out.closed_form = None
    if body.family == "cylinder" and n == 6:
        out.closed_form = cylinder_intersection_closed_form()
    return out


def reciprocal_closed_form(profile: RadialProfile) -> RadialProfile:
    """Pointwise reciprocal of a positive closed-form profile."""
    pieces = [Piece(p.interval, div(1, p.expr)) for p in profile.pieces]
    return RadialProfile(pieces, variable=profile.variable,
                         name=f"1/({profile.name})" if profile.name else "reciprocal")


def reciprocal_intersection_profile(body: BodyOfRevolution) -> ProfileLike:
    """The inverse-Radon input x -> x^(n-3)/h_n(x).

    When the intersection profile has an attached closed form (R^6 cylinder),
    its exact reciprocal is returned so that downstream results match the
    known printed expressions digit for digit; otherwise a quadrature-backed
    function with jets of order up to 4.  The two differ by a fixed positive
    factor only, which no sign decision depends on.
    """
    n = body.dimension
    _require_even_dimension(n)
    ik = intersection_radial(body)
    if getattr(ik, "closed_form", None) is not None:
        return reciprocal_closed_form(ik.closed_form)
    profile = body.profile

    def source(x: float, order: int, side: Optional[str]) -> Jet:
        jh = h_jet(profile, n, x, order, side)
        return Jet.variable(x, order) ** (n - 3) / jh

    return DerivedProfile(source, profile.breakpoint_locations,
                          domain=(_EPS_AXIS, 1.0), variable=SINE, max_order=4,
                          name=f"1/intersection[{body.describe()}]")


# ------------------------------------------------------------- inverse Radon

def inverse_radon(f: ProfileLike, n: int) -> DerivedProfile:
    """Inverse spherical Radon transform for rotationally symmetric functions.

    Input f is a function of x (sine convention); the output g is a function
    of t (cosine convention), constants omitted:

        n=4:  g(t) = d/dt (t f(t)) = f + t f'
        n=6:  g(t) = 6 f + 10 t f' + 2 t^2 f''

    Both are the fully reduced forms of the iterated-derivative inversion
    t (1/t d/dt)^(n-2) integral_0^t f(x) x^(n-2) (t^2-x^2)^((n-4)/2) dx,
    valid for any f smooth enough on the relevant piece.
    """
    if n not in (4, 6):
        raise DomainError(f"inverse Radon transform implemented for n in {{4, 6}}, got {n}")
    if f.variable != SINE:
        raise DomainError("inverse transform input must use the sine convention")
    extra = 1 if n == 4 else 2

    def source(t: float, order: int, side: Optional[str]) -> Jet:
        jf = f._jet(t, order + extra, side)
        if not jf.is_finite():
            raise SmoothnessError(
                f"input lacks the order-{order + extra} one-sided jet at t={t}"
            )
        jt = Jet.variable(t, order + extra)
        if n == 4:
            return jf + jt * jf.derivative()
        d1 = jf.derivative()
        return 6 * jf + 10 * jt * d1 + 2 * jt * jt * d1.derivative()

    max_order = min(2, getattr(f, "max_order", 4) - extra)
    return DerivedProfile(source, f.breakpoint_locations, domain=f.domain,
                          variable=COSINE, max_order=max_order,
                          name=f"invradon[{getattr(f, 'name', '') or 'f'}]")


def inverse_radon_brute(f: ProfileLike, n: int, t: float,
                        fd_step: float = 5e-4) -> float:
    """Direct evaluation of the iterated-derivative inversion formula.

    Computes t (1/t d/dt)^(n-2) of J(t) = int_0^t f(x) x^(n-2) (t^2-x^2)^((n-4)/2) dx
    with nested central differences -- slow and noise-amplifying, kept as an
    independent cross-check of :func:`inverse_radon`.
    """
    if n not in (4, 6):
        raise DomainError(f"inverse Radon transform implemented for n in {{4, 6}}, got {n}")
    if f.variable != SINE:
        raise DomainError("inverse transform input must use the sine convention")
    power = (n - 4) // 2
    bps = list(f.breakpoint_locations)
    lo = f.domain[0]

    def j_fn(u: float) -> float:
        def integrand(x: float) -> float:
            base = f.value(x) * x ** (n - 2)
            return base if power == 0 else base * (u * u - x * x) ** power

        inner = [b for b in bps if lo < b < u]
        return integrate(QuadratureRequest(integrand, lo, u, inner,
                                           rel_tol=1e-12, abs_tol=1e-14))

    level: Callable[[float], float] = j_fn
    for _ in range(n - 2):
        prev = level

        def level(u: float, prev=prev) -> float:
            return (prev(u + fd_step) - prev(u - fd_step)) / (2.0 * fd_step * u)

    return t * level(t)


# --------------------------------------------------------------- box operator

def box_operator(g: ProfileLike, n: int, t: float,
                 side: Optional[str] = None) -> float:
    """(1 - t^2) g''(t) - (n-1) t g'(t) + (n-1) g(t)."""
    if int(n) != n or n < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {n}")
    if g.variable != COSINE:
        raise DomainError("box operator acts on functions of the cosine variable")
    jet = g._jet(t, 2, side)
    if not jet.is_finite():
        raise SmoothnessError(f"no finite one-sided second derivative at t={t}")
    g0, g1, g2 = jet.derivs()[:3]
    return (1.0 - t * t) * g2 - (n - 1) * t * g1 + (n - 1) * g0


# ------------------------------------------------------------------ the field

def default_grid(breakpoints: Sequence[float], lo: float = _EPS_AXIS,
                 hi: float = 1.0, uniform_points: int = 2000,
                 cluster_points: int = 20) -> np.ndarray:
    """Uniform grid plus geometric clusters on each side of every breakpoint.

    The field varies fastest just past kinks of g, so each breakpoint b gets
    points b +/- 1e-3 * 2^-j, j = 0..cluster_points-1; exact breakpoints are
    excluded (they are handled by one-sided rows).
    """
    pts = list(np.linspace(lo, hi, uniform_points))
    for b in breakpoints:
        for j in range(cluster_points):
            off = 1e-3 * 2.0 ** -j
            for cand in (b - off, b + off):
                if lo < cand <= hi:
                    pts.append(cand)
    arr = np.unique(np.asarray(pts, dtype=float))
    keep = np.ones(arr.shape, dtype=bool)
    for b in breakpoints:
        keep &= np.abs(arr - b) > 1e-12
    return arr[keep]


@dataclass
class ObstructionField:
    """Discretized obstruction measure: continuous density plus atoms.

    The continuous part is sampled over ``grid``; at each kink of g the two
    one-sided limits appear as consecutive rows sharing the same t, with
    ``is_left_limit`` marking the left one.  ``atoms`` lists (location,
    weight) point masses; a negative density value (below tolerance) or a
    negative atom certifies the NotPolarZonoid verdict.
    """

    dimension: int
    body: str
    grid: list
    continuous_values: list
    is_left_limit: list
    atoms: list
    min_value: float
    min_location: float
    max_abs: float
    sign_changes: list
    verdict: str
    negativity_tol: float
    negative_jump_witness: bool = False
    breakpoint_classes: list = dc_field(default_factory=list)

    def value_at(self, t: float) -> float:
        idx = int(np.argmin(np.abs(np.asarray(self.grid) - t)))
        return self.continuous_values[idx]

    def to_csv(self, fh) -> None:
        fh.write("t,continuous_value,is_left_limit,is_atom,atom_weight\n")
        for t, v, flag in zip(self.grid, self.continuous_values, self.is_left_limit):
            fh.write(f"{t:.17g},{v:.17g},{int(flag)},0,\n")
        for t0, w in self.atoms:
            fh.write(f"{t0:.17g},,0,1,{w:.17g}\n")

    def summary(self) -> str:
        atoms = "; ".join(f"atom({t0:.8f}, {w:+.6g})" for t0, w in self.atoms) or "no atoms"
        return (f"min {self.min_value:.6g} at t={self.min_location:.8f}; {atoms}; "
                f"{len(self.sign_changes)} sign change(s); verdict {self.verdict}")


def obstruction_field(body: BodyOfRevolution, grid: Optional[Sequence[float]] = None,
                      negativity_scale: float = 1e-7,
                      class_tol: float = 1e-9,
                      uniform_points: int = 2000) -> ObstructionField:
    """Evaluate the zonoid-obstruction measure for a body of revolution.

    Continuous part: box_operator(inverse_radon(x^(n-3)/h_n)) sampled over the
    grid (one-sided at kinks); atoms: (1 - t0^2) times the first-derivative
    jump of g at each kink where g is continuous but not C1.  Verdict is
    NotPolarZonoid iff the density falls below -negativity_scale * max|density|
    or any atom is negative.
    """
    n = body.dimension
    if n not in (4, 6):
        raise DomainError(f"obstruction field implemented for n in {{4, 6}}, got {n}")
    f = reciprocal_intersection_profile(body)
    g = inverse_radon(f, n)

    joints = [_classify_joint(g, t0, class_tol) for t0 in g.breakpoint_locations]

    if grid is None:
        grid_arr = default_grid(g.breakpoint_locations,
                                lo=max(_EPS_AXIS, g.domain[0]),
                                uniform_points=uniform_points)
    else:
        grid_arr = np.asarray(sorted(grid), dtype=float)
        if grid_arr.size and (grid_arr[0] <= 0.0 or grid_arr[-1] > 1.0):
            raise DomainError("grid points must lie in (0, 1]")

    rows = []  # (t, value, is_left_limit, at_breakpoint)
    for t in grid_arr:
        if any(abs(t - j.location) <= 1e-12 for j in joints):
            continue
        rows.append((float(t), box_operator(g, n, float(t)), False, False))
    for j in joints:
        if j.smoothness_class == "C2+":
            rows.append((j.location, box_operator(g, n, j.location, side="left"),
                         False, True))
        else:
            rows.append((j.location, box_operator(g, n, j.location, side="left"),
                         True, True))
            rows.append((j.location, box_operator(g, n, j.location, side="right"),
                         False, True))
    rows.sort(key=lambda r: (r[0], not r[2]))

    atoms = [(j.location, (1.0 - j.location ** 2) * j.first_derivative_jump)
             for j in joints if j.smoothness_class == "C0"]

    values = np.array([r[1] for r in rows])
    max_abs = float(np.max(np.abs(values))) if values.size else 0.0
    tol = negativity_scale * max_abs
    interior = np.array([not r[3] for r in rows])
    negative_cont = bool(np.any(values < -tol))
    negative_interior = bool(np.any(values[interior] < -tol)) if interior.any() else False
    atom_scale = max([1.0] + [abs(w) for _, w in atoms])
    negative_atom = any(w < -1e-9 * atom_scale for _, w in atoms)

    verdict = "NotPolarZonoid" if (negative_cont or negative_atom) else "Inconclusive"
    jump_witness = negative_cont and not negative_interior

    signs = np.where(values > tol, 1, np.where(values < -tol, -1, 0))
    sign_changes = []
    last_sign = 0
    last_t = None
    for (t, _, _, _), s in zip(rows, signs):
        if s != 0:
            if last_sign != 0 and s != last_sign:
                sign_changes.append(0.5 * (last_t + t))
            last_sign, last_t = s, t

    k = int(np.argmin(values)) if values.size else 0
    return ObstructionField(
        dimension=n,
        body=body.describe(),
        grid=[r[0] for r in rows],
        continuous_values=[r[1] for r in rows],
        is_left_limit=[r[2] for r in rows],
        atoms=atoms,
        min_value=float(values[k]) if values.size else math.nan,
        min_location=rows[k][0] if rows else math.nan,
        max_abs=max_abs,
        sign_changes=sign_changes,
        verdict=verdict,
        negativity_tol=tol,
        negative_jump_witness=jump_witness,
        breakpoint_classes=[(j.location, j.smoothness_class, j.first_derivative_jump)
                            for j in joints],
    )
