"""Piecewise closed-form radial profiles of bodies of revolution.

A body of revolution in R^n (origin-symmetric, axis = last coordinate axis)
is determined by its radial function restricted to one quarter-meridian,
written as rho(t) for t = cos(angle from the axis) in [0, 1].  This module
represents such profiles as ordered lists of closed-form pieces (expression
trees over t), evaluates them together with exact derivatives via truncated
Taylor jets, and classifies the smoothness of the joints between pieces.

The same container is reused for functions of the sine of the vertical angle
(radial functions of intersection bodies); a variable-convention flag keeps
the two parameterizations from being mixed up silently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, ProfileFormatError, SideRequired, SmoothnessError
from .jets import Jet

COSINE = "cos"  # profile argument is the cosine of the vertical angle
SINE = "sin"    # profile argument is the sine of the vertical angle

# Matching tolerance used to decide that an evaluation point *is* a breakpoint.
_BP_MATCH_TOL = 1e-12
# Default tolerance (scaled by local derivative magnitude) for continuity classes.
DEFAULT_CLASS_TOL = 1e-9

_OPS = ("const", "t", "add", "sub", "mul", "div", "pow", "sqrt", "exp", "neg")
_ARITY = {"const": 0, "t": 0, "add": 2, "sub": 2, "mul": 2, "div": 2,
          "pow": 1, "sqrt": 1, "exp": 1, "neg": 1}


@dataclass(frozen=True)
class ExprNode:
    """Node of a closed-form expression tree over the single variable t.

    Supported operators: const, t, add, sub, mul, div, pow (rational
    exponent), sqrt, exp, neg.
    """

    op: str
    children: tuple = ()
    value: Optional[float] = None        # payload for "const"
    exponent: Optional[Fraction] = None  # payload for "pow"

    def __post_init__(self):
        if self.op not in _OPS:
            raise ProfileFormatError(f"unknown operator {self.op!r}")
        if len(self.children) != _ARITY[self.op]:
            raise ProfileFormatError(
                f"operator {self.op!r} takes {_ARITY[self.op]} children, "
                f"got {len(self.children)}"
            )
        if self.op == "const" and self.value is None:
            raise ProfileFormatError("const node needs a value")
        if self.op == "pow" and self.exponent is None:
            raise ProfileFormatError("pow node needs a rational exponent")

    # ------------------------------------------------------------ evaluation

    def eval_jet(self, t: float, order: int) -> Jet:
        """Taylor jet of the expression at t, truncated at ``order``."""
        if self.op == "const":
            return Jet.constant(self.value, order)
        if self.op == "t":
            return Jet.variable(t, order)
        if self.op == "add":
            return self.children[0].eval_jet(t, order) + self.children[1].eval_jet(t, order)
        if self.op == "sub":
            return self.children[0].eval_jet(t, order) - self.children[1].eval_jet(t, order)
        if self.op == "mul":
            return self.children[0].eval_jet(t, order) * self.children[1].eval_jet(t, order)
        if self.op == "div":
            return self.children[0].eval_jet(t, order) / self.children[1].eval_jet(t, order)
        if self.op == "pow":
            return self.children[0].eval_jet(t, order) ** self.exponent
        if self.op == "sqrt":
            return self.children[0].eval_jet(t, order).sqrt()
        if self.op == "exp":
            return self.children[0].eval_jet(t, order).exp()
        if self.op == "neg":
            return -self.children[0].eval_jet(t, order)
        raise AssertionError(self.op)

    def eval(self, t: float) -> float:
        return self.eval_jet(t, 0).value

    def eval_array(self, t: np.ndarray) -> np.ndarray:
        """Vectorized evaluation (values only) used by the Monte Carlo oracle."""
        if self.op == "const":
            return np.full_like(t, self.value, dtype=float)
        if self.op == "t":
            return np.asarray(t, dtype=float)
        if self.op == "add":
            return self.children[0].eval_array(t) + self.children[1].eval_array(t)
        if self.op == "sub":
            return self.children[0].eval_array(t) - self.children[1].eval_array(t)
        if self.op == "mul":
            return self.children[0].eval_array(t) * self.children[1].eval_array(t)
        if self.op == "div":
            return self.children[0].eval_array(t) / self.children[1].eval_array(t)
        if self.op == "pow":
            return np.power(self.children[0].eval_array(t), float(self.exponent))
        if self.op == "sqrt":
            return np.sqrt(self.children[0].eval_array(t))
        if self.op == "exp":
            return np.exp(self.children[0].eval_array(t))
        if self.op == "neg":
            return -self.children[0].eval_array(t)
        raise AssertionError(self.op)

    # ---------------------------------------------------------- serialization

    def to_prefix(self) -> str:
        if self.op == "const":
            return _format_number(self.value)
        if self.op == "t":
            return "t"
        if self.op == "pow":
            return f"(pow {self.children[0].to_prefix()} {_format_exponent(self.exponent)})"
        inner = " ".join(c.to_prefix() for c in self.children)
        return f"({self.op} {inner})"


def _format_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _format_exponent(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    if q.denominator <= 10**6:
        return f"{q.numerator}/{q.denominator}"
    return repr(float(q))


# ------------------------------------------------------- expression helpers

def const(v: Union[int, float]) -> ExprNode:
    return ExprNode("const", value=float(v))


def var_t() -> ExprNode:
    return ExprNode("t")


def _wrap(x) -> ExprNode:
    return x if isinstance(x, ExprNode) else const(x)


def add(a, b) -> ExprNode:
    return ExprNode("add", (_wrap(a), _wrap(b)))


def sub(a, b) -> ExprNode:
    return ExprNode("sub", (_wrap(a), _wrap(b)))


def mul(a, b) -> ExprNode:
    return ExprNode("mul", (_wrap(a), _wrap(b)))


def div(a, b) -> ExprNode:
    return ExprNode("div", (_wrap(a), _wrap(b)))


def powr(a, exponent) -> ExprNode:
    if not isinstance(exponent, Fraction):
        exponent = Fraction(exponent)  # floats convert exactly (dyadic rationals)
    return ExprNode("pow", (_wrap(a),), exponent=exponent)


def sqrt(a) -> ExprNode:
    return ExprNode("sqrt", (_wrap(a),))


def exp_of(a) -> ExprNode:
    return ExprNode("exp", (_wrap(a),))


def neg(a) -> ExprNode:
    return ExprNode("neg", (_wrap(a),))


# ------------------------------------------------------------ prefix parser

def parse_prefix(text: str) -> ExprNode:
    """Parse a prefix-notation expression string such as

        (div 1 (mul 2 (sqrt (sub 1 (mul t t)))))

    Numbers may be integers, floats, or fractions like -1/2.
    """
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> ExprNode:
        nonlocal pos
        if pos >= len(tokens):
            raise ProfileFormatError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise ProfileFormatError("unexpected end of expression")
            op = tokens[pos]
            pos += 1
            if op == "pow":
                base = parse()
                if pos >= len(tokens):
                    raise ProfileFormatError("pow needs an exponent")
                exponent = _parse_fraction(tokens[pos])
                pos += 1
                node = ExprNode("pow", (base,), exponent=exponent)
            elif op in ("add", "mul"):
                args = []
                while pos < len(tokens) and tokens[pos] != ")":
                    args.append(parse())
                if len(args) < 2:
                    raise ProfileFormatError(f"{op} needs at least two arguments")
                node = args[0]
                for a in args[1:]:
                    node = ExprNode(op, (node, a))
            elif op in ("sub", "div"):
                a = parse()
                b = parse()
                node = ExprNode(op, (a, b))
            elif op in ("sqrt", "exp", "neg"):
                node = ExprNode(op, (parse(),))
            else:
                raise ProfileFormatError(f"unknown operator {op!r}")
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ProfileFormatError(f"missing ')' after {op}")
            pos += 1
            return node
        if tok == ")":
            raise ProfileFormatError("unexpected ')'")
        if tok == "t":
            return ExprNode("t")
        return const(float(_parse_fraction(tok)))

    node = parse()
    if pos != len(tokens):
        raise ProfileFormatError("trailing tokens after expression")
    return node


def _parse_fraction(tok: str) -> Fraction:
    try:
        if "/" in tok:
            num, den = tok.split("/")
            return Fraction(int(num), int(den))
        return Fraction(float(tok))
    except (ValueError, ZeroDivisionError) as e:
        raise ProfileFormatError(f"bad number {tok!r}") from e


# ------------------------------------------------------------------- pieces

@dataclass(frozen=True)
class Piece:
    """One closed-form piece of a profile on a closed subinterval of [0, 1]."""

    interval: tuple
    expr: ExprNode

    def __post_init__(self):
        a, b = self.interval
        if not (0.0 <= a < b <= 1.0):
            raise ValueError(f"piece interval [{a}, {b}] must be nondegenerate inside [0, 1]")


@dataclass
class Breakpoint:
    """Joint between two pieces, annotated with its continuity class."""

    location: float
    smoothness_class: str           # "C0" | "C1" | "C2+"
    first_derivative_jump: float    # right minus left
    second_derivative_jump: float = 0.0


def _side_for(t: float, lo: float, hi: float, breakpoints: Sequence[float],
              order: int, side: Optional[str], classes=None):
    """Resolve which side of ``t`` an evaluation should use.

    Returns "left", "right", or None (interior point).  Raises SideRequired
    for a genuinely ambiguous request and DomainError outside [lo, hi].
    """
    if side not in (None, "left", "right"):
        raise ValueError(f"side must be 'left', 'right', or None, not {side!r}")
    if t < lo - _BP_MATCH_TOL or t > hi + _BP_MATCH_TOL:
        raise DomainError(f"argument {t} outside [{lo}, {hi}]")
    if abs(t - lo) <= _BP_MATCH_TOL:
        if side == "left":
            raise DomainError(f"no left neighborhood at the lower endpoint {lo}")
        return "right"
    if abs(t - hi) <= _BP_MATCH_TOL:
        if side == "right":
            raise DomainError(f"no right neighborhood at the upper endpoint {hi}")
        return "left"
    for i, b in enumerate(breakpoints):
        if abs(t - b) <= _BP_MATCH_TOL:
            if side is not None:
                return side
            if order == 0:
                return "left"  # values agree across the joint (continuity invariant)
            if classes is not None:
                cls = classes[i]
                smooth_to = {"C0": 0, "C1": 1, "C2+": 2}[cls]
                if order <= smooth_to:
                    return "left"  # derivatives up to this order agree
            raise SideRequired(
                f"t={t} is a non-smooth joint; pass side='left' or side='right' "
                f"for derivatives of order {order}"
            )
    return None


class RadialProfile:
    """Piecewise closed-form function on [0, 1] with jet evaluation.

    Invariants enforced at construction: the pieces tile [0, 1] exactly,
    the function is continuous across joints, and (for radial functions of
    bodies containing the origin) strictly positive on a validation grid.
    """

    def __init__(self, pieces: Sequence[Piece], variable: str = COSINE,
                 require_positive: bool = True, name: str = "",
                 class_tol: float = DEFAULT_CLASS_TOL):
        if variable not in (COSINE, SINE):
            raise ValueError(f"variable must be {COSINE!r} or {SINE!r}")
        pieces = tuple(pieces)
        if not pieces:
            raise ValueError("profile needs at least one piece")
        if abs(pieces[0].interval[0] - 0.0) > _BP_MATCH_TOL or \
           abs(pieces[-1].interval[1] - 1.0) > _BP_MATCH_TOL:
            raise ValueError("pieces must cover [0, 1]")
        for p, q in zip(pieces, pieces[1:]):
            if abs(p.interval[1] - q.interval[0]) > _BP_MATCH_TOL:
                raise ValueError(
                    f"pieces must tile [0, 1]: gap between {p.interval} and {q.interval}"
                )
        self.pieces = pieces
        self.variable = variable
        self.require_positive = require_positive
        self.name = name
        self.class_tol = class_tol
        self.domain = (0.0, 1.0)
        self.breakpoint_locations = [p.interval[1] for p in pieces[:-1]]
        self._validate_values()
        self.breakpoints = self._classify(class_tol)
        self._classes = [b.smoothness_class for b in self.breakpoints]

    # ------------------------------------------------------------ invariants

    def _validate_values(self):
        for p in self.pieces:
            a, b = p.interval
            grid = np.linspace(a, b, 35)[1:-1]
            vals = np.array([p.expr.eval(t) for t in grid])
            if not np.all(np.isfinite(vals)):
                raise ValueError(f"piece on [{a}, {b}] is not finite on its interior")
            if self.require_positive and not np.all(vals > 0.0):
                raise ValueError(f"piece on [{a}, {b}] is not strictly positive")
        for t0 in self.breakpoint_locations:
            left = self._piece_at(t0, "left").expr.eval(t0)
            right = self._piece_at(t0, "right").expr.eval(t0)
            scale = max(1.0, abs(left), abs(right))
            if abs(left - right) > 1e-9 * scale:
                raise ValueError(
                    f"pieces disagree at t={t0}: {left} (left) vs {right} (right)"
                )

    def _classify(self, tol: float):
        out = []
        for t0 in self.breakpoint_locations:
            out.append(_classify_joint(self, t0, tol))
        return out

    # ------------------------------------------------------------ evaluation

    def _piece_at(self, t: float, side: Optional[str]) -> Piece:
        if side == "left":
            for p in self.pieces:
                if t <= p.interval[1] + _BP_MATCH_TOL and t > p.interval[0] + _BP_MATCH_TOL:
                    return p
            return self.pieces[0]
        for p in self.pieces:
            if t < p.interval[1] - _BP_MATCH_TOL and t >= p.interval[0] - _BP_MATCH_TOL:
                return p
        return self.pieces[-1]

    def _jet(self, t: float, order: int, side: Optional[str] = None) -> Jet:
        use = _side_for(t, 0.0, 1.0, self.breakpoint_locations, order, side,
                        classes=getattr(self, "_classes", None))
        piece = self._piece_at(t, use if use is not None else "right")
        return piece.expr.eval_jet(float(t), order)

    def eval_jet(self, t: float, order: int = 0, side: Optional[str] = None) -> tuple:
        """Value and derivatives (up to ``order``) of the governing piece."""
        if not 0 <= order <= 3:
            raise ValueError("order must be between 0 and 3")
        jet = self._jet(t, order, side)
        if not jet.is_finite():
            raise SmoothnessError(f"derivatives up to order {order} are unbounded at t={t}")
        return jet.derivs()[: order + 1]

    def value(self, t: float, side: Optional[str] = None) -> float:
        return self.eval_jet(t, 0, side)[0]

    def eval_array(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        conds = []
        vals = []
        with np.errstate(all="ignore"):
            for p in self.pieces:
                a, b = p.interval
                conds.append((t >= a) & (t <= b))
                vals.append(p.expr.eval_array(t))
        return np.select(conds, vals, default=np.nan)

    def max_value(self, scan_points: int = 10001) -> float:
        # Piece endpoints join the scan so kink maxima are hit exactly.
        ends = [e for p in self.pieces for e in p.interval]
        grid = np.unique(np.concatenate([np.linspace(0.0, 1.0, scan_points), ends]))
        return float(np.nanmax(self.eval_array(grid)))

    def scaled(self, lam: float) -> "RadialProfile":
        """Profile of the dilated body (rho multiplied by a positive constant)."""
        if lam <= 0:
            raise ValueError("scale factor must be positive")
        pieces = [Piece(p.interval, mul(lam, p.expr)) for p in self.pieces]
        suffix = f" * {lam:g}"
        return RadialProfile(pieces, variable=self.variable,
                             require_positive=self.require_positive,
                             name=(self.name + suffix) if self.name else suffix.strip(" *"),
                             class_tol=self.class_tol)

    # ---------------------------------------------------------- serialization

    def to_json_dict(self) -> dict:
        return {
            "pieces": [
                {"interval": [p.interval[0], p.interval[1]], "expr": p.expr.to_prefix()}
                for p in self.pieces
            ]
        }

    def __repr__(self) -> str:
        label = self.name or f"{len(self.pieces)} piece(s)"
        return f"RadialProfile({label}, variable={self.variable!r})"


class DerivedProfile:
    """Profile-like function backed by a jet source instead of closed forms.

    Transform outputs (quadrature-backed intersection profiles, inverse-Radon
    profiles) are functions we can evaluate with derivatives but for which no
    expression tree exists.  This wrapper gives them the same evaluation and
    breakpoint-classification interface as :class:`RadialProfile`.
    """

    def __init__(self, jet_source: Callable, breakpoints: Sequence[float],
                 domain: tuple = (0.0, 1.0), variable: str = COSINE,
                 max_order: int = 2, name: str = ""):
        self.jet_source = jet_source
        self.breakpoint_locations = [b for b in breakpoints
                                     if domain[0] < b < domain[1]]
        self.domain = domain
        self.variable = variable
        self.max_order = max_order
        self.name = name
        self.class_tol = DEFAULT_CLASS_TOL

    def _jet(self, t: float, order: int, side: Optional[str] = None) -> Jet:
        if order > self.max_order:
            raise SmoothnessError(
                f"{self.name or 'derived profile'} provides derivatives up to "
                f"order {self.max_order}, requested {order}"
            )
        use = _side_for(t, self.domain[0], self.domain[1],
                        self.breakpoint_locations, order, side)
        return self.jet_source(float(t), order, use)

    def eval_jet(self, t: float, order: int = 0, side: Optional[str] = None) -> tuple:
        jet = self._jet(t, order, side)
        if not jet.is_finite():
            raise SmoothnessError(f"derivatives up to order {order} are unbounded at t={t}")
        return jet.derivs()[: order + 1]

    def value(self, t: float, side: Optional[str] = None) -> float:
        return self.eval_jet(t, 0, side)[0]

    def __repr__(self) -> str:
        return f"DerivedProfile({self.name!r}, variable={self.variable!r})"


ProfileLike = Union[RadialProfile, DerivedProfile]


@dataclass
class BodyOfRevolution:
    """Dimension plus radial profile: the geometric object under test."""

    dimension: int
    profile: RadialProfile
    family: Optional[str] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 3:
            raise ValueError("dimension must be an integer >= 3")
        self.dimension = int(self.dimension)
        if self.profile.variable != COSINE:
            raise ValueError("a body profile must use the cosine-angle convention")

    def describe(self) -> str:
        bits = self.family or self.profile.name or "custom profile"
        if self.params:
            inner = ", ".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
            bits += f"({inner})"
        return f"{bits} in R^{self.dimension}"


# ----------------------------------------------------------- classification

def _classify_joint(profile: ProfileLike, t0: float, tol: float) -> Breakpoint:
    order = min(2, getattr(profile, "max_order", 2))
    left = profile._jet(t0, order, "left").derivs()
    right = profile._jet(t0, order, "right").derivs()
    jump1 = right[1] - left[1] if order >= 1 else float("nan")
    jump2 = right[2] - left[2] if order >= 2 else float("nan")
    scale1 = max(1.0, abs(left[1]), abs(right[1])) if order >= 1 else 1.0
    if order >= 1 and abs(jump1) > tol * scale1:
        cls = "C0"
    else:
        scale2 = max(1.0, abs(left[2]), abs(right[2])) if order >= 2 else 1.0
        if order >= 2 and abs(jump2) > tol * scale2:
            cls = "C1"
        else:
            cls = "C2+"
    return Breakpoint(t0, cls, float(jump1), float(jump2) if order >= 2 else 0.0)


def classify_breakpoints(profile: ProfileLike, tol: Optional[float] = None):
    """Continuity class and first-derivative jump of every interior joint."""
    tol = profile.class_tol if tol is None else tol
    return [_classify_joint(profile, t0, tol) for t0 in profile.breakpoint_locations]


# ---------------------------------------------------------------- convexity

@dataclass
class ConvexityReport:
    convex: bool
    samples: int
    worst_turn: float       # most negative normalized cross product
    violations: int
    note: str = ""


def validate_convexity(profile: RadialProfile, n: int, samples: int = 720) -> ConvexityReport:
    """Diagnostic check that the profile bounds a convex body of revolution.

    Samples the meridian curve (rho*sqrt(1-t^2), rho*t), closes it up by the
    two reflection symmetries, and tests whether the discrete turning has a
    single sign within tolerance.  Never raises for a non-convex profile --
    the transforms are well-defined for star bodies -- it only reports.
    """
    if samples < 3:
        raise ValueError("need at least 3 samples")
    t = np.linspace(0.0, 1.0, samples)
    rho = profile.eval_array(t)
    x = rho * np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    y = rho * t
    # Quarter from equator (t=0) to pole (t=1); assemble the right half
    # top-to-bottom, then mirror to the left half.
    right = np.stack([np.concatenate([x[::-1], x[1:]]),
                      np.concatenate([y[::-1], -y[1:]])], axis=1)
    left = right[::-1][1:-1] * np.array([-1.0, 1.0])
    pts = np.vstack([right, left])
    d = np.diff(np.vstack([pts, pts[:1]]), axis=0)
    cross = d[:-1, 0] * d[1:, 1] - d[:-1, 1] * d[1:, 0]
    scale = np.max(np.abs(cross)) or 1.0
    turn = cross / scale
    # Orientation: the path above runs clockwise, so convex means turn <= 0.
    violations = int(np.sum(turn > 1e-7))
    worst = float(np.max(turn))
    convex = violations == 0
    note = "" if convex else f"{violations} sample(s) turn the wrong way"
    return ConvexityReport(convex, samples, worst, violations, note)


# --------------------------------------------------------------------- JSON

def profile_from_json(obj: Union[str, dict]) -> RadialProfile:
    """Build a profile from the JSON description format.

    Accepts either {"pieces": [{"interval": [a, b], "expr": "<prefix>"}]} or
    {"builtin": "<family>", "params": {...}}, as a dict or a path to a file.
    """
    if isinstance(obj, str):
        with open(obj) as fh:
            obj = json.load(fh)
    if not isinstance(obj, dict):
        raise ProfileFormatError("profile JSON must be an object")
    if "builtin" in obj:
        from . import families  # deferred: families builds on this module
        spec = families.FamilySpec(obj["builtin"], dict(obj.get("params", {})))
        return families.instantiate(spec).profile
    if "pieces" not in obj:
        raise ProfileFormatError("profile JSON needs 'pieces' or 'builtin'")
    pieces = []
    for entry in obj["pieces"]:
        try:
            a, b = entry["interval"]
            expr = parse_prefix(entry["expr"])
        except (KeyError, TypeError, ValueError) as e:
            raise ProfileFormatError(f"bad piece entry {entry!r}") from e
        pieces.append(Piece((float(a), float(b)), expr))
    return RadialProfile(pieces)


# --------------------------------------------- variable-convention change

def converted_variable(profile: ProfileLike) -> DerivedProfile:
    """Reparameterize between the cosine and sine conventions.

    If q(x) is the input, the output is q(sqrt(1 - t^2)) with derivatives via
    jet composition; applying it twice returns to the original parameter.
    Smoothness at the endpoints is generally reduced (the substitution has a
    square-root singularity there), so jets are only available strictly
    inside (0, 1).
    """
    target = SINE if profile.variable == COSINE else COSINE
    bps = sorted(np.sqrt(1.0 - np.array(profile.breakpoint_locations) ** 2))

    def source(t: float, order: int, side: Optional[str]) -> Jet:
        inner = (1.0 - Jet.variable(t, order) * Jet.variable(t, order)).sqrt()
        u0 = inner.value
        # A side for t maps to the opposite side for u = sqrt(1 - t^2).
        flip = {None: None, "left": "right", "right": "left"}[side]
        outer = profile._jet(u0, order, flip)
        return outer.compose(inner)

    lo = max(np.sqrt(1.0 - profile.domain[1] ** 2), 1e-8)
    hi = min(np.sqrt(1.0 - profile.domain[0] ** 2), 1.0)
    return DerivedProfile(source, [float(b) for b in bps], domain=(float(lo), float(hi)),
                          variable=target, max_order=getattr(profile, "max_order", 3),
                          name=f"{getattr(profile, 'name', '')} reparam".strip())
