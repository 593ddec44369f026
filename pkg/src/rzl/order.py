"""Lexicographic order, metrics, balls and separation predicates.

Everything here is a depth-bounded semi-decision: the first provably
nonzero coefficient of a difference settles a comparison, and when no
coefficient can be certified nonzero the answer is Unknown rather than a
guess.  Certified and Refuted verdicts carry witnesses that replay the
decision (an index, a separating radius, a violating point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .number import (
    DEFAULT_DEPTH,
    RzlNumber,
    as_number,
    from_rational,
    leading_index,
    monomial,
)
from .scalar import (
    PRECISION_BUDGET,
    is_rational_scalar,
    scalar_abs_within,
    scalar_sign,
    scalar_sub,
)
from .verdict import UndecidedError, Verdict, certified, refuted, unknown

NEGATIVE = "negative"
POSITIVE = "positive"

INFINITESIMAL = "infinitesimal"
APPRECIABLE = "appreciable"
INFINITE = "infinite"


def sign_of(x: RzlNumber, depth: int = DEFAULT_DEPTH,
            budget: int = PRECISION_BUDGET) -> Verdict:
    """Sign of the first provably nonzero coefficient; Unknown = zero so far."""
    x = as_number(x)
    li = leading_index(x, depth, budget)
    if li.is_certified:
        s = scalar_sign(x[li.witness], budget)
        label = POSITIVE if s > 0 else NEGATIVE
        return certified(depth, witness=(li.witness, label), value=label)
    return unknown(depth, reason=li.reason)


def lex_less(x: RzlNumber, y: RzlNumber, depth: int = DEFAULT_DEPTH,
             budget: int = PRECISION_BUDGET) -> Verdict:
    """Strict lexicographic x < y.  Equality can never be certified, so
    x < x stays Unknown at every depth."""
    sv = sign_of(as_number(y) - as_number(x), depth, budget)
    if sv.is_certified:
        if sv.value == POSITIVE:
            return certified(depth, witness=sv.witness)
        return refuted(depth, witness=sv.witness)
    return unknown(depth, reason=sv.reason)


def abs_val(x: RzlNumber, depth: int = DEFAULT_DEPTH,
            budget: int = PRECISION_BUDGET) -> Verdict:
    """|x| as a Verdict-wrapped number.  Unknown sign means no value: the
    caller may not treat an undecided stream as zero."""
    x = as_number(x)
    sv = sign_of(x, depth, budget)
    if sv.is_certified:
        return certified(depth, witness=sv.witness,
                         value=x if sv.value == POSITIVE else -x)
    return unknown(depth, reason=sv.reason)


def classify(x: RzlNumber, depth: int = DEFAULT_DEPTH,
             budget: int = PRECISION_BUDGET) -> Verdict:
    x = as_number(x)
    li = leading_index(x, depth, budget)
    if not li.is_certified:
        return unknown(depth, reason=li.reason)
    m = li.witness
    label = INFINITESIMAL if m >= 1 else (APPRECIABLE if m == 0 else INFINITE)
    return certified(depth, witness=m, value=label)


def dis(x: RzlNumber, y: RzlNumber, depth: int = DEFAULT_DEPTH,
        budget: int = PRECISION_BUDGET) -> Verdict:
    """Distance |y - x| valued in the stream field itself."""
    return abs_val(as_number(y) - as_number(x), depth, budget)


def diss(x: RzlNumber, y: RzlNumber, depth: int = DEFAULT_DEPTH,
         budget: int = PRECISION_BUDGET) -> Verdict:
    """Standard part of |y - x|: the pseudo-metric that cannot tell 0 from eps."""
    d = dis(x, y, depth, budget)
    if d.is_certified:
        return certified(depth, witness=d.witness, value=d.value[0])
    return d


# -- Delta sets ----------------------------------------------------------------

@dataclass(frozen=True)
class DeltaSpec:
    m: int
    down_closed: bool = False

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be a nonnegative integer")


def in_delta(x: RzlNumber, d: DeltaSpec, depth: int = DEFAULT_DEPTH,
             budget: int = PRECISION_BUDGET) -> Verdict:
    """Membership in the order sets of infinitesimal depth.

    The down-closed set is read as "leading index >= m".  The plain set is
    the literal pure-monomial reading: a single coefficient at index m
    (nonzero when m >= 1) and nothing else; see `in_delta_leading` for the
    leading-order reading of the same set.
    """
    x = as_number(x)
    li = leading_index(x, depth, budget)
    if d.down_closed:
        if li.is_certified:
            if li.witness >= d.m:
                return certified(depth, witness=li.witness)
            return refuted(depth, witness=li.witness)
        if _provably_zero(x):
            # the zero stream is the a_0 = 0 member of the order-0 set only
            return certified(depth, reason="exact zero") if d.m == 0 \
                else refuted(depth, reason="exact zero")
        return unknown(depth, reason=li.reason)

    # pure-monomial reading
    hi = x.low + depth
    if x.finite_support is not None:
        hi = min(hi, x.finite_support)
    entire = x.finite_support is not None and x.finite_support <= hi
    undecided = None
    for i in range(x.low, hi + 1):
        if i == d.m:
            continue
        s = scalar_sign(x[i], budget)
        if s is None:
            undecided = i
        elif s != 0:
            return refuted(depth, witness=i,
                           reason=f"nonzero coefficient off index {d.m}")
    if d.m >= 1:
        s_m = scalar_sign(x[d.m], budget)
        if s_m == 0 and entire and undecided is None:
            return refuted(depth, reason="exact zero is not of positive order")
        if s_m is None or s_m == 0:
            return unknown(depth, reason="coefficient at m not certified nonzero")
    if entire and undecided is None:
        return certified(depth, witness=d.m)
    return unknown(depth, reason="tail beyond inspected window",
                   caveat=f"window {x.low}..{hi}")


def in_delta_leading(x: RzlNumber, m: int, depth: int = DEFAULT_DEPTH,
                     budget: int = PRECISION_BUDGET) -> Verdict:
    """Leading-order reading: the first nonzero coefficient sits at index m."""
    li = leading_index(as_number(x), depth, budget)
    if li.is_certified:
        if li.witness == m:
            return certified(depth, witness=m)
        return refuted(depth, witness=li.witness)
    return unknown(depth, reason=li.reason)


def _provably_zero(x: RzlNumber) -> bool:
    if x.finite_support is None:
        return False
    return all(is_rational_scalar(x[i]) and x[i] == 0
               for i in range(x.low, x.finite_support + 1))


# -- balls -----------------------------------------------------------------------

class BallKind(Enum):
    ST = "st"
    E = "e"
    RAT = "rat"
    PSI = "psi"


@dataclass(frozen=True)
class BallSpec:
    center: RzlNumber
    kind: BallKind
    n: int | None = None
    radius: RzlNumber | None = None


def st_ball(center: RzlNumber, n: int) -> BallSpec:
    if n < 1:
        raise ValueError("n must be a positive integer")
    return BallSpec(as_number(center), BallKind.ST, n=n)


def rat_ball(center: RzlNumber, n: int) -> BallSpec:
    if n < 1:
        raise ValueError("n must be a positive integer")
    return BallSpec(as_number(center), BallKind.RAT, n=n)


def psi_ball(center: RzlNumber, n: int) -> BallSpec:
    if n < 1:
        raise ValueError("n must be a positive integer")
    return BallSpec(as_number(center), BallKind.PSI, n=n)


def e_ball(center: RzlNumber, radius: RzlNumber) -> BallSpec:
    return BallSpec(as_number(center), BallKind.E, radius=as_number(radius))


def within_radius(d: RzlNumber, r: RzlNumber, depth: int, budget: int) -> Verdict:
    """Certify -r < d < r (two-sided, avoids needing a certified sign of d)."""
    upper = lex_less(d, r, depth, budget)
    lower = lex_less(-r, d, depth, budget)
    if upper.is_refuted or lower.is_refuted:
        side = upper if upper.is_refuted else lower
        return refuted(depth, witness=side.witness)
    if upper.is_certified and lower.is_certified:
        return certified(depth, witness=(lower.witness, upper.witness))
    return unknown(depth, reason="containment undecided at depth")


def ball_contains(b: BallSpec, z: RzlNumber, depth: int = DEFAULT_DEPTH,
                  budget: int = PRECISION_BUDGET) -> Verdict:
    z = as_number(z)
    d = z - b.center
    if b.kind in (BallKind.ST, BallKind.RAT):
        return within_radius(d, from_rational(Fraction(1, b.n)), depth, budget)
    if b.kind is BallKind.E:
        rad = in_delta(b.radius, DeltaSpec(1, down_closed=True), depth, budget)
        pos = sign_of(b.radius, depth, budget)
        if not (rad.is_certified and pos.is_certified and pos.value == POSITIVE):
            raise ValueError("e-ball radius must be a certified positive infinitesimal")
        return within_radius(d, b.radius, depth, budget)
    if b.kind is BallKind.PSI:
        gap = scalar_sub(z[0], b.center[0])
        inside = scalar_abs_within(gap, Fraction(1, b.n), budget)
        if inside is True:
            return certified(depth, witness=("st-gap", gap))
        if inside is False:
            return refuted(depth, witness=("st-gap", gap))
        return unknown(depth, reason="standard-part gap undecided")
    raise ValueError(f"unknown ball kind {b.kind!r}")


# -- separation -------------------------------------------------------------------

def distinguishable(x: RzlNumber, y: RzlNumber, kind: str,
                    depth: int = DEFAULT_DEPTH,
                    budget: int = PRECISION_BUDGET) -> Verdict:
    """Is there an open set of the given kind containing exactly one point?

    kind 'st': possible exactly when |x - y| is not infinitesimal; a ball of
    rational radius below half the gap is returned as witness.  kind 'e':
    any certified difference separates, with radius one order below it.
    """
    x, y = as_number(x), as_number(y)
    d = y - x
    li = leading_index(d, depth, budget)
    if kind == "st":
        if li.is_certified:
            m = li.witness
            if m >= 1:
                return refuted(depth, witness=m,
                               reason="difference is infinitesimal; every "
                                      "rational-radius ball around one point "
                                      "contains the other")
            return certified(depth, witness=("st-ball-n", _separating_n(d, m, budget)))
        if _provably_zero(d):
            return refuted(depth, reason="points are equal")
        return unknown(depth, reason=li.reason)
    if kind == "e":
        if li.is_certified:
            return certified(depth, witness=("eps-radius-order", li.witness + 1))
        if _provably_zero(d):
            return refuted(depth, reason="points are equal")
        return unknown(depth, reason=li.reason)
    raise ValueError("kind must be 'st' or 'e'")


def _separating_n(d: RzlNumber, m: int, budget: int) -> int:
    # smallest convenient n with 1/n < |leading gap|/2
    if m < 0:
        return 1
    c = d[0]
    if is_rational_scalar(c):
        return math.floor(2 / abs(Fraction(c))) + 1
    n = 1
    while n <= budget:
        lo, hi = c.bracket(n)
        if lo > 0 or hi < 0:
            bound = min(abs(lo), abs(hi))
            return math.floor(2 / bound) + 1
        n *= 2
    raise UndecidedError("certified leading coefficient lost its certificate")


def point_interior_witness(interval: tuple[RzlNumber, RzlNumber], z: RzlNumber,
                           kind: str, depth: int = DEFAULT_DEPTH,
                           budget: int = PRECISION_BUDGET) -> Verdict:
    """Search for a ball radius around z that stays inside the open interval.

    kind 'st' tries rational radii 1/n for n <= depth and refutes when a
    side gap is certified infinitesimal (every rational radius overshoots);
    kind 'e' tries monomial radii eps**m for m <= depth.
    """
    a, b = (as_number(interval[0]), as_number(interval[1]))
    z = as_number(z)
    if not lex_less(a, z, depth, budget).is_certified \
            or not lex_less(z, b, depth, budget).is_certified:
        raise UndecidedError("z must be certified interior to (a, b)")
    left = z - a
    right = b - z
    if kind == "st":
        for n in range(1, depth + 1):
            r = from_rational(Fraction(1, n))
            if lex_less(r, left, depth, budget).is_certified and \
                    lex_less(r, right, depth, budget).is_certified:
                return certified(depth, witness=("1/n", n))
        for side, name in ((left, "left"), (right, "right")):
            side_li = leading_index(side, depth, budget)
            if side_li.is_certified and side_li.witness >= 1:
                return refuted(depth, witness=(name, side_li.witness),
                               reason="gap is infinitesimal: every rational "
                                      "radius reaches outside the interval")
        return unknown(depth, reason="no radius certified within depth")
    if kind == "e":
        for m in range(1, depth + 1):
            r = monomial(1, m)
            if lex_less(r, left, depth, budget).is_certified and \
                    lex_less(r, right, depth, budget).is_certified:
                return certified(depth, witness=("eps^m", m))
        return unknown(depth, reason="no radius certified within depth")
    raise ValueError("kind must be 'st' or 'e'")
