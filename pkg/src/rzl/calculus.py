"""Evaluation of expressions over coefficient streams, series
transcendentals, the quotient derivative and its permeation to the reals.

The derivative is the literal Newton quotient (f(x+eps) - f(x)) / eps,
kept exact: division by the canonical infinitesimal is an index shift, so
no leading-term search is ever needed.  Whether its standard part may be
carried over to plain real calculus is a separate, certificate-guarded
step: permeation requires the quotient's standard part to provably agree
with the symbolic derivative AND the evaluation point to be provably free
of nonstandard parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import expr as E
from .number import (
    DEFAULT_DEPTH,
    PartSelector,
    RzlNumber,
    as_number,
    divide,
    epsilon,
    from_scalar,
    omega,
    part,
)
from .scalar import (
    PRECISION_BUDGET,
    CompReal,
    creal_elementary,
    is_rational_scalar,
    scalar_add,
    scalar_div,
    scalar_eq,
    scalar_is_zero,
    scalar_mul,
    scalar_neg,
    scalar_sign,
)
from .verdict import (
    DomainError,
    UndecidedError,
    Verdict,
    certified,
    refuted,
    unknown,
)

_SIN_CYCLE = ("sin", "cos", "-sin", "-cos")
_COS_CYCLE = ("cos", "-sin", "-cos", "sin")


def _compare_scalar(value, op: str, bound, budget: int):
    """Decide St-predicates exactly on rationals, by sign certificate on
    computable reals; raises when undecided."""
    gap = value - Fraction(bound) if is_rational_scalar(value) \
        else value - CompReal.from_rational(bound)
    s = scalar_sign(gap, budget)
    if s is None:
        raise UndecidedError("undecided at depth: standard-part predicate")
    if op == "<=":
        return s <= 0
    if op == "<":
        return s < 0
    if op == "=":
        return s == 0
    if op == ">":
        return s > 0
    return s >= 0


def evaluate(f: E.Expr, x: RzlNumber, depth: int = DEFAULT_DEPTH,
             budget: int = PRECISION_BUDGET, var: str = "x") -> RzlNumber:
    """Structural evaluation of an expression at a stream point."""
    x = as_number(x)

    def go(t) -> RzlNumber:
        if isinstance(t, E.Var):
            if t.name != var:
                raise DomainError(f"unbound variable {t.name!r}")
            return x
        if isinstance(t, E.Const):
            return from_scalar(t.value)
        if isinstance(t, E.EpsilonLit):
            return epsilon()
        if isinstance(t, E.OmegaLit):
            return omega()
        if isinstance(t, E.Add):
            return go(t.left) + go(t.right)
        if isinstance(t, E.Sub):
            return go(t.left) - go(t.right)
        if isinstance(t, E.Mul):
            return go(t.left) * go(t.right)
        if isinstance(t, E.Div):
            return divide(go(t.left), go(t.right), depth, budget)
        if isinstance(t, E.PowInt):
            return go(t.base) ** t.exponent
        if isinstance(t, E.Sin):
            return transcendental("sin", go(t.arg), depth, budget)
        if isinstance(t, E.Cos):
            return transcendental("cos", go(t.arg), depth, budget)
        if isinstance(t, E.Exp):
            return transcendental("exp", go(t.arg), depth, budget)
        if isinstance(t, E.Sign):
            s = scalar_sign(go(t.arg)[0], budget)
            if s is None:
                raise UndecidedError("undecided at depth: sign of standard part")
            return from_scalar(s)
        if isinstance(t, E.Abs):
            v = go(t.arg)
            from .order import abs_val
            av = abs_val(v, depth, budget)
            if not av.is_certified:
                raise UndecidedError("undecided at depth: absolute value", av)
            return av.value
        if isinstance(t, E.Part):
            return part(go(t.arg), t.selector)
        if isinstance(t, E.PiecewiseSt):
            st = go(t.subject)[0]
            taken = _compare_scalar(st, t.op, t.bound, budget)
            return go(t.then_branch if taken else t.else_branch)
        raise TypeError(f"unknown node {t!r}")

    return go(f)


# -- series transcendentals ---------------------------------------------------------

def transcendental(kind: str, x: RzlNumber, depth: int = DEFAULT_DEPTH,
                   budget: int = PRECISION_BUDGET) -> RzlNumber:
    """sin/cos/exp of a stream with no infinite part.

    Evaluated as the series shifted around the standard part s with the
    infinitesimal displacement d: coefficient k is the finite sum over
    n <= k of g_n(s) * (d**n)[k], where g_n(s) is the n-th derivative of
    the outer function at s divided by n!.  A nonzero (or undecidable)
    coefficient at a negative index makes every output coefficient an
    infinite sum, so infinite arguments are rejected outright.
    """
    if kind not in ("sin", "cos", "exp"):
        raise ValueError(f"unknown series function {kind!r}")
    x = as_number(x)
    for i in range(x.low, 0):
        if not scalar_is_zero(x[i]):
            raise DomainError("series undefined for infinite argument")
    s = x[0]
    if not is_rational_scalar(s):
        raise DomainError("series functions need an exact rational standard part")
    s = Fraction(s)
    delta = part(x, PartSelector.NST_EPSILON)
    coeff = _taylor_coefficients(kind, s)

    powers = [None, delta]   # powers[n] = delta**n, grown on demand

    def delta_pow(n):
        while len(powers) <= n:
            powers.append(powers[-1] * delta)
        return powers[n]

    def fn(k):
        acc = coeff(0) if k == 0 else 0
        for n in range(1, k + 1):
            c = coeff(n)
            if scalar_is_zero(c):
                continue
            dnk = delta_pow(n)[k]
            if scalar_is_zero(dnk):
                continue
            acc = scalar_add(acc, scalar_mul(c, dnk))
        return acc

    fs = 0 if (x.finite_support is not None and x.finite_support <= 0) else None
    return RzlNumber(0, fn, finite_support=fs)


def _taylor_coefficients(kind: str, s: Fraction):
    """n -> n-th derivative of the function at s over n!, exact at s = 0."""
    if s == 0:
        base = {"sin": (0, 1, 0, -1), "cos": (1, 0, -1, 0)}
    else:
        sin_s = creal_elementary("sin", s)
        cos_s = creal_elementary("cos", s)
        base = {"sin": (sin_s, cos_s, -sin_s, -cos_s),
                "cos": (cos_s, -sin_s, -cos_s, sin_s)}
    exp_s = Fraction(1) if s == 0 else creal_elementary("exp", s)
    facts = [1]

    def coeff(n):
        while len(facts) <= n:
            facts.append(facts[-1] * len(facts))
        inv_fact = Fraction(1, facts[n])
        if kind == "exp":
            return scalar_mul(exp_s, inv_fact)
        return scalar_mul(base[kind][n % 4], inv_fact)

    return coeff


# -- Newton-quotient derivative ------------------------------------------------------

def der(f: E.Expr, x: RzlNumber, depth: int = DEFAULT_DEPTH,
        budget: int = PRECISION_BUDGET,
        displacement: RzlNumber | None = None) -> RzlNumber:
    """The exact quotient (f(x+d) - f(x)) / d, with d the canonical
    infinitesimal unless another displacement is supplied."""
    x = as_number(x)
    d = epsilon() if displacement is None else as_number(displacement)
    num = evaluate(f, x + d, depth, budget) - evaluate(f, x, depth, budget)
    if displacement is None:
        return num.shift(-1).trim_low()
    return divide(num, d, depth, budget).trim_low()


def classical_derivative(f: E.Expr) -> E.Expr:
    return E.classical_derivative(f)


def eval_scalar(f: E.Expr, s, budget: int = PRECISION_BUDGET):
    """Evaluate an expression at a scalar (real) point.

    Division requires a certified nonzero denominator; series functions
    require an exact rational argument.
    """
    def go(t):
        if isinstance(t, E.Var):
            return s
        if isinstance(t, E.Const):
            return t.value
        if isinstance(t, (E.EpsilonLit, E.OmegaLit)):
            raise DomainError("unit literals have no scalar value")
        if isinstance(t, E.Add):
            return scalar_add(go(t.left), go(t.right))
        if isinstance(t, E.Sub):
            return scalar_add(go(t.left), scalar_neg(go(t.right)))
        if isinstance(t, E.Mul):
            return scalar_mul(go(t.left), go(t.right))
        if isinstance(t, E.Div):
            return scalar_div(go(t.left), go(t.right), budget)
        if isinstance(t, E.PowInt):
            acc = 1
            base = go(t.base)
            for _ in range(t.exponent):
                acc = scalar_mul(acc, base)
            return acc
        if isinstance(t, (E.Sin, E.Cos, E.Exp)):
            v = go(t.arg)
            if not is_rational_scalar(v):
                raise DomainError("series functions need an exact rational argument")
            kind = type(t).__name__.lower()
            if v == 0:
                return {"sin": 0, "cos": 1, "exp": 1}[kind]
            return creal_elementary(kind, Fraction(v))
        if isinstance(t, E.Sign):
            sv = scalar_sign(go(t.arg), budget)
            if sv is None:
                raise UndecidedError("undecided at depth: sign of scalar")
            return sv
        if isinstance(t, E.Abs):
            v = go(t.arg)
            if is_rational_scalar(v):
                return abs(v)
            sv = scalar_sign(v, budget)
            if sv is None:
                raise UndecidedError("undecided at depth: scalar absolute value")
            return v if sv > 0 else scalar_neg(v)
        if isinstance(t, E.Part):
            v = go(t.arg)
            return v if t.selector in (PartSelector.ST, PartSelector.NI_EPSILON,
                                       PartSelector.NI_OMEGA) else 0
        if isinstance(t, E.PiecewiseSt):
            taken = _compare_scalar(go(t.subject), t.op, t.bound, budget)
            return go(t.then_branch if taken else t.else_branch)
        raise TypeError(f"unknown node {t!r}")
    return go(f)


# -- the derivative comparison set ----------------------------------------------------

def _resolve_piecewise(f: E.Expr, x: RzlNumber, budget: int):
    """Specialize every branch node by the standard part of its subject at x.

    Returns (tree, boundary_hit): boundary_hit is set when some subject's
    standard part lands exactly on its bound, where the pieces meet and the
    classical derivative is not defined.
    """
    boundary = False

    def go(t):
        nonlocal boundary
        if isinstance(t, (E.Var, E.Const, E.EpsilonLit, E.OmegaLit)):
            return t
        if isinstance(t, (E.Add, E.Sub, E.Mul, E.Div)):
            return type(t)(go(t.left), go(t.right))
        if isinstance(t, E.PowInt):
            return E.PowInt(go(t.base), t.exponent)
        if isinstance(t, (E.Sin, E.Cos, E.Exp, E.Sign, E.Abs)):
            return type(t)(go(t.arg))
        if isinstance(t, E.Part):
            return E.Part(t.selector, go(t.arg))
        if isinstance(t, E.PiecewiseSt):
            st = evaluate(t.subject, x, budget=budget)[0]
            gap = st - Fraction(t.bound) if is_rational_scalar(st) else None
            if gap is not None and gap == 0:
                boundary = True
            taken = _compare_scalar(st, t.op, t.bound, budget)
            return go(t.then_branch if taken else t.else_branch)
        raise TypeError(f"unknown node {t!r}")

    return go(f), boundary


def in_E(f: E.Expr, x: RzlNumber, depth: int = DEFAULT_DEPTH,
         budget: int = PRECISION_BUDGET) -> Verdict:
    """Does the quotient derivative's standard part equal the classical
    derivative at the standard part of x?

    Exact (Certified/Refuted) on the rational fragment; computable-real
    comparisons fall back to bracket separation and may stay Unknown.  A
    sign node uses the flat-graph convention (derivative zero everywhere)
    and the verdict says so.
    """
    x = as_number(x)
    tree = f
    try:
        if E.contains(f, E.PiecewiseSt):
            tree, boundary = _resolve_piecewise(f, x, budget)
            if boundary:
                return refuted(depth, reason="classical derivative undefined "
                                             "at branch boundary")
        convention = E.contains(tree, E.Sign)
        d = der(tree, x, depth, budget)
        st_d = d[0]
    except (UndecidedError, DomainError, ZeroDivisionError) as exc:
        return unknown(depth, reason=f"quotient not evaluable: {exc}")
    try:
        g = E.classical_derivative(tree, sign_convention=convention)
        cls = eval_scalar(g, x[0], budget)
    except (UndecidedError, DomainError, ZeroDivisionError) as exc:
        return unknown(depth, reason=f"no classical reference: {exc}")
    eq = scalar_eq(st_d, cls, budget)
    reason = "sign-convention derivative" if convention else None
    if eq is True:
        return certified(depth, witness=("st", st_d, "classical", cls),
                         reason=reason)
    if eq is False:
        return refuted(depth, witness=("st", st_d, "classical", cls))
    return unknown(depth, reason="standard-part comparison undecided")


def is_microstable(f: E.Expr, sample_points, depth: int = DEFAULT_DEPTH,
                   budget: int = PRECISION_BUDGET) -> Verdict:
    """Check that an eps-displacement never changes the non-infinitesimal
    part of the value, on the given samples (a bounded check: Certified
    means certified on these samples)."""
    undecided = None
    count = 0
    for k, x in enumerate(sample_points):
        count += 1
        x = as_number(x)
        try:
            lhs = evaluate(f, x + epsilon(), depth, budget)
            rhs = evaluate(f, x, depth, budget)
        except (UndecidedError, DomainError, ZeroDivisionError) as exc:
            return unknown(depth, witness=("sample", k),
                           reason=f"not evaluable at sample: {exc}")
        lo = min(lhs.low, rhs.low)
        for i in range(lo, 1):
            eq = scalar_eq(lhs[i], rhs[i], budget)
            if eq is False:
                return refuted(depth, witness=("sample", k, "index", i))
            if eq is None:
                undecided = ("sample", k, "index", i)
    if undecided is not None:
        return unknown(depth, witness=undecided,
                       reason="coefficient comparison undecided")
    return certified(depth, reason="certified on the given samples",
                     caveat=f"{count} sample points")


# -- permeation ------------------------------------------------------------------------

@dataclass(frozen=True)
class DerivativeReport:
    der_value: RzlNumber
    standard_part: object
    classical_value: object | None
    in_e: Verdict
    permeated: object | None
    reason: str | None = None


def _nonstandard_certified_zero(x: RzlNumber, budget: int):
    """True / False / None for 'all coefficients off index 0 are zero'."""
    sure = x.finite_support is not None
    hi = x.finite_support if sure else DEFAULT_DEPTH
    pending = not sure
    for i in range(x.low, hi + 1):
        if i == 0:
            continue
        s = scalar_sign(x[i], budget)
        if s is None:
            pending = True
        elif s != 0:
            return False
    return None if pending else True


def permeate(f: E.Expr, x: RzlNumber, depth: int = DEFAULT_DEPTH,
             budget: int = PRECISION_BUDGET) -> DerivativeReport:
    """Full derivative report; the permeated field is populated only when
    membership in the comparison set is certified and the point provably
    has no nonstandard part."""
    x = as_number(x)
    d = der(f, x, depth, budget)
    st = d[0]
    verdict = in_E(f, x, depth, budget)
    classical = None
    try:
        tree = f
        if E.contains(f, E.PiecewiseSt):
            tree, boundary = _resolve_piecewise(f, x, budget)
            if boundary:
                tree = None
        if tree is not None:
            g = E.classical_derivative(tree, sign_convention=True)
            classical = eval_scalar(g, x[0], budget)
    except (DomainError, ZeroDivisionError, UndecidedError):
        classical = None
    nst_zero = _nonstandard_certified_zero(x, budget)
    if verdict.is_certified and nst_zero is True:
        return DerivativeReport(d, st, classical, verdict, permeated=st)
    if not verdict.is_certified:
        reason = "membership in the derivative comparison set not certified"
    elif nst_zero is False:
        reason = "Nst(x) != 0"
    else:
        reason = "Nst(x) not certified zero"
    return DerivativeReport(d, st, classical, verdict, permeated=None,
                            reason=reason)
