"""Numbers with real, infinitesimal and infinite parts.

An `RzlNumber` is a lazily evaluated stream of coefficients indexed by
integers: index 0 holds the standard (real) part, positive indices hold
powers of the infinitesimal unit eps, and the finitely many negative
indices hold powers of the infinite unit w = 1/eps.  Ordering is
lexicographic from the lowest index up.

Streams are never evaluated eagerly; each coefficient is computed on first
access and memoized.  `low` marks the lowest tracked index and may well
point at a zero coefficient -- normalizing it away would require deciding
that a coefficient is nonzero, which is impossible in general.  The
explicit, depth-bounded normalizer is `leading_index`.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .scalar import (
    PRECISION_BUDGET,
    is_rational_scalar,
    scalar_add,
    scalar_div,
    scalar_is_zero,
    scalar_mul,
    scalar_neg,
    scalar_sign,
)
from .verdict import UndecidedError, Verdict, certified, unknown

DEFAULT_DEPTH = 16


class PartSelector(Enum):
    """Index ranges of the canonical decomposition.

    ST is index 0, NST_EPSILON the indices >= 1, NST_OMEGA the indices
    <= -1.  NI_EPSILON (the non-infinitesimal part) is NST_OMEGA + ST and
    NI_OMEGA (the non-infinite part) is ST + NST_EPSILON.
    """

    ST = "st"
    NST_EPSILON = "nst_eps"
    NST_OMEGA = "nst_omega"
    NI_EPSILON = "ni_eps"
    NI_OMEGA = "ni_omega"


class RzlNumber:
    __slots__ = ("low", "finite_support", "_fn", "_memo")

    def __init__(self, low: int, coeff, finite_support: int | None = None):
        self.low = low
        self.finite_support = finite_support
        self._fn = coeff
        self._memo = {}

    # -- coefficient access -------------------------------------------------

    def __getitem__(self, i: int):
        if i < self.low:
            return 0
        if self.finite_support is not None and i > self.finite_support:
            return 0
        memo = self._memo
        if i in memo:
            return memo[i]
        v = self._fn(i)
        memo[i] = v
        return v

    def coefficients(self, lo: int, hi: int) -> list:
        return [self[i] for i in range(lo, hi + 1)]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        fs = None
        if self.finite_support is not None and other.finite_support is not None:
            fs = max(self.finite_support, other.finite_support)
        return RzlNumber(min(self.low, other.low),
                         lambda i: scalar_add(self[i], other[i]), fs)

    __radd__ = __add__

    def __neg__(self):
        return RzlNumber(self.low, lambda i: scalar_neg(self[i]), self.finite_support)

    def __sub__(self, other):
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        low = self.low + other.low
        fs = None
        if self.finite_support is not None and other.finite_support is not None:
            fs = self.finite_support + other.finite_support

        def conv(k):
            # Finite Cauchy product slice: i >= self.low and k-i >= other.low.
            lo, hi = self.low, k - other.low
            if self.finite_support is not None:
                hi = min(hi, self.finite_support)
            if other.finite_support is not None:
                lo = max(lo, k - other.finite_support)
            acc = 0
            for i in range(lo, hi + 1):
                a = self[i]
                if scalar_is_zero(a):
                    continue
                b = other[k - i]
                if scalar_is_zero(b):
                    continue
                acc = scalar_add(acc, scalar_mul(a, b))
            return acc

        return RzlNumber(low, conv, fs)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if k == 0:
            return one()
        if k == 1:
            return self
        half = (self * self) ** (k // 2)
        return half if k % 2 == 0 else half * self

    def shift(self, by: int) -> "RzlNumber":
        """Multiply by eps**by (an exact index shift; by may be negative)."""
        fs = None if self.finite_support is None else self.finite_support + by
        return RzlNumber(self.low + by, lambda i: self[i - by], fs)

    def trim_low(self) -> "RzlNumber":
        """Raise `low` past provably (rational) zero omega slots, at most to 0.

        Purely cosmetic-plus-sound: trimming stops at the first coefficient
        that cannot be certified zero.
        """
        low = self.low
        while low < 0 and scalar_is_zero(self[low]):
            low += 1
        if low == self.low:
            return self
        return RzlNumber(low, lambda i: self[i], self.finite_support)

    def __repr__(self):
        from .render import render
        return render(self, 7)


def as_number(x):
    if isinstance(x, RzlNumber):
        return x
    if is_rational_scalar(x):
        return from_scalar(x)
    return NotImplemented


# -- constructors -------------------------------------------------------------

def make_number(low: int, coeff, finite_support: int | None = None) -> RzlNumber:
    """Wrap a total coefficient function, zero below `low`, into a number."""
    return RzlNumber(low, coeff, finite_support)


def from_scalar(v) -> RzlNumber:
    return RzlNumber(0, lambda i: v if i == 0 else 0, finite_support=0)


def from_rational(q) -> RzlNumber:
    return from_scalar(q if isinstance(q, int) else Fraction(q))


def from_coefficients(low: int, coeffs) -> RzlNumber:
    coeffs = list(coeffs)
    fs = low + len(coeffs) - 1
    return RzlNumber(low, lambda i: coeffs[i - low] if low <= i <= fs else 0,
                     finite_support=fs)


def monomial(c, index: int) -> RzlNumber:
    """The pure term c*eps**index (index < 0 gives an omega power)."""
    return RzlNumber(min(index, 0), lambda i: c if i == index else 0,
                     finite_support=index)


def zero() -> RzlNumber:
    return from_scalar(0)


def one() -> RzlNumber:
    return from_scalar(1)


def epsilon() -> RzlNumber:
    return from_coefficients(0, [0, 1])


def omega() -> RzlNumber:
    return from_coefficients(-1, [1])


def grossone() -> RzlNumber:
    """The infinite unit treated as an ordinary number; identical to omega()."""
    return omega()


def grossone_fraction(n: int) -> RzlNumber:
    if n < 1:
        raise ValueError("n must be a positive integer")
    return monomial(Fraction(1, n), -1)


# -- parts ---------------------------------------------------------------------

def part(x: RzlNumber, sel: PartSelector) -> RzlNumber:
    if sel is PartSelector.ST:
        return RzlNumber(0, lambda i: x[0] if i == 0 else 0, finite_support=0)
    if sel is PartSelector.NST_EPSILON:
        return RzlNumber(1, lambda i: x[i] if i >= 1 else 0,
                         finite_support=x.finite_support)
    if sel is PartSelector.NST_OMEGA:
        return RzlNumber(x.low, lambda i: x[i] if i <= -1 else 0,
                         finite_support=-1)
    if sel is PartSelector.NI_EPSILON:
        return RzlNumber(x.low, lambda i: x[i] if i <= 0 else 0,
                         finite_support=0)
    if sel is PartSelector.NI_OMEGA:
        return RzlNumber(0, lambda i: x[i] if i >= 0 else 0,
                         finite_support=x.finite_support)
    raise ValueError(f"unknown part selector {sel!r}")


def standard_part(x: RzlNumber):
    """The index-0 coefficient as a scalar."""
    return x[0]


def coefficient_at(x: RzlNumber, i: int):
    """Exact coefficient at an index; zero below the tracked range."""
    return x[i]


# -- leading term, inverse, division --------------------------------------------

def leading_index(x: RzlNumber, depth: int = DEFAULT_DEPTH,
                  budget: int = PRECISION_BUDGET) -> Verdict:
    """First index whose coefficient is provably nonzero.

    Scans indices low .. low+depth.  An undecided computable-real
    coefficient blocks the scan: anything past it could not soundly be
    called leading.
    """
    if depth < 1:
        raise ValueError("depth must be a positive integer")
    hi = x.low + depth
    if x.finite_support is not None:
        hi = min(hi, x.finite_support)
    for i in range(x.low, hi + 1):
        s = scalar_sign(x[i], budget)
        if s is None:
            return unknown(depth, witness=i,
                           reason=f"coefficient sign undecided at index {i}")
        if s != 0:
            return certified(depth, witness=i, value=i,
                             reason="first provably nonzero coefficient")
    if x.finite_support is not None and x.finite_support <= hi:
        return unknown(depth, reason="exact zero: no leading term exists")
    return unknown(depth, reason="all inspected coefficients are zero")


def inverse(x: RzlNumber, depth: int = DEFAULT_DEPTH,
            budget: int = PRECISION_BUDGET) -> RzlNumber:
    """Multiplicative inverse, available only once a leading term is certified.

    With x = a*eps**m * (1 + u) and u of strictly positive relative order,
    the inverse is a**-1 * eps**-m * sum((-u)**j); every coefficient of
    that series is a finite computation, realized here by the equivalent
    convolution recurrence w[0]=1, w[t] = -sum(u[j]*w[t-j], j=1..t).
    """
    li = leading_index(x, depth, budget)
    if not li.is_certified:
        raise UndecidedError("inverse requires certified leading term", li)
    m = li.witness
    a = x[m]
    inv_a = scalar_div(1, a, budget)

    rel_memo = {}

    def rel(j):
        # coefficient of eps**j in (1+u); rel(0) == 1 by construction
        if j not in rel_memo:
            rel_memo[j] = scalar_div(x[m + j], a, budget)
        return rel_memo[j]

    w = [1]

    def w_at(t):
        while len(w) <= t:
            s = len(w)
            acc = 0
            for j in range(1, s + 1):
                if x.finite_support is not None and m + j > x.finite_support:
                    break
                c = rel(j)
                if scalar_is_zero(c):
                    continue
                acc = scalar_add(acc, scalar_mul(c, w[s - j]))
            w.append(scalar_neg(acc))
        return w[t]

    fs = None
    if x.finite_support is not None and x.finite_support <= m:
        fs = -m   # pure monomial: exact monomial inverse

    def fn(i):
        t = i + m
        if t < 0:
            return 0
        return scalar_mul(inv_a, w_at(t))

    return RzlNumber(-m, fn, finite_support=fs)


def divide(x: RzlNumber, y: RzlNumber, depth: int = DEFAULT_DEPTH,
           budget: int = PRECISION_BUDGET) -> RzlNumber:
    return as_number(x) * inverse(as_number(y), depth, budget)


# -- fractal lift ---------------------------------------------------------------

def fractal_lift(value) -> RzlNumber:
    """Lift a pure standard value v to v + v*eps + v*eps**2 + ...

    The lifted stream repeats its own tail under a one-index zoom: dropping
    the omega part of w times the lift reproduces the lift exactly.
    """
    if isinstance(value, RzlNumber):
        x = value
        hi = x.finite_support if x.finite_support is not None else DEFAULT_DEPTH
        for i in range(x.low, hi + 1):
            if i != 0 and not scalar_is_zero(x[i]):
                raise ValueError("fractal lift needs a pure standard value")
        v = x[0]
    else:
        v = value
    return RzlNumber(0, lambda i: v if i >= 0 else 0)


# -- exact comparison on the certified-finite fragment ---------------------------

def compare_finite(x: RzlNumber, y: RzlNumber) -> int:
    """Exact lexicographic comparison for finite-support rational numbers.

    Returns -1, 0 or +1.  Raises on streams without a support bound or with
    computable-real coefficients; this is the decidable fragment only.
    """
    d = as_number(y) - as_number(x)
    if d.finite_support is None:
        raise ValueError("exact comparison needs finite support on both sides")
    for i in range(d.low, d.finite_support + 1):
        c = d[i]
        if not is_rational_scalar(c):
            raise ValueError("exact comparison is rational-only")
        if c != 0:
            return -1 if c > 0 else 1
    return 0


def eq_up_to(x: RzlNumber, y: RzlNumber, lo: int, hi: int) -> bool:
    """Exact coefficient-wise equality of the rational fragment on a window."""
    return all(x[i] == y[i] for i in range(lo, hi + 1))
