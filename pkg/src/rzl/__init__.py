"""Exact arithmetic on numbers with real, infinitesimal and infinite parts."""

from .number import (
    DEFAULT_DEPTH,
    PartSelector,
    RzlNumber,
    coefficient_at,
    divide,
    epsilon,
    fractal_lift,
    from_coefficients,
    from_rational,
    grossone,
    grossone_fraction,
    inverse,
    leading_index,
    make_number,
    monomial,
    omega,
    one,
    part,
    standard_part,
    zero,
)
from .render import render, render_number
from .scalar import CompReal, Rational, creal_elementary, creal_from_rational
from .verdict import DomainError, UndecidedError, Verdict, VerdictState

__all__ = [
    "CompReal", "DEFAULT_DEPTH", "DomainError", "PartSelector", "Rational",
    "RzlNumber", "UndecidedError", "Verdict", "VerdictState",
    "coefficient_at", "creal_elementary", "creal_from_rational", "divide", "epsilon",
    "fractal_lift", "from_coefficients", "from_rational", "grossone",
    "grossone_fraction", "inverse", "leading_index", "make_number",
    "monomial", "omega", "one", "part", "render", "render_number",
    "standard_part", "zero",
]
