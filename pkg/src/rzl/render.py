"""Text rendering of coefficient streams.

The format prints the tracked omega slots, a caret marking the standard
part, a fixed number of entries from index 0 upward, and a trailing
ellipsis::

    1, ^1, 1, 0, 0, 0, 0, 0, ...

Rational coefficients render exactly (``a/b`` when the denominator is not
1); computable-real coefficients render as 6-significant-digit decimals
prefixed with ``~``.  For rational finite-support values the text parses
back to the same stream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .number import RzlNumber
from .scalar import scalar_str

DEFAULT_EPS_DIGITS = 7


@dataclass(frozen=True)
class RenderedNumber:
    omega_coeffs: tuple
    standard: object
    epsilon_coeffs: tuple
    truncation: int

    def text(self) -> str:
        entries = [scalar_str(self.standard)] + [scalar_str(c) for c in self.epsilon_coeffs]
        caret_side = "^" + ", ".join(entries)
        if self.omega_coeffs:
            head = ", ".join(scalar_str(c) for c in self.omega_coeffs)
            return f"{head}, {caret_side}, ..."
        return f"{caret_side}, ..."


def render_number(x: RzlNumber, eps_digits: int = DEFAULT_EPS_DIGITS) -> RenderedNumber:
    if eps_digits < 1:
        raise ValueError("eps_digits must be a positive integer")
    omega_side = tuple(x[i] for i in range(x.low, 0))
    return RenderedNumber(
        omega_coeffs=omega_side,
        standard=x[0],
        epsilon_coeffs=tuple(x[i] for i in range(1, eps_digits)),
        truncation=eps_digits,
    )


def render(x: RzlNumber, eps_digits: int = DEFAULT_EPS_DIGITS) -> str:
    return render_number(x, eps_digits).text()
