"""Tri-state verdicts for depth-bounded semi-decision procedures.

Order comparison, zero testing and everything built on them are
undecidable on coefficient streams, so predicates here never guess: they
either certify, refute with a replayable witness, or report Unknown
together with the depth that was actually inspected.  Evidence is
monotone -- growing any budget may turn Unknown into Certified or Refuted
but never flips one certified answer into the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class VerdictState(Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    state: VerdictState
    depth_used: int
    witness: object = None
    value: object = None
    reason: str | None = None
    caveat: str | None = None

    @property
    def is_certified(self) -> bool:
        return self.state is VerdictState.CERTIFIED

    @property
    def is_refuted(self) -> bool:
        return self.state is VerdictState.REFUTED

    @property
    def is_unknown(self) -> bool:
        return self.state is VerdictState.UNKNOWN

    def __bool__(self):
        raise TypeError(
            "Verdict is tri-state; test .is_certified / .is_refuted explicitly"
        )


def certified(depth_used: int, witness=None, value=None, reason=None, caveat=None) -> Verdict:
    return Verdict(VerdictState.CERTIFIED, depth_used, witness, value, reason, caveat)


def refuted(depth_used: int, witness=None, value=None, reason=None, caveat=None) -> Verdict:
    return Verdict(VerdictState.REFUTED, depth_used, witness, value, reason, caveat)


def unknown(depth_used: int, witness=None, reason=None, caveat=None) -> Verdict:
    return Verdict(VerdictState.UNKNOWN, depth_used, witness, None, reason, caveat)


class UndecidedError(Exception):
    """Raised when an operation needs a decision a verdict could not give."""

    def __init__(self, message: str, verdict: Verdict | None = None):
        super().__init__(message)
        self.verdict = verdict


class DomainError(Exception):
    """Raised when an operation is applied outside its defined domain."""
