"""Shared value types and argument checks."""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class UnsupportedError(NotImplementedError):
    """The request is well defined but outside what this toolkit evaluates."""


class ResourceError(RuntimeError):
    """A computation would exceed its configured budget."""


def check_beta(beta) -> int:
    """Return ``beta`` as an int, rejecting anything but a positive integer.

    Floats are rejected even when integral-valued, so a caller passing
    ``beta=2.0`` gets an error instead of a silent coercion.
    """
    if isinstance(beta, bool) or not isinstance(beta, numbers.Integral):
        raise DomainError(f"beta must be a positive integer, got {beta!r}")
    beta = int(beta)
    if beta < 1:
        raise DomainError(f"beta must be >= 1, got {beta}")
    return beta


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class Interval:
    """Half-open window ``[lo, hi)``.

    ``role`` is ``"gap"`` for a window of rescaled gaps (must sit in
    ``[0, inf)``) or ``"position"`` for a window of base angles (must sit in
    ``[-pi, pi]``). ``lo == hi`` is allowed and denotes the empty window.
    """

    lo: float
    hi: float
    role: str = "gap"

    def __post_init__(self):
        if self.role not in ("gap", "position"):
            raise DomainError(f"unknown interval role {self.role!r}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise DomainError(f"interval has lo > hi: [{self.lo}, {self.hi})")
        if self.role == "gap" and self.lo < 0:
            raise DomainError("gap window must lie in [0, inf)")
        if self.role == "position" and (self.lo < -math.pi or self.hi > math.pi):
            raise DomainError("position window must lie in [-pi, pi]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def empty(self) -> bool:
        return self.hi == self.lo

    def contains(self, x):
        """Elementwise membership test, works on scalars and arrays."""
        return (x >= self.lo) & (x < self.hi)

    @classmethod
    def full_circle(cls) -> "Interval":
        return cls(-math.pi, math.pi, "position")


@dataclass(frozen=True)
class InequalityReport:
    """Both sides of one inequality ``lhs <= rhs`` and the slack between them.

    ``error_estimate`` is the numerical uncertainty of the evaluation: a
    quadrature refinement difference, or a multiple of a Monte Carlo standard
    error. The check passes when ``margin + error_estimate >= 0``.
    """

    label: str
    lhs: float
    rhs: float
    margin: float
    error_estimate: float

    @property
    def passed(self) -> bool:
        return self.margin + self.error_estimate >= 0.0

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "error_estimate": self.error_estimate,
            "passed": self.passed,
        }
