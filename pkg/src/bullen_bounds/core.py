"""Shared domain vocabulary: frames, exponents, the test-function model,
tolerances and report records.

Every value here is immutable after construction.  Frames and exponent
records validate themselves in ``__post_init__`` so there is no way to
obtain an instance that violates its invariants.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

RealFn = Callable[[np.ndarray], np.ndarray]

CONJUGACY_TOL = 1e-12


class BullenBoundsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BullenBoundsError, ValueError):
    """An argument lies outside the domain of the operation."""


class CertificationError(BullenBoundsError, ValueError):
    """A function lacks the convexity certification an operation needs."""


class IntegrationError(BullenBoundsError, RuntimeError):
    """The reference integrator did not reach its tolerance.

    Carries the best available estimate so callers can decide what to do.
    """

    def __init__(self, message: str, value: float, error: float):
        super().__init__(message)
        self.value = value
        self.error = error


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not _finite(self.a, self.b):
            raise DomainError(f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise DomainError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def contains(self, t: float) -> bool:
        return self.a <= t <= self.b

    def covers(self, other: "Interval") -> bool:
        return self.a <= other.a and other.b <= self.b

    def grid(self, n: int) -> np.ndarray:
        return np.linspace(self.a, self.b, n)


@dataclass(frozen=True)
class ProblemFrame:
    """Interval, interior evaluation point and the nonnegative weight pair."""

    interval: Interval
    x: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not isinstance(self.interval, Interval):
            raise DomainError("frame interval must be an Interval")
        if not _finite(self.x, self.alpha, self.beta):
            raise DomainError("frame parameters must be finite")
        if not self.interval.a < self.x < self.interval.b:
            raise DomainError(
                f"x={self.x} must lie strictly inside [{self.interval.a}, {self.interval.b}]"
            )
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("weights alpha, beta must be nonnegative")
        if self.alpha + self.beta <= 0:
            raise DomainError("weights alpha, beta must not both be zero")

    @property
    def a(self) -> float:
        return self.interval.a

    @property
    def b(self) -> float:
        return self.interval.b

    @property
    def left_weight(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def right_weight(self) -> float:
        return self.beta / (self.alpha + self.beta)


def make_frame(a: float, b: float, x: float, alpha: float, beta: float) -> ProblemFrame:
    return ProblemFrame(Interval(float(a), float(b)), float(x), float(alpha), float(beta))


def midpoint_frame(interval: Interval) -> ProblemFrame:
    """Frame at the midpoint with equal weights: the Bullen instantiation."""
    return ProblemFrame(interval, interval.midpoint, 0.5, 0.5)


@dataclass(frozen=True)
class SExponent:
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.s) and 0.0 < self.s <= 1.0):
            raise DomainError(f"s must lie in (0, 1], got {self.s}")


@dataclass(frozen=True)
class HolderPair:
    p: float
    q: float

    def __post_init__(self):
        if not _finite(self.p, self.q) or self.p <= 1 or self.q <= 1:
            raise DomainError(f"Hoelder exponents must exceed 1, got p={self.p}, q={self.q}")
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > CONJUGACY_TOL:
            raise DomainError(f"p={self.p}, q={self.q} are not conjugate")


def make_holder(p: float) -> HolderPair:
    p = float(p)
    if not (math.isfinite(p) and p > 1):
        raise DomainError(f"p must exceed 1, got {p}")
    return HolderPair(p, p / (p - 1.0))


@dataclass(frozen=True)
class PowerMeanExponent:
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and self.q >= 1.0):
            raise DomainError(f"power-mean exponent must be >= 1, got {self.q}")


@dataclass(frozen=True)
class SecondDerivTriple:
    """Magnitudes of the second derivative at a, x and b."""

    at_a: float
    at_x: float
    at_b: float

    def __post_init__(self):
        if not _finite(self.at_a, self.at_x, self.at_b):
            raise DomainError("second-derivative magnitudes must be finite")
        if min(self.at_a, self.at_x, self.at_b) < 0:
            raise DomainError("second-derivative magnitudes must be nonnegative")

    @property
    def strictly_positive(self) -> bool:
        return min(self.at_a, self.at_x, self.at_b) > 0


@dataclass(frozen=True)
class TestFunction:
    """An integrand with its first two derivatives and certified metadata.

    ``s_membership`` certifies that |f''| is s-convex in the second sense on
    ``domain``; since nonnegative members of K_r are members of K_s for every
    s <= r, it also licenses every smaller exponent.  ``log_convex_f2``
    certifies log-convexity of |f''|.  All callables must accept numpy arrays.
    """

    __test__ = False  # keep pytest from collecting this class

    id: str
    f: RealFn
    f1: RealFn
    f2: RealFn
    domain: Interval
    antiderivative: Optional[RealFn] = None
    s_membership: Optional[SExponent] = None
    log_convex_f2: bool = False
    convex_f: bool = False
    M2: Optional[float] = None
    M1: Optional[float] = None

    def second_derivs(self, a: float, x: float, b: float) -> SecondDerivTriple:
        vals = np.abs(self.f2(np.array([a, x, b], dtype=float)))
        return SecondDerivTriple(float(vals[0]), float(vals[1]), float(vals[2]))

    def triple(self, frame: ProblemFrame) -> SecondDerivTriple:
        return self.second_derivs(frame.a, frame.x, frame.b)

    def supports_s(self, s: SExponent | float) -> bool:
        s_val = s.s if isinstance(s, SExponent) else float(s)
        return self.s_membership is not None and s_val <= self.s_membership.s + 1e-15


@dataclass(frozen=True)
class Tolerances:
    identity_abs: float = 1e-9
    bound_slack_rel: float = 1e-12
    equality_rel: float = 1e-10
    oracle_abs: float = 1e-12
    kappa_degenerate: float = 1e-8

    def __post_init__(self):
        for name in ("identity_abs", "bound_slack_rel", "equality_rel", "oracle_abs", "kappa_degenerate"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"tolerance {name} must be strictly positive, got {value}")


DEFAULT_TOLERANCES = Tolerances()


class TheoremId(str, enum.Enum):
    IDENTITY = "IDENTITY"
    THM21 = "THM21"
    COR21 = "COR21"
    COR22 = "COR22"
    COR23 = "COR23"
    THM22_STATED = "THM22_STATED"
    THM22_DERIVED = "THM22_DERIVED"
    THM23_STATED = "THM23_STATED"
    THM23_DERIVED = "THM23_DERIVED"
    THM24 = "THM24"
    THM31 = "THM31"
    COR31 = "COR31"
    COR32 = "COR32"
    THM32 = "THM32"
    THM33 = "THM33"
    OSTROWSKI = "OSTROWSKI"
    BULLEN_CLASSIC = "BULLEN_CLASSIC"
    PROP1 = "PROP1"
    PROP2 = "PROP2"


# Printed variants whose failures are findings rather than suite failures.
UNASSERTED = frozenset({TheoremId.THM22_STATED, TheoremId.THM23_STATED})


class Status(str, enum.Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    DEGENERATE_SKIPPED = "DEGENERATE_SKIPPED"


def bound_holds(lhs: float, rhs: float, tol: Tolerances = DEFAULT_TOLERANCES, signed: bool = False) -> bool:
    """|lhs| <= rhs with a relative and an absolute grace of ``bound_slack_rel``.

    ``signed`` compares lhs itself (for inequalities whose left side carries
    a sign, like the classical Bullen inequality).
    """
    g = tol.bound_slack_rel
    if not _finite(lhs, rhs):
        return False
    if signed:
        return lhs <= rhs + g * abs(rhs) + g
    return abs(lhs) <= rhs * (1.0 + g) + g


@dataclass(frozen=True)
class BoundReport:
    """One inequality applied to one cell of the parameter space."""

    theorem_id: TheoremId
    fn_id: str
    interval: Interval
    frame: Optional[ProblemFrame]
    params: Mapping[str, float]
    lhs: float
    rhs: float
    slack: float
    status: Status
    signed: bool = False

    @property
    def asserted(self) -> bool:
        return self.theorem_id not in UNASSERTED

    @property
    def relative_slack(self) -> float:
        if self.rhs == 0:
            # a zero bound met up to rounding counts as exact
            return 0.0 if self.slack >= -DEFAULT_TOLERANCES.bound_slack_rel else -math.inf
        return self.slack / abs(self.rhs)

    def to_dict(self) -> dict:
        fr = self.frame
        return {
            "theorem_id": self.theorem_id.value,
            "fn_id": self.fn_id,
            "a": self.interval.a,
            "b": self.interval.b,
            "x": fr.x if fr is not None else self.params.get("x"),
            "alpha": fr.alpha if fr is not None else None,
            "beta": fr.beta if fr is not None else None,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "status": self.status.value,
            "signed": self.signed,
        }


def make_report(
    theorem_id: TheoremId,
    fn_id: str,
    interval: Interval,
    frame: Optional[ProblemFrame],
    lhs: float,
    rhs: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
    params: Optional[Mapping[str, float]] = None,
    signed: bool = False,
) -> BoundReport:
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs if signed else rhs - abs(lhs)
    status = Status.HOLDS if bound_holds(lhs, rhs, tol, signed) else Status.VIOLATED
    return BoundReport(
        theorem_id=theorem_id,
        fn_id=fn_id,
        interval=interval,
        frame=frame,
        params=dict(params or {}),
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        status=status,
        signed=signed,
    )


def skipped_report(
    theorem_id: TheoremId,
    fn_id: str,
    interval: Interval,
    frame: Optional[ProblemFrame],
    params: Optional[Mapping[str, float]] = None,
) -> BoundReport:
    nan = float("nan")
    return BoundReport(theorem_id, fn_id, interval, frame, dict(params or {}), nan, nan, nan, Status.DEGENERATE_SKIPPED)
