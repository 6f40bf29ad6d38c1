"""Closed-form bounds for functions whose |f''| (or |f''|^q) is s-convex.

All right-hand sides are evaluated in closed form, so each bound is O(1).
The two Hoelder-type bounds come in two variants: ``STATED`` follows the
printed statement of the result, ``DERIVED`` follows its proof carried to
the end (total length exponent 2, weights to the first power).  Only the
derived variants are guaranteed to dominate the functional.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    BoundReport,
    DomainError,
    Interval,
    ProblemFrame,
    SecondDerivTriple,
    SExponent,
    HolderPair,
    PowerMeanExponent,
    TestFunction,
    TheoremId,
    Tolerances,
    CertificationError,
    make_report,
)


class Variant(str, enum.Enum):
    STATED = "STATED"
    DERIVED = "DERIVED"


# Gamma overflows past ~171.6; keep the direct ratio well inside that range.
_DIRECT_GAMMA_LIMIT = 160.0


def euler_beta(u: float, v: float) -> float:
    """B(u, v) = Gamma(u) Gamma(v) / Gamma(u + v) for u, v > 0.

    The gamma ratio is used directly while it cannot overflow (it is
    accurate to a few ulps there); beyond that the log-gamma route.
    """
    if not (u > 0 and v > 0) or not (math.isfinite(u) and math.isfinite(v)):
        raise DomainError(f"Beta function needs positive arguments, got ({u}, {v})")
    if u + v <= _DIRECT_GAMMA_LIMIT:
        return math.gamma(u) * math.gamma(v) / math.gamma(u + v)
    return math.exp(math.lgamma(u) + math.lgamma(v) - math.lgamma(u + v))


def _s_factor(s: SExponent) -> float:
    return (s.s + 2.0) * (s.s + 3.0)


def bound_thm21(d: SecondDerivTriple, frame: ProblemFrame, s: SExponent) -> float:
    c = _s_factor(s)
    left = frame.left_weight * (frame.x - frame.a) ** 2 / c * (d.at_x + d.at_a)
    right = frame.right_weight * (frame.b - frame.x) ** 2 / c * (d.at_x + d.at_b)
    return left + right


def bound_cor21(M: float, frame: ProblemFrame, s: SExponent) -> float:
    if not (M >= 0) or not math.isfinite(M):
        raise DomainError(f"M must be a finite nonnegative bound, got {M}")
    la, lb = frame.x - frame.a, frame.b - frame.x
    return 2.0 * M / _s_factor(s) * (frame.alpha * la**2 + frame.beta * lb**2) / (frame.alpha + frame.beta)


def bound_cor22(d: SecondDerivTriple, interval: Interval, x: float, s: SExponent) -> float:
    """Unit weights, with the left and right terms kept separate."""
    c = 2.0 * _s_factor(s)
    la, lb = x - interval.a, interval.b - x
    return (la**2 + lb**2) / c * d.at_x + (la**2 * d.at_a + lb**2 * d.at_b) / c


def bound_cor23_bullen(d: SecondDerivTriple, interval: Interval, s: SExponent) -> float:
    """Bullen-type bound; ``d`` is taken at (a, (a+b)/2, b)."""
    return interval.length**2 / (8.0 * _s_factor(s)) * (d.at_x + 0.5 * (d.at_a + d.at_b))


def bound_thm22(
    d: SecondDerivTriple,
    frame: ProblemFrame,
    s: SExponent,
    h: HolderPair,
    variant: Variant = Variant.DERIVED,
) -> float:
    p, q = h.p, h.q
    beta_root = euler_beta(p + 1.0, p + 1.0) ** (1.0 / p)
    la, lb = frame.x - frame.a, frame.b - frame.x
    wl, wr = frame.left_weight, frame.right_weight
    left_mass = (d.at_x**q + d.at_a**q) ** (1.0 / q)
    right_mass = (d.at_b**q + d.at_x**q) ** (1.0 / q)
    if Variant(variant) is Variant.STATED:
        s_root = (s.s + 1.0) ** (1.0 / q)
        return (
            wl**p * la ** (1.0 + 1.0 / q) / s_root * beta_root * left_mass
            + wr**p * lb ** (1.0 + 1.0 / q) / s_root * beta_root * right_mass
        )
    s_root = (s.s + 1.0) ** (-1.0 / q)
    return wl * la**2 * beta_root * left_mass * s_root + wr * lb**2 * beta_root * right_mass * s_root


def bound_thm23(
    d: SecondDerivTriple,
    frame: ProblemFrame,
    s: SExponent,
    h: HolderPair,
    variant: Variant = Variant.DERIVED,
) -> float:
    p, q = h.p, h.q
    la, lb = frame.x - frame.a, frame.b - frame.x
    wl, wr = frame.left_weight, frame.right_weight
    extra = 0.0 if Variant(variant) is Variant.STATED else 1.0
    bracket = (wl**p * la ** (p + extra) + wr**p * lb ** (p + extra)) ** (1.0 / p)
    return (
        euler_beta(p + 1.0, p + 1.0) ** (1.0 / p)
        * bracket
        * (frame.interval.length / (s.s + 1.0)) ** (1.0 / q)
        * (d.at_a**q + d.at_b**q) ** (1.0 / q)
    )


def bound_thm24(d: SecondDerivTriple, frame: ProblemFrame, s: SExponent, q: PowerMeanExponent) -> float:
    qq = q.q
    denom = 6.0 ** (1.0 - 1.0 / qq) * _s_factor(s) ** (1.0 / qq)
    la, lb = frame.x - frame.a, frame.b - frame.x
    left = frame.left_weight * la**2 / denom * (d.at_x**qq + d.at_a**qq) ** (1.0 / qq)
    right = frame.right_weight * lb**2 / denom * (d.at_b**qq + d.at_x**qq) ** (1.0 / qq)
    return left + right


def bound_ostrowski(M1: float, interval: Interval, x: float) -> float:
    if not (M1 >= 0) or not math.isfinite(M1):
        raise DomainError(f"M1 must be a finite nonnegative bound, got {M1}")
    if not interval.contains(x):
        raise DomainError(f"x={x} outside [{interval.a}, {interval.b}]")
    return M1 / interval.length * ((x - interval.a) ** 2 + (interval.b - x) ** 2) / 2.0


def _mean_value(fn: TestFunction, interval: Interval, tol: Tolerances) -> float:
    from .kernel import definite_integral

    return definite_integral(fn, interval.a, interval.b, tol) / interval.length


def check_ostrowski(fn: TestFunction, interval: Interval, x: float, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    if fn.M1 is None:
        raise CertificationError(f"{fn.id}: no uniform bound on |f'| recorded")
    if not fn.domain.covers(interval):
        raise DomainError(f"{fn.id}: interval outside domain")
    lhs = float(fn.f(np.array([x]))[0]) - _mean_value(fn, interval, tol)
    rhs = bound_ostrowski(fn.M1, interval, x)
    return make_report(TheoremId.OSTROWSKI, fn.id, interval, None, lhs, rhs, tol, params={"x": x, "M1": fn.M1})


def check_bullen_classic(fn: TestFunction, interval: Interval, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """mean(f) <= (f(m) + (f(a) + f(b))/2) / 2 for convex f (signed report)."""
    if not fn.convex_f:
        raise CertificationError(f"{fn.id}: f is not certified convex")
    if not fn.domain.covers(interval):
        raise DomainError(f"{fn.id}: interval outside domain")
    fa, fm, fb = (float(v) for v in fn.f(np.array([interval.a, interval.midpoint, interval.b])))
    lhs = _mean_value(fn, interval, tol)
    rhs = 0.5 * (fm + 0.5 * (fa + fb))
    return make_report(TheoremId.BULLEN_CLASSIC, fn.id, interval, None, lhs, rhs, tol, signed=True)
