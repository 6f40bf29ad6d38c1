"""Peano-type kernel for the weighted two-point functional.

For a frame (a, b, x, alpha, beta) the kernel is

    K(x, t) =  w_l (t - a)(x - t) / (x - a)     on [a, x]
    K(x, t) = -w_r (b - t)(x - t) / (b - x)     on [x, b]

with w_l = alpha/(alpha+beta), w_r = beta/(alpha+beta), and

    integral_a^b K(x, t) f''(t) dt = L(f; x, alpha, beta)

where L = f(x) + (alpha f(a) + beta f(b))/(alpha+beta)
          - 2/(alpha+beta) [alpha/(x-a) int_a^x f + beta/(b-x) int_x^b f].
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    BoundReport,
    DomainError,
    Interval,
    ProblemFrame,
    Status,
    TestFunction,
    TheoremId,
    Tolerances,
)
from .oracle import oracle_integrate


class Branch(str, enum.Enum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"


@dataclass(frozen=True)
class KernelValue:
    value: float
    branch: Branch


def kernel_array(frame: ProblemFrame, t: np.ndarray) -> np.ndarray:
    """Vectorised kernel; no domain checking."""
    a, b, x = frame.a, frame.b, frame.x
    t = np.asarray(t, dtype=float)
    left = frame.left_weight * (t - a) * (x - t) / (x - a)
    right = -frame.right_weight * (b - t) * (x - t) / (b - x)
    return np.where(t <= x, left, right)


def eval_kernel(frame: ProblemFrame, t: float) -> KernelValue:
    a, b, x = frame.a, frame.b, frame.x
    if not (a <= t <= b):
        raise DomainError(f"t={t} outside [{a}, {b}]")
    if t <= x:
        value = frame.left_weight * (t - a) * (x - t) / (x - a)
        branch = Branch.LEFT
    else:
        value = -frame.right_weight * (b - t) * (x - t) / (b - x)
        branch = Branch.RIGHT
    # -0.0 from the sign flip at t == b is normalised
    return KernelValue(value + 0.0, branch)


def _check_domain(fn: TestFunction, frame: ProblemFrame) -> None:
    if not fn.domain.covers(frame.interval):
        raise DomainError(
            f"{fn.id}: frame interval [{frame.a}, {frame.b}] leaves the domain "
            f"[{fn.domain.a}, {fn.domain.b}]"
        )


# F(hi) - F(lo) is used unless it cancels more than this factor; the
# functional cancels again on top of this, so the default is strict
CANCELLATION_LIMIT = 4.0


def definite_integral(
    fn: TestFunction,
    lo: float,
    hi: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
    cancellation_limit: float = CANCELLATION_LIMIT,
) -> float:
    """int_lo^hi f.

    The exact antiderivative is preferred; where F(hi) - F(lo) would cancel
    most of its digits (short panels, large |F|) the oracle is used
    instead, which integrates f directly to a few ulps.
    """
    if fn.antiderivative is not None:
        F = fn.antiderivative(np.array([lo, hi], dtype=float))
        diff = float(F[1] - F[0])
        if abs(F[0]) + abs(F[1]) <= cancellation_limit * abs(diff):
            return diff
    return oracle_integrate(fn.f, Interval(lo, hi), tol).value


def partial_integrals(fn: TestFunction, frame: ProblemFrame, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[float, float]:
    """(int_a^x f, int_x^b f), see :func:`definite_integral`."""
    return definite_integral(fn, frame.a, frame.x, tol), definite_integral(fn, frame.x, frame.b, tol)


def lhs_functional(fn: TestFunction, frame: ProblemFrame, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    _check_domain(fn, frame)
    a, b, x = frame.a, frame.b, frame.x
    fa, fx, fb = (float(v) for v in fn.f(np.array([a, x, b], dtype=float)))
    left, right = partial_integrals(fn, frame, tol)
    wl, wr = frame.left_weight, frame.right_weight
    # weights normalised once; identical up to rounding for (c alpha, c beta)
    return math.fsum([fx, wl * fa, wr * fb, -2.0 * wl * left / (x - a), -2.0 * wr * right / (b - x)])


def kernel_integral(fn: TestFunction, frame: ProblemFrame, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """int_a^b K(x,t) f''(t) dt, split at the kink t = x."""
    _check_domain(fn, frame)
    a, b, x = frame.a, frame.b, frame.x
    wl, wr = frame.left_weight, frame.right_weight
    total = []
    if wl > 0:
        left = oracle_integrate(lambda t: (t - a) * (x - t) * fn.f2(t), Interval(a, x), tol).value
        total.append(wl * left / (x - a))
    if wr > 0:
        right = oracle_integrate(lambda t: (b - t) * (t - x) * fn.f2(t), Interval(x, b), tol).value
        total.append(wr * right / (b - x))
    return math.fsum(total)


def verify_identity(fn: TestFunction, frame: ProblemFrame, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """Compare both sides of the kernel identity.

    ``lhs`` holds the kernel integral and ``rhs`` the functional; the
    identity holds when they differ by at most ``tol.identity_abs``.
    The slack is the unused part of that budget.
    """
    k_int = kernel_integral(fn, frame, tol)
    functional = lhs_functional(fn, frame, tol)
    gap = abs(k_int - functional)
    status = Status.HOLDS if gap <= tol.identity_abs else Status.VIOLATED
    return BoundReport(
        theorem_id=TheoremId.IDENTITY,
        fn_id=fn.id,
        interval=frame.interval,
        frame=frame,
        params={},
        lhs=k_int,
        rhs=functional,
        slack=tol.identity_abs - gap,
        status=status,
    )
