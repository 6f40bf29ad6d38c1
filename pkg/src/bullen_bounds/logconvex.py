"""Bounds for functions whose |f''| (or |f''|^q) is log-convex.

Log-convexity majorises |f''| on [a, x] by the log-linear interpolant
through (a, |f''(a)|) and (x, |f''(x)|).  In the usual notation this is
P * kappa**t with

    kappa = (|f''(x)| / |f''(a)|) ** (1 / (x - a))
    P     = (|f''(a)| ** x / |f''(x)| ** a) ** (1 / (x - a))

and similarly tau on [x, b].  Products like P * kappa**a are formed in
log space and every moment is evaluated in the shifted variable u = t - lo,
which removes the overflow of kappa**t and the cancellation of the
textbook closed form near kappa = 1 (where the closed form has a removable
0/0 singularity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DEFAULT_TOLERANCES,
    DomainError,
    HolderPair,
    Interval,
    PowerMeanExponent,
    ProblemFrame,
    SecondDerivTriple,
    Tolerances,
    midpoint_frame,
)
from .sconvex import Variant, euler_beta

# |z| below this uses the power series of the normalised moments.
_SERIES_RADIUS = 1.0
_SERIES_TERMS = 30


@dataclass(frozen=True)
class KappaTau:
    kappa: float
    tau: float
    log_kappa: float
    log_tau: float
    kappa_degenerate: bool
    tau_degenerate: bool


def _require_positive(d: SecondDerivTriple) -> None:
    if not d.strictly_positive:
        raise DomainError(
            "log-convex bounds need |f''| > 0 at a, x and b "
            f"(got {d.at_a}, {d.at_x}, {d.at_b})"
        )


def kappa_tau(d: SecondDerivTriple, frame: ProblemFrame, tol: Tolerances = DEFAULT_TOLERANCES) -> KappaTau:
    _require_positive(d)
    log_kappa = (math.log(d.at_x) - math.log(d.at_a)) / (frame.x - frame.a)
    log_tau = (math.log(d.at_b) - math.log(d.at_x)) / (frame.b - frame.x)
    return KappaTau(
        kappa=math.exp(log_kappa),
        tau=math.exp(log_tau),
        log_kappa=log_kappa,
        log_tau=log_tau,
        kappa_degenerate=abs(log_kappa) < tol.kappa_degenerate,
        tau_degenerate=abs(log_tau) < tol.kappa_degenerate,
    )


def parabola_moment_unit(z: float) -> float:
    """int_0^1 u (1 - u) exp(z u) du, accurate for every finite z.

    Near z = 0 the series sum_k z^k / (k! (k+2)(k+3)) is used; elsewhere
    the closed form, rewritten with exp(-z) for positive z so that the
    result is only as large as it has to be.
    """
    if abs(z) <= _SERIES_RADIUS:
        term = 1.0
        acc = []
        for k in range(_SERIES_TERMS):
            acc.append(term / ((k + 2) * (k + 3)))
            term *= z / (k + 1)
        return math.fsum(acc)
    if z > 0:
        # exp(z) * [z (1 + e^-z) - 2 (1 - e^-z)] / z^3
        em = math.exp(-z)
        return math.exp(z) * (z * (1.0 + em) + 2.0 * math.expm1(-z)) / z**3
    return (z * (1.0 + math.exp(z)) - 2.0 * math.expm1(z)) / z**3


def _log_parabola_moment_unit(z: float) -> float:
    """log of parabola_moment_unit(z), finite even where the value overflows."""
    if z > _SERIES_RADIUS:
        em = math.exp(-z)
        return z + math.log((z * (1.0 + em) + 2.0 * math.expm1(-z)) / z**3)
    return math.log(parabola_moment_unit(z))


def exp_mean_unit(z: float) -> float:
    """int_0^1 exp(z u) du = expm1(z) / z, equal to 1 at z = 0."""
    if z == 0:
        return 1.0
    if abs(z) < 1e-5:
        return 1.0 + z / 2.0 + z * z / 6.0
    return math.expm1(z) / z


def parabolic_exp_moment(lo: float, hi: float, base: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """int_lo^hi (t - lo)(hi - t) base**t dt.

    Equal to [2(base^lo - base^hi) - (lo - hi)(base^lo + base^hi) ln base] / ln^3 base
    away from base = 1, and to (hi - lo)^3 / 6 at base = 1.
    """
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if not (base > 0 and math.isfinite(base)):
        raise DomainError(f"base must be positive and finite, got {base}")
    c = math.log(base)
    h = hi - lo
    return math.exp(lo * c) * h**3 * parabola_moment_unit(h * c)


def log_prefactor_left(d: SecondDerivTriple, frame: ProblemFrame) -> float:
    """ln (|f''(a)|^x / |f''(x)|^a)^(1/(x-a))."""
    _require_positive(d)
    a, x = frame.a, frame.x
    return (x * math.log(d.at_a) - a * math.log(d.at_x)) / (x - a)


def log_prefactor_right(d: SecondDerivTriple, frame: ProblemFrame) -> float:
    """ln (|f''(x)|^b / |f''(b)|^x)^(1/(b-x))."""
    _require_positive(d)
    x, b = frame.x, frame.b
    return (b * math.log(d.at_x) - x * math.log(d.at_b)) / (b - x)


def _halves(d: SecondDerivTriple, frame: ProblemFrame):
    la, lb = frame.x - frame.a, frame.b - frame.x
    ln_a, ln_x, ln_b = math.log(d.at_a), math.log(d.at_x), math.log(d.at_b)
    return la, lb, ln_a, ln_x, ln_b


def bound_thm31(d: SecondDerivTriple, frame: ProblemFrame, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Log-convex bound: sum over both halves of w (len)^2 |f''(lo)| m(ln ratio).

    Each term equals w / len * P * parabolic_exp_moment(lo, hi, kappa).
    """
    _require_positive(d)
    la, lb, ln_a, ln_x, ln_b = _halves(d, frame)
    left = frame.left_weight * la**2 * math.exp(ln_a + _log_parabola_moment_unit(ln_x - ln_a))
    right = frame.right_weight * lb**2 * math.exp(ln_x + _log_parabola_moment_unit(ln_b - ln_x))
    return left + right


def bound_cor31(d: SecondDerivTriple, interval: Interval, x: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Unit weights, assembled from prefactors and moments the displayed way."""
    frame = ProblemFrame(interval, x, 1.0, 1.0)
    kt = kappa_tau(d, frame, tol)
    a, b = interval.a, interval.b
    left = math.exp(log_prefactor_left(d, frame)) * parabolic_exp_moment(a, x, kt.kappa, tol) / (2.0 * (x - a))
    right = math.exp(log_prefactor_right(d, frame)) * parabolic_exp_moment(x, b, kt.tau, tol) / (2.0 * (b - x))
    return left + right


def bound_cor32_bullen(d: SecondDerivTriple, interval: Interval, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Bullen-type log-convex bound; ``d`` is taken at (a, (a+b)/2, b).

    Obtained by instantiating the weighted bound at x = (a+b)/2 with equal
    weights: the functional there is twice the Bullen difference.
    """
    return 0.5 * bound_thm31(d, midpoint_frame(interval), tol)


def bound_cor32_display(d: SecondDerivTriple, interval: Interval) -> float:
    """The Bullen-type log-convex bound transcribed term by term.

    Kept separate from :func:`bound_cor32_bullen` so the two can be
    compared; it is ill-conditioned near kappa_1 = 1 and returns the
    exact limit there.
    """
    _require_positive(d)
    a, b = interval.a, interval.b
    m = interval.midpoint
    ln_a, ln_m, ln_b = math.log(d.at_a), math.log(d.at_x), math.log(d.at_b)
    r = 2.0 / (b - a)
    quarter = (b - a) / 4.0

    def term(pref_log: float, lo: float, hi: float, log_k: float) -> float:
        if log_k == 0.0:
            return math.exp(pref_log + lo * log_k) * (hi - lo) ** 3 / 6.0 / (2.0 * (b - a))
        k_lo, k_hi = math.exp(lo * log_k), math.exp(hi * log_k)
        num = k_lo - k_hi + quarter * (k_lo + k_hi) * log_k
        return math.exp(pref_log) * num / ((b - a) * log_k**3)

    kappa1_log = r * (ln_m - ln_a)
    tau1_log = r * (ln_b - ln_m)
    left = term(r * (m * ln_a - a * ln_m), a, m, kappa1_log)
    right = term(r * (b * ln_m - m * ln_b), m, b, tau1_log)
    return left + right


def bound_thm32(
    d: SecondDerivTriple,
    frame: ProblemFrame,
    h: HolderPair,
    tol: Tolerances = DEFAULT_TOLERANCES,
    variant: Variant = Variant.DERIVED,
) -> float:
    """Hoelder-type bound for log-convex |f''|^q.

    DERIVED: w (len)^2 B(p+1,p+1)^(1/p) |f''(lo)| (expm1(z)/z)^(1/q) per
    half, z = q ln(|f''(hi)|/|f''(lo)|).  STATED reproduces the printed
    display, which raises kappa to q*x/(x-a) and carries (x - a) to the
    first power only; it is kept for the discrepancy report.
    """
    _require_positive(d)
    p, q = h.p, h.q
    beta_root = euler_beta(p + 1.0, p + 1.0) ** (1.0 / p)
    la, lb, ln_a, ln_x, ln_b = _halves(d, frame)
    wl, wr = frame.left_weight, frame.right_weight
    if Variant(variant) is Variant.DERIVED:
        left = wl * la**2 * beta_root * d.at_a * exp_mean_unit(q * (ln_x - ln_a)) ** (1.0 / q)
        right = wr * lb**2 * beta_root * d.at_x * exp_mean_unit(q * (ln_b - ln_x)) ** (1.0 / q)
        return left + right
    kt = kappa_tau(d, frame, tol)

    def stated_term(w, length, lo, pref_log, log_k):
        # [(k^(q hi/len) - k^(q lo/len)) / ln k^(q/len)]^(1/q), hi - lo = len
        c = q * log_k / length
        log_bracket = lo * c + math.log(length) + math.log(exp_mean_unit(c * length))
        return w * length * beta_root * math.exp(pref_log + log_bracket / q)

    left = stated_term(wl, la, frame.a, log_prefactor_left(d, frame), kt.log_kappa)
    right = stated_term(wr, lb, frame.x, log_prefactor_right(d, frame), kt.log_tau)
    return left + right


def bound_thm33(d: SecondDerivTriple, frame: ProblemFrame, q: PowerMeanExponent, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Power-mean bound for log-convex |f''|^q.

    Per half: w len^(2-3/q) / 6^(1-1/q) * P * parabolic_exp_moment(lo, hi, kappa^q)^(1/q),
    evaluated as w len^2 6^(1/q-1) |f''(lo)| m(q ln ratio)^(1/q).
    """
    _require_positive(d)
    qq = q.q
    la, lb, ln_a, ln_x, ln_b = _halves(d, frame)
    six = 6.0 ** (1.0 / qq - 1.0)
    left = frame.left_weight * la**2 * six * math.exp(ln_a + _log_parabola_moment_unit(qq * (ln_x - ln_a)) / qq)
    right = frame.right_weight * lb**2 * six * math.exp(ln_x + _log_parabola_moment_unit(qq * (ln_b - ln_x)) / qq)
    return left + right
