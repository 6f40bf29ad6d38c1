"""Curated test functions with certified convexity classes.

Certifications are mathematical facts recorded in each entry's
provenance; the sampled checkers in this module can only falsify them.

Two facts carry most of the certifications:

* a nonnegative convex g satisfies g(l x + (1-l) y) <= l g(x) + (1-l) g(y)
  <= l^s g(x) + (1-l)^s g(y), so it lies in K_s for every s in (0, 1];
* if g >= 0 lies in K_r then it lies in K_s for every s <= r.

The Hoelder and power-mean bounds need |f''|^q (q >= 1) in the class, so
entries tagged ``power-closed`` also certify that.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .core import DomainError, Interval, SExponent, TestFunction


@dataclass(frozen=True)
class RegistryEntry:
    fn: TestFunction
    provenance: str
    tags: frozenset = field(default_factory=frozenset)

    @property
    def id(self) -> str:
        return self.fn.id

    def to_dict(self) -> dict:
        fn = self.fn
        return {
            "id": fn.id,
            "tags": sorted(self.tags),
            "domain": [fn.domain.a, fn.domain.b],
            "certifications": {
                "s_membership": fn.s_membership.s if fn.s_membership else None,
                "log_convex_f2": fn.log_convex_f2,
                "convex_f": fn.convex_f,
                "M1": fn.M1,
                "M2": fn.M2,
                "exact_antiderivative": fn.antiderivative is not None,
            },
            "provenance": self.provenance,
        }


# --------------------------------------------------------------------------
# builders


def _arr(t) -> np.ndarray:
    return np.asarray(t, dtype=float)


def _phi(k: int, z: np.ndarray, terms: int = 12) -> np.ndarray:
    """phi_k(z) = sum_j z^j / (j + k)!  (small |z| only)."""
    z = _arr(z)
    out = np.zeros_like(z)
    term = np.full_like(z, 1.0 / math.factorial(k))
    for j in range(terms):
        out = out + term
        term = term * z / (j + k + 1)
    return out


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(40)


def _from_second_derivative(f2: Callable, anchor: float):
    """f' and f with f'(anchor) = f(anchor) = 0 built from f'' by quadrature.

    f'(t) = int_anchor^t f'' and f(t) = int_anchor^t (t - u) f''(u) du, each
    evaluated with a 40-point Gauss-Legendre rule on [anchor, t].  For the
    smooth entries this reaches double precision on the registry domain.
    """

    def nodes(t):
        t = _arr(t)
        half = 0.5 * (t - anchor)
        u = anchor + half[..., None] * (1.0 + _GL_NODES)
        return t, half, u

    def f1(t):
        t, half, u = nodes(t)
        return half * (f2(u) @ _GL_WEIGHTS)

    def f(t):
        t, half, u = nodes(t)
        return half * (((t[..., None] - u) * f2(u)) @ _GL_WEIGHTS)

    return f, f1


def _constant() -> RegistryEntry:
    c = 1.5
    fn = TestFunction(
        id="constant",
        f=lambda t: np.full_like(_arr(t), c),
        f1=lambda t: np.zeros_like(_arr(t)),
        f2=lambda t: np.zeros_like(_arr(t)),
        antiderivative=lambda t: c * _arr(t),
        domain=Interval(0.0, 3.0),
        s_membership=SExponent(1.0),
        convex_f=True,
        M2=0.0,
        M1=0.0,
    )
    return RegistryEntry(fn, "f = 3/2; f'' = 0 is trivially in every K_s.", frozenset({"polynomial", "s-convex", "power-closed", "smooth"}))


def _linear() -> RegistryEntry:
    fn = TestFunction(
        id="linear",
        f=lambda t: 2.0 * _arr(t) - 1.0,
        f1=lambda t: np.full_like(_arr(t), 2.0),
        f2=lambda t: np.zeros_like(_arr(t)),
        antiderivative=lambda t: _arr(t) ** 2 - _arr(t),
        domain=Interval(0.0, 3.0),
        s_membership=SExponent(1.0),
        convex_f=True,
        M2=0.0,
        M1=2.0,
    )
    return RegistryEntry(fn, "f = 2t - 1; f'' = 0 is trivially in every K_s.", frozenset({"polynomial", "s-convex", "power-closed", "smooth"}))


def _quadratic() -> RegistryEntry:
    fn = TestFunction(
        id="quadratic",
        f=lambda t: _arr(t) ** 2,
        f1=lambda t: 2.0 * _arr(t),
        f2=lambda t: np.full_like(_arr(t), 2.0),
        antiderivative=lambda t: _arr(t) ** 3 / 3.0,
        domain=Interval(0.0, 3.0),
        s_membership=SExponent(1.0),
        log_convex_f2=True,
        convex_f=True,
        M2=2.0,
        M1=6.0,
    )
    return RegistryEntry(
        fn,
        "f = t^2; |f''| = 2 is a positive constant: convex (hence in every K_s, as is 2^q) "
        "and log-convex with kappa = tau = 1 (degenerate).",
        frozenset({"polynomial", "s-convex", "power-closed", "log-convex", "equality-sconvex", "smooth"}),
    )


def _quartic() -> RegistryEntry:
    fn = TestFunction(
        id="quartic",
        f=lambda t: _arr(t) ** 4,
        f1=lambda t: 4.0 * _arr(t) ** 3,
        f2=lambda t: 12.0 * _arr(t) ** 2,
        antiderivative=lambda t: _arr(t) ** 5 / 5.0,
        domain=Interval(0.0, 1.0),
        s_membership=SExponent(1.0),
        convex_f=True,
        M2=12.0,
        M1=4.0,
    )
    return RegistryEntry(
        fn,
        "f = t^4; |f''| = 12 t^2 is nonnegative and convex, so |f''|^q = 12^q t^(2q) is too "
        "(q >= 1): in every K_s.  Not log-convex (vanishes at 0).",
        frozenset({"polynomial", "s-convex", "power-closed", "smooth"}),
    )


def _power_s(num: int, den: int) -> RegistryEntry:
    s = num / den
    c = 1.0 / ((s + 1.0) * (s + 2.0))
    fn = TestFunction(
        id=f"power_s({num}/{den})",
        f=lambda t: c * _arr(t) ** (s + 2.0),
        f1=lambda t: _arr(t) ** (s + 1.0) / (s + 1.0),
        f2=lambda t: _arr(t) ** s,
        antiderivative=lambda t: c * _arr(t) ** (s + 3.0) / (s + 3.0),
        domain=Interval(0.0, 1.0),
        s_membership=SExponent(s),
        convex_f=True,
        M2=1.0,
        M1=1.0 / (s + 1.0),
    )
    return RegistryEntry(
        fn,
        f"f = t^(s+2)/((s+1)(s+2)), s = {num}/{den}; f'' = t^s lies in K_s because u -> u^s is "
        "subadditive on [0, inf): (l x + (1-l) y)^s <= l^s x^s + (1-l)^s y^s.  For q >= 1, "
        "t^(sq) lies in K_min(sq,1), which is contained in K_s since sq >= s.",
        frozenset({"power", "s-convex", "power-closed"}),
    )


def _exponential(id_: str, c: float, domain: Interval) -> RegistryEntry:
    lo, hi = domain.a, domain.b
    fn = TestFunction(
        id=id_,
        f=lambda t: np.exp(c * _arr(t)) / c**2,
        f1=lambda t: np.exp(c * _arr(t)) / c,
        f2=lambda t: np.exp(c * _arr(t)),
        antiderivative=lambda t: np.exp(c * _arr(t)) / c**3,
        domain=domain,
        s_membership=SExponent(1.0),
        log_convex_f2=True,
        convex_f=True,
        M2=math.exp(max(c * lo, c * hi)),
        M1=math.exp(max(c * lo, c * hi)) / abs(c),
    )
    return RegistryEntry(
        fn,
        f"f = exp({c:g} t)/{c:g}^2; |f''| = exp({c:g} t) is log-linear (log-convex with equality) "
        "and positive convex, so |f''|^q = exp(q c t) is in every K_s and log-convex.",
        frozenset({"exponential", "s-convex", "power-closed", "log-convex", "equality-logconvex", "smooth"}),
    )


def _exp_flat() -> RegistryEntry:
    c = 1e-9
    # f = (e^{ct} - 1 - ct)/c^2 written through phi functions to avoid cancellation
    fn = TestFunction(
        id="exp_flat",
        f=lambda t: _arr(t) ** 2 * _phi(2, c * _arr(t)),
        f1=lambda t: _arr(t) * _phi(1, c * _arr(t)),
        f2=lambda t: np.exp(c * _arr(t)),
        antiderivative=lambda t: _arr(t) ** 3 * _phi(3, c * _arr(t)),
        domain=Interval(0.0, 3.0),
        s_membership=SExponent(1.0),
        log_convex_f2=True,
        convex_f=True,
        M2=math.exp(3.0 * c),
        M1=3.0 * float(_phi(1, np.array(3.0 * c))),
    )
    return RegistryEntry(
        fn,
        "f'' = exp(1e-9 t): log-linear with |ln kappa| = 1e-9, below the degeneracy threshold; "
        "f = t^2 phi_2(ct) differs from exp(ct)/c^2 by an affine function.",
        frozenset({"exponential", "s-convex", "power-closed", "log-convex", "equality-logconvex", "near-degenerate", "smooth"}),
    )


def _exp_sq() -> RegistryEntry:
    domain = Interval(0.0, 1.0)

    def f2(t):
        return np.exp(_arr(t) ** 2)

    f, f1 = _from_second_derivative(f2, anchor=domain.a)
    fn = TestFunction(
        id="exp_sq",
        f=f,
        f1=f1,
        f2=f2,
        antiderivative=None,
        domain=domain,
        s_membership=SExponent(1.0),
        log_convex_f2=True,
        convex_f=True,
        M2=math.e,
        M1=float(f1(np.array(1.0))),
    )
    return RegistryEntry(
        fn,
        "f'' = exp(t^2): ln f'' = t^2 is convex, so f'' is log-convex (strictly, not log-linear), "
        "and positive convex, so exp(q t^2) is in every K_s.  f, f' are built from f'' by "
        "Gauss-Legendre quadrature with f(0) = f'(0) = 0.",
        frozenset({"s-convex", "power-closed", "log-convex", "tabulated", "smooth"}),
    )


@lru_cache(maxsize=1)
def _builtin() -> tuple:
    return (
        _constant(),
        _linear(),
        _quadratic(),
        _quartic(),
        _power_s(1, 4),
        _power_s(1, 2),
        _power_s(3, 4),
        _exponential("exp1", 1.0, Interval(0.0, 1.0)),
        _exponential("exp2", 2.0, Interval(0.0, 3.0)),
        _exponential("exp_neg1", -1.0, Interval(0.0, 3.0)),
        _exp_flat(),
        _exp_sq(),
    )


def builtin_registry() -> list[RegistryEntry]:
    return list(_builtin())


def get_entry(fn_id: str) -> RegistryEntry:
    for entry in _builtin():
        if entry.id == fn_id:
            return entry
    known = ", ".join(e.id for e in _builtin())
    raise KeyError(f"unknown function id {fn_id!r}; known: {known}")


def jump_power_function(at_zero: float, b: float, c: float, s: float) -> Callable:
    """g(0) = at_zero, g(t) = b t^s + c for t > 0.

    Members of K_s when b >= 0 and 0 <= c <= at_zero; not members when
    b > 0 and c < 0.  Singular second derivative at 0, so a membership
    target only.
    """
    if not 0 < s < 1:
        raise DomainError("the jump-power family needs s in (0, 1)")

    def g(t):
        t = _arr(t)
        return np.where(t == 0, at_zero, b * np.abs(t) ** s + c)

    return g


# --------------------------------------------------------------------------
# falsification checkers


class Verdict(str, enum.Enum):
    NO_COUNTEREXAMPLE = "NO_COUNTEREXAMPLE"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    NOT_POSITIVE = "NOT_POSITIVE"


@dataclass(frozen=True)
class CheckResult:
    verdict: Verdict
    witness: Optional[tuple] = None  # (x, y, lambda)
    excess: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.NO_COUNTEREXAMPLE


_CHECK_ABS = 1e-12


def _lattice(interval: Interval, grid_n: int):
    if grid_n < 3:
        raise DomainError("grid_n must be at least 3")
    pts = interval.grid(grid_n)
    lam = np.linspace(0.0, 1.0, grid_n)
    X, Y, L = np.meshgrid(pts, pts, lam, indexing="ij")
    return X.ravel(), Y.ravel(), L.ravel()


def _verdict(lhs, rhs, X, Y, L) -> CheckResult:
    # absolute floor 1e-12, widened by rounding of large right-hand sides
    excess = lhs - rhs - _CHECK_ABS * (1.0 + np.abs(rhs))
    worst = int(np.argmax(excess))
    if excess[worst] > 0:
        return CheckResult(Verdict.COUNTEREXAMPLE, (float(X[worst]), float(Y[worst]), float(L[worst])), float(excess[worst]))
    return CheckResult(Verdict.NO_COUNTEREXAMPLE)


def check_s_convex_sampled(g: Callable, interval: Interval, s: SExponent | float, grid_n: int = 25) -> CheckResult:
    """Search an (x, y, lambda) lattice for a violation of s-convexity."""
    s_val = s.s if isinstance(s, SExponent) else float(s)
    X, Y, L = _lattice(interval, grid_n)
    lhs = _arr(g(L * X + (1.0 - L) * Y))
    rhs = L**s_val * _arr(g(X)) + (1.0 - L) ** s_val * _arr(g(Y))
    return _verdict(lhs, rhs, X, Y, L)


def check_log_convex_sampled(g: Callable, interval: Interval, grid_n: int = 25) -> CheckResult:
    """Search an (x, y, lambda) lattice for a violation of log-convexity."""
    samples = _arr(g(interval.grid(grid_n)))
    if np.any(samples <= 0):
        return CheckResult(Verdict.NOT_POSITIVE)
    X, Y, L = _lattice(interval, grid_n)
    lhs = _arr(g(L * X + (1.0 - L) * Y))
    rhs = _arr(g(X)) ** L * _arr(g(Y)) ** (1.0 - L)
    return _verdict(lhs, rhs, X, Y, L)


def check_nonnegative_sampled(g: Callable, interval: Interval, grid_n: int = 1001) -> bool:
    return bool(np.all(_arr(g(interval.grid(grid_n))) >= 0))


def certify_entry(entry: RegistryEntry, grid_n: int = 25) -> dict[str, bool]:
    """Run every sampled sanity check that applies to an entry."""
    fn = entry.fn
    dom = fn.domain
    grid = dom.grid(1001)
    results: dict[str, bool] = {}
    absf2 = lambda t: np.abs(fn.f2(t))  # noqa: E731
    if fn.s_membership is not None:
        results["s_convex"] = check_s_convex_sampled(absf2, dom, fn.s_membership, grid_n).ok
        if "power-closed" in entry.tags:
            for q in (1.5, 2.0, 3.0):
                results[f"s_convex_pow{q:g}"] = check_s_convex_sampled(
                    lambda t, q=q: absf2(t) ** q, dom, fn.s_membership, grid_n
                ).ok
        if fn.s_membership.s < 1:
            results["nonnegative"] = check_nonnegative_sampled(absf2, dom)
    if fn.log_convex_f2:
        results["positive"] = bool(np.all(fn.f2(grid) > 0))
        results["log_convex"] = check_log_convex_sampled(absf2, dom, grid_n).ok
    if fn.convex_f:
        results["f_convex"] = check_s_convex_sampled(fn.f, dom, 1.0, grid_n).ok
    if fn.M2 is not None:
        results["M2"] = bool(np.all(np.abs(fn.f2(grid)) <= fn.M2 + 1e-12))
    if fn.M1 is not None:
        results["M1"] = bool(np.all(np.abs(fn.f1(grid)) <= fn.M1 * (1 + 1e-12) + 1e-12))
    if fn.antiderivative is not None:
        h = 1e-5
        t = grid[(grid - h >= dom.a) & (grid + h <= dom.b)]
        F = fn.antiderivative
        diff = (F(t + h) - F(t - h)) / (2 * h)
        scale = 1.0 + np.abs(fn.f(t))
        results["antiderivative"] = bool(np.all(np.abs(diff - fn.f(t)) <= 1e-6 * scale))
    return results
