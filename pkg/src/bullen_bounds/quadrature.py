"""Composite averaged midpoint-trapezoid rule with a-priori error bounds.

    A_MT(d, f) = 1/4 sum_i h_i [f(x_i) + 2 f(m_i) + f(x_{i+1})]

On each panel, A_MT/h_i - mean(f) is exactly the Bullen difference, so the
panel error is h_i times a Bullen-type bound.  The error bounds below are
those per-panel bounds multiplied by h_i and summed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    CertificationError,
    DomainError,
    Interval,
    SExponent,
    SecondDerivTriple,
    TestFunction,
    Tolerances,
)
from .kernel import definite_integral
from .logconvex import bound_cor32_bullen, bound_cor32_display
from .sconvex import bound_cor23_bullen


@dataclass(frozen=True)
class Partition:
    nodes: tuple

    def __post_init__(self):
        nodes = tuple(float(v) for v in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) < 2:
            raise DomainError("a partition needs at least two nodes")
        if not all(math.isfinite(v) for v in nodes):
            raise DomainError("partition nodes must be finite")
        if any(b <= a for a, b in zip(nodes, nodes[1:])):
            raise DomainError("partition nodes must be strictly increasing")

    @property
    def n(self) -> int:
        return len(self.nodes) - 1

    @property
    def interval(self) -> Interval:
        return Interval(self.nodes[0], self.nodes[-1])

    def panels(self) -> list[Interval]:
        return [Interval(a, b) for a, b in zip(self.nodes, self.nodes[1:])]

    def widths(self) -> np.ndarray:
        return np.diff(np.asarray(self.nodes))

    def split(self, k: int) -> tuple["Partition", "Partition"]:
        """Two consecutive sub-partitions sharing node ``k``."""
        if not 0 < k < self.n:
            raise DomainError(f"split index must lie in 1..{self.n - 1}")
        return Partition(self.nodes[: k + 1]), Partition(self.nodes[k:])


def uniform_partition(interval: Interval, n: int) -> Partition:
    if n < 1:
        raise DomainError("n must be at least 1")
    nodes = interval.a + interval.length * np.arange(n + 1) / n
    nodes[-1] = interval.b
    return Partition(tuple(nodes))


def random_partition(interval: Interval, n: int, seed: int = 0, min_gap_rel: float = 1e-3) -> Partition:
    """n panels with interior nodes drawn uniformly; redraws until every
    panel is at least ``min_gap_rel * (b - a)`` wide."""
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = np.random.default_rng(seed)
    min_gap = min_gap_rel * interval.length
    if n * min_gap >= interval.length:
        raise DomainError("minimum gap too large for n panels")
    for _ in range(10_000):
        inner = np.sort(rng.uniform(interval.a, interval.b, size=n - 1))
        nodes = np.concatenate([[interval.a], inner, [interval.b]])
        if np.all(np.diff(nodes) >= min_gap):
            return Partition(tuple(nodes))
    raise DomainError("could not draw a partition with the requested gap")


class BoundKind(str, enum.Enum):
    PROP1_LOGCONVEX = "PROP1_LOGCONVEX"
    PROP2_SCONVEX = "PROP2_SCONVEX"

    @classmethod
    def parse(cls, text: str) -> "BoundKind":
        if isinstance(text, cls):
            return text
        key = str(text).upper()
        aliases = {"PROP1": cls.PROP1_LOGCONVEX, "PROP2": cls.PROP2_SCONVEX}
        return aliases[key] if key in aliases else cls(key)


@dataclass(frozen=True)
class QuadratureResult:
    amt_value: float
    reference_value: float
    actual_error: float
    apriori_bound: float
    bound_kind: BoundKind
    signed_error: float

    @property
    def holds(self) -> bool:
        return self.actual_error <= self.apriori_bound * (1 + 1e-12) + 1e-15


def _check_inside(fn: TestFunction, d: Partition) -> None:
    if not fn.domain.covers(d.interval):
        raise DomainError(f"{fn.id}: partition leaves the domain")


def _panel_points(d: Partition):
    x = np.asarray(d.nodes)
    left, right = x[:-1], x[1:]
    mid = 0.5 * (left + right)
    return left, mid, right, right - left


def amt_panel_values(fn: TestFunction, d: Partition) -> np.ndarray:
    left, mid, right, h = _panel_points(d)
    return 0.25 * h * (fn.f(left) + 2.0 * fn.f(mid) + fn.f(right))


def amt_rule(fn: TestFunction, d: Partition) -> float:
    _check_inside(fn, d)
    return math.fsum(amt_panel_values(fn, d).tolist())


def _panel_triples(fn: TestFunction, d: Partition) -> list[SecondDerivTriple]:
    left, mid, right, _ = _panel_points(d)
    fa, fm, fb = np.abs(fn.f2(left)), np.abs(fn.f2(mid)), np.abs(fn.f2(right))
    return [SecondDerivTriple(float(p), float(q), float(r)) for p, q, r in zip(fa, fm, fb)]


def sconvex_panel_bounds(fn: TestFunction, d: Partition, s: SExponent) -> list[float]:
    """Bullen-type s-convex bound of each panel in mean-value form."""
    return [bound_cor23_bullen(t, p, s) for t, p in zip(_panel_triples(fn, d), d.panels())]


def logconvex_panel_bounds(fn: TestFunction, d: Partition, tol: Tolerances = DEFAULT_TOLERANCES, display: bool = False) -> list[float]:
    triples = _panel_triples(fn, d)
    for t in triples:
        if not t.strictly_positive:
            raise DomainError(f"{fn.id}: |f''| vanishes at a partition node or midpoint")
    if display:
        return [bound_cor32_display(t, p) for t, p in zip(triples, d.panels())]
    return [bound_cor32_bullen(t, p, tol) for t, p in zip(triples, d.panels())]


def amt_bound_sconvex(fn: TestFunction, d: Partition, s: SExponent) -> float:
    if not fn.supports_s(s):
        raise CertificationError(f"{fn.id}: |f''| is not certified s-convex for s={s.s}")
    _check_inside(fn, d)
    h = d.widths()
    return math.fsum((h * np.asarray(sconvex_panel_bounds(fn, d, s))).tolist())


def amt_bound_logconvex(fn: TestFunction, d: Partition, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    if not fn.log_convex_f2:
        raise CertificationError(f"{fn.id}: |f''| is not certified log-convex")
    _check_inside(fn, d)
    h = d.widths()
    return math.fsum((h * np.asarray(logconvex_panel_bounds(fn, d, tol))).tolist())


def printed_forms(fn: TestFunction, d: Partition, kind: BoundKind, s: Optional[SExponent] = None, tol: Tolerances = DEFAULT_TOLERANCES) -> dict:
    """Readings of the bounds as printed (per-panel terms without the h_i
    factor): their maximum and their plain sum, next to the summed form."""
    if BoundKind(kind) is BoundKind.PROP2_SCONVEX:
        # printed per-panel term h_i^2/(8(s+2)(s+3))[...] is the panel's mean-value bound
        terms = sconvex_panel_bounds(fn, d, s)
    else:
        terms = logconvex_panel_bounds(fn, d, tol, display=True)
    h = d.widths()
    return {
        "printed_max": max(terms),
        "printed_sum": math.fsum(terms),
        "corrected": math.fsum((h * np.asarray(terms)).tolist()),
    }


def reference_integral(fn: TestFunction, interval: Interval, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    # panel sums of F differences telescope, so cancellation is harmless here
    return definite_integral(fn, interval.a, interval.b, tol, cancellation_limit=math.inf)


def integrate_with_bound(
    fn: TestFunction,
    d: Partition,
    kind: BoundKind | str,
    s: Optional[SExponent] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> QuadratureResult:
    kind = BoundKind.parse(kind) if isinstance(kind, str) else kind
    amt = amt_rule(fn, d)
    if kind is BoundKind.PROP2_SCONVEX:
        if s is None:
            raise DomainError("the s-convex bound needs s")
        bound = amt_bound_sconvex(fn, d, s)
    else:
        bound = amt_bound_logconvex(fn, d, tol)
    # per-panel reference keeps the error free of cross-panel cancellation noise
    refs = [reference_integral(fn, p, tol) for p in d.panels()]
    ref = math.fsum(refs)
    signed = math.fsum(r - v for r, v in zip(refs, amt_panel_values(fn, d).tolist()))
    return QuadratureResult(
        amt_value=amt,
        reference_value=ref,
        actual_error=abs(signed),
        apriori_bound=bound,
        bound_kind=kind,
        signed_error=signed,
    )
