"""Grid-driven verification of every inequality over registry x parameters.

Work is split into independent (function, interval) tasks.  Each task owns
its functional cache, so no state is shared between workers, and results
are concatenated in task order: the output does not depend on the worker
count.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .core import (
    DEFAULT_TOLERANCES,
    BoundReport,
    BullenBoundsError,
    HolderPair,
    Interval,
    PowerMeanExponent,
    ProblemFrame,
    SExponent,
    Status,
    TheoremId,
    Tolerances,
    make_holder,
    make_report,
    midpoint_frame,
    skipped_report,
)
from .kernel import kernel_integral, lhs_functional
from .logconvex import (
    bound_cor31,
    bound_cor32_bullen,
    bound_cor32_display,
    bound_thm31,
    bound_thm32,
    bound_thm33,
    kappa_tau,
)
from .quadrature import (
    BoundKind,
    Partition,
    amt_bound_logconvex,
    amt_bound_sconvex,
    integrate_with_bound,
    printed_forms,
    random_partition,
    uniform_partition,
)
from .registry import RegistryEntry, builtin_registry
from .sconvex import (
    Variant,
    bound_cor21,
    bound_cor22,
    bound_cor23_bullen,
    bound_thm21,
    bound_thm22,
    bound_thm23,
    bound_thm24,
    check_bullen_classic,
    check_ostrowski,
)

THREADS_ENV = "BULLEN_BOUNDS_THREADS"


@dataclass(frozen=True)
class GridSpec:
    x_fracs: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    weight_pairs: tuple = ((1.0, 1.0), (1.0, 0.0), (0.0, 1.0), (2.0, 5.0), (5.0, 2.0))
    s_values: tuple = (0.25, 0.5, 0.75, 1.0)
    p_values: tuple = (1.5, 2.0, 3.0)
    q_values: tuple = (1.0, 1.5, 2.0, 3.0)
    intervals: tuple = (Interval(0.0, 1.0), Interval(1.0, 3.0))
    partition_sizes: tuple = (1, 2, 4, 8, 16)
    random_partitions: int = 1
    seed: int = 0
    identity: bool = True

    def __post_init__(self):
        for name in ("x_fracs", "weight_pairs", "s_values", "p_values", "q_values", "intervals"):
            values = tuple(getattr(self, name))
            if not values:
                raise ValueError(f"grid list {name} must be nonempty")
            object.__setattr__(self, name, values)
        if not all(0.0 < f < 1.0 for f in self.x_fracs):
            raise ValueError("x_fracs must lie in the open interval (0, 1)")
        object.__setattr__(self, "intervals", tuple(i if isinstance(i, Interval) else Interval(*i) for i in self.intervals))
        object.__setattr__(self, "weight_pairs", tuple((float(a), float(b)) for a, b in self.weight_pairs))
        # constructing validates p > 1, q >= 1, s in (0, 1]
        [make_holder(p) for p in self.p_values]
        [PowerMeanExponent(q) for q in self.q_values]
        [SExponent(s) for s in self.s_values]

    def to_dict(self) -> dict:
        return {
            "x_fracs": list(self.x_fracs),
            "weight_pairs": [list(w) for w in self.weight_pairs],
            "s_values": list(self.s_values),
            "p_values": list(self.p_values),
            "q_values": list(self.q_values),
            "intervals": [[i.a, i.b] for i in self.intervals],
            "partition_sizes": list(self.partition_sizes),
            "random_partitions": self.random_partitions,
            "seed": self.seed,
            "identity": self.identity,
        }


DEFAULT_GRID = GridSpec()


@dataclass
class SuiteResult:
    reports: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class _TaskOutput:
    reports: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    lhs_evaluations: int = 0
    degenerate_cells: int = 0


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _frame_key(frame: ProblemFrame) -> tuple:
    return (frame.a, frame.b, frame.x, frame.alpha, frame.beta)


class _Cell:
    """Runs one (function, interval) task."""

    def __init__(self, entry: RegistryEntry, interval: Interval, grid: GridSpec, tol: Tolerances):
        self.entry = entry
        self.fn = entry.fn
        self.interval = interval
        self.grid = grid
        self.tol = tol
        self.out = _TaskOutput()
        self._lhs_cache: dict = {}
        self.s_list = [SExponent(s) for s in grid.s_values if self.fn.supports_s(s)]
        self.power_closed = "power-closed" in entry.tags
        self.holders = [make_holder(p) for p in grid.p_values]
        self.qs = [PowerMeanExponent(q) for q in grid.q_values]

    # -- helpers ---------------------------------------------------------

    def lhs(self, frame: ProblemFrame) -> float:
        key = _frame_key(frame)
        if key not in self._lhs_cache:
            self._lhs_cache[key] = lhs_functional(self.fn, frame, self.tol)
            self.out.lhs_evaluations += 1
        return self._lhs_cache[key]

    def add(self, thm: TheoremId, frame: Optional[ProblemFrame], lhs: Callable[[], float], rhs: Callable[[], float], params=None, signed=False):
        try:
            report = make_report(thm, self.fn.id, self.interval, frame, lhs(), rhs(), self.tol, params, signed)
        except BullenBoundsError as exc:
            self.out.errors.append({"theorem_id": thm.value, "fn_id": self.fn.id, "params": dict(params or {}), "error": str(exc)})
            report = skipped_report(thm, self.fn.id, self.interval, frame, params)
        self.out.reports.append(report)
        return report

    # -- groups ----------------------------------------------------------

    def run(self) -> _TaskOutput:
        iv = self.interval
        for frac in self.grid.x_fracs:
            x = iv.a + frac * iv.length
            for alpha, beta in self.grid.weight_pairs:
                frame = ProblemFrame(iv, x, alpha, beta)
                self.frame_checks(frame)
            if self.fn.M1 is not None:
                try:
                    self.out.reports.append(check_ostrowski(self.fn, iv, x, self.tol))
                except BullenBoundsError as exc:
                    self.out.errors.append({"theorem_id": "OSTROWSKI", "fn_id": self.fn.id, "error": str(exc)})
        self.bullen_checks()
        self.quadrature_checks()
        return self.out

    def frame_checks(self, frame: ProblemFrame) -> None:
        fn, tol = self.fn, self.tol
        d = fn.triple(frame)
        L = lambda: self.lhs(frame)  # noqa: E731
        equal_weights = frame.alpha == frame.beta

        if self.grid.identity:
            self.add_identity(frame)

        for s in self.s_list:
            self.add(TheoremId.THM21, frame, L, lambda: bound_thm21(d, frame, s), {"s": s.s})
            if fn.M2 is not None:
                self.add(TheoremId.COR21, frame, L, lambda: bound_cor21(fn.M2, frame, s), {"s": s.s, "M": fn.M2})
            if equal_weights:
                self.add(TheoremId.COR22, frame, L, lambda: bound_cor22(d, frame.interval, frame.x, s), {"s": s.s})
            if not self.power_closed:
                continue
            for h in self.holders:
                params = {"s": s.s, "p": h.p, "q": h.q}
                for thm, fnc in ((TheoremId.THM22_STATED, bound_thm22), (TheoremId.THM23_STATED, bound_thm23)):
                    stated = self.add(thm, frame, L, lambda: fnc(d, frame, s, h, Variant.STATED), params)
                    derived_id = TheoremId.THM22_DERIVED if thm is TheoremId.THM22_STATED else TheoremId.THM23_DERIVED
                    derived = self.add(derived_id, frame, L, lambda: fnc(d, frame, s, h, Variant.DERIVED), params)
                    self.pair(thm.value.split("_")[0], stated, derived)
            for q in self.qs:
                self.add(TheoremId.THM24, frame, L, lambda: bound_thm24(d, frame, s, q), {"s": s.s, "q": q.q})

        if fn.log_convex_f2 and d.strictly_positive:
            kt = kappa_tau(d, frame, tol)
            if kt.kappa_degenerate or kt.tau_degenerate:
                self.out.degenerate_cells += 1
            self.add(TheoremId.THM31, frame, L, lambda: bound_thm31(d, frame, tol))
            if equal_weights:
                self.add(TheoremId.COR31, frame, L, lambda: bound_cor31(d, frame.interval, frame.x, tol))
            for h in self.holders:
                params = {"p": h.p, "q": h.q}
                derived = self.add(TheoremId.THM32, frame, L, lambda: bound_thm32(d, frame, h, tol), params)
                try:
                    stated_rhs = bound_thm32(d, frame, h, tol, Variant.STATED)
                    stated = make_report(TheoremId.THM32, fn.id, frame.interval, frame, derived.lhs, stated_rhs, tol, params)
                    self.pair("THM32", stated, derived)
                except BullenBoundsError:
                    pass
            for q in self.qs:
                self.add(TheoremId.THM33, frame, L, lambda: bound_thm33(d, frame, q, tol), {"q": q.q})

    def add_identity(self, frame: ProblemFrame) -> None:
        try:
            k_int = kernel_integral(self.fn, frame, self.tol)
            functional = self.lhs(frame)
        except BullenBoundsError as exc:
            self.out.errors.append({"theorem_id": "IDENTITY", "fn_id": self.fn.id, "error": str(exc)})
            self.out.reports.append(skipped_report(TheoremId.IDENTITY, self.fn.id, frame.interval, frame))
            return
        gap = abs(k_int - functional)
        status = Status.HOLDS if gap <= self.tol.identity_abs else Status.VIOLATED
        self.out.reports.append(
            BoundReport(TheoremId.IDENTITY, self.fn.id, frame.interval, frame, {}, k_int, functional, self.tol.identity_abs - gap, status)
        )

    def pair(self, theorem: str, stated: BoundReport, derived: BoundReport) -> None:
        if stated.status is Status.DEGENERATE_SKIPPED or derived.status is Status.DEGENERATE_SKIPPED:
            return
        self.out.discrepancies.append(("pair", theorem, stated, derived))

    def bullen_checks(self) -> None:
        fn, iv, tol = self.fn, self.interval, self.tol
        mid = midpoint_frame(iv)
        bullen_lhs = lambda: 0.5 * self.lhs(mid)  # noqa: E731
        d = fn.second_derivs(iv.a, iv.midpoint, iv.b)
        for s in self.s_list:
            self.add(TheoremId.COR23, mid, bullen_lhs, lambda: bound_cor23_bullen(d, iv, s), {"s": s.s})
        if fn.log_convex_f2 and d.strictly_positive:
            rep = self.add(TheoremId.COR32, mid, bullen_lhs, lambda: bound_cor32_bullen(d, iv, tol))
            if rep.status is not Status.DEGENERATE_SKIPPED:
                display = bound_cor32_display(d, iv)
                self.out.discrepancies.append((
                    "record",
                    {
                        "kind": "DISPLAY_VS_INSTANTIATION",
                        "theorem": "COR32",
                        "fn_id": fn.id,
                        "a": iv.a,
                        "b": iv.b,
                        "display": display,
                        "instantiated": rep.rhs,
                        "rel_diff": abs(display - rep.rhs) / rep.rhs if rep.rhs else 0.0,
                    },
                ))
        if fn.convex_f:
            try:
                self.out.reports.append(check_bullen_classic(fn, iv, tol))
            except BullenBoundsError as exc:
                self.out.errors.append({"theorem_id": "BULLEN_CLASSIC", "fn_id": fn.id, "error": str(exc)})

    def partitions(self) -> Iterable[tuple[str, int, Partition]]:
        for n in self.grid.partition_sizes:
            yield "uniform", n, uniform_partition(self.interval, n)
            if n > 1:
                for k in range(self.grid.random_partitions):
                    seed = self.grid.seed + 1000 * k + n
                    yield f"random{k}", n, random_partition(self.interval, n, seed=seed)

    def quadrature_checks(self) -> None:
        fn, iv, tol = self.fn, self.interval, self.tol
        for label, n, part in self.partitions():
            kinds = []
            for s in self.s_list:
                kinds.append((TheoremId.PROP2, BoundKind.PROP2_SCONVEX, s))
            if fn.log_convex_f2:
                kinds.append((TheoremId.PROP1, BoundKind.PROP1_LOGCONVEX, None))
            for thm, kind, s in kinds:
                params = {"n": n, "partition_seed": -1 if label == "uniform" else self.grid.seed}
                if s is not None:
                    params["s"] = s.s
                try:
                    res = integrate_with_bound(fn, part, kind, s, tol)
                except BullenBoundsError as exc:
                    self.out.errors.append({"theorem_id": thm.value, "fn_id": fn.id, "params": params, "error": str(exc)})
                    self.out.reports.append(skipped_report(thm, fn.id, iv, None, params))
                    continue
                report = make_report(thm, fn.id, iv, None, res.signed_error, res.apriori_bound, tol, params)
                self.out.reports.append(report)
                printed = printed_forms(fn, part, kind, s, tol)
                self.out.discrepancies.append((
                    "record",
                    {
                        "kind": "PRINTED_VS_CORRECTED",
                        "theorem": thm.value,
                        "fn_id": fn.id,
                        "a": iv.a,
                        "b": iv.b,
                        "n": n,
                        "partition": label,
                        "s": s.s if s is not None else None,
                        "actual_error": res.actual_error,
                        "corrected": res.apriori_bound,
                        "printed_max": printed["printed_max"],
                        "printed_sum": printed["printed_sum"],
                        "printed_max_covers": res.actual_error <= printed["printed_max"] * (1 + tol.bound_slack_rel) + tol.bound_slack_rel,
                    },
                ))


def _summarise_pairs(pairs: list, tol: Tolerances) -> list[dict]:
    """Fold STATED/DERIVED report pairs into one row per (theorem, fn, interval)."""
    groups: dict = {}
    for theorem, stated, derived in pairs:
        key = (theorem, stated.fn_id, stated.interval.a, stated.interval.b)
        g = groups.setdefault(key, {"ratios": [], "violations": 0, "worst": 0.0, "derived_violations": 0})
        if derived.rhs > 0:
            g["ratios"].append(stated.rhs / derived.rhs)
        if stated.status is Status.VIOLATED:
            g["violations"] += 1
            if abs(stated.lhs) > 0:
                g["worst"] = max(g["worst"], (abs(stated.lhs) - stated.rhs) / abs(stated.lhs))
        if derived.status is Status.VIOLATED:
            g["derived_violations"] += 1
    rows = []
    for (theorem, fn_id, a, b), g in groups.items():
        ratios = g["ratios"]
        if not ratios and not g["violations"]:
            continue
        rows.append({
            "kind": "DISPLAY_VS_DERIVED" if theorem == "THM32" else "STATED_VS_DERIVED",
            "theorem": theorem,
            "fn_id": fn_id,
            "a": a,
            "b": b,
            "cells": len(ratios),
            "ratio_min": min(ratios) if ratios else None,
            "ratio_max": max(ratios) if ratios else None,
            "stated_violations": g["violations"],
            "worst_stated_shortfall": g["worst"],
            "derived_violations": g["derived_violations"],
        })
    return rows


def _tasks(grid: GridSpec, registry: Sequence[RegistryEntry]):
    for entry in registry:
        for iv in grid.intervals:
            if entry.fn.domain.covers(iv):
                yield entry, iv


def run_suite(
    grid: GridSpec = DEFAULT_GRID,
    registry: Optional[Sequence[RegistryEntry]] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    workers: Optional[int] = None,
) -> SuiteResult:
    registry = builtin_registry() if registry is None else list(registry)
    tasks = list(_tasks(grid, registry))
    workers = worker_count() if workers is None else max(1, workers)

    def run(task):
        entry, iv = task
        return _Cell(entry, iv, grid, tol).run()

    if workers == 1 or len(tasks) <= 1:
        outputs = [run(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(run, tasks))

    result = SuiteResult()
    pairs = []
    records = []
    errors = []
    lhs_evals = 0
    degenerate = 0
    for out in outputs:
        result.reports.extend(out.reports)
        errors.extend(out.errors)
        lhs_evals += out.lhs_evaluations
        degenerate += out.degenerate_cells
        for item in out.discrepancies:
            if item[0] == "pair":
                pairs.append(item[1:])
            else:
                records.append(item[1])
    result.violations = [r for r in result.reports if r.asserted and r.status is Status.VIOLATED]
    result.discrepancies = _summarise_pairs(pairs, tol) + records
    counts: dict = {}
    for r in result.reports:
        c = counts.setdefault(r.theorem_id.value, {"HOLDS": 0, "VIOLATED": 0, "DEGENERATE_SKIPPED": 0})
        c[r.status.value] += 1
    result.meta = {
        "grid": grid.to_dict(),
        "tolerances": {
            "identity_abs": tol.identity_abs,
            "bound_slack_rel": tol.bound_slack_rel,
            "equality_rel": tol.equality_rel,
            "oracle_abs": tol.oracle_abs,
            "kappa_degenerate": tol.kappa_degenerate,
        },
        "functions": [e.id for e in registry],
        "counts": {k: counts[k] for k in sorted(counts)},
        "report_count": len(result.reports),
        "violation_count": len(result.violations),
        "lhs_evaluations": lhs_evals,
        "degenerate_kappa_cells": degenerate,
        "cell_errors": errors,
    }
    return result


def discrepancy_report(result: SuiteResult, tol: Tolerances = DEFAULT_TOLERANCES) -> dict:
    """Slack statistics per theorem and per (theorem, function), the printed
    vs derived comparisons, and the asserted violations."""

    def stats(reports):
        rel = [r.relative_slack for r in reports if r.status is not Status.DEGENERATE_SKIPPED and r.theorem_id is not TheoremId.IDENTITY]
        return {
            "count": len(reports),
            "holds": sum(r.status is Status.HOLDS for r in reports),
            "violated": sum(r.status is Status.VIOLATED for r in reports),
            "skipped": sum(r.status is Status.DEGENERATE_SKIPPED for r in reports),
            "min_rel_slack": min(rel) if rel else None,
            "median_rel_slack": statistics.median(rel) if rel else None,
            "sharp_cells": sum(abs(v) <= tol.equality_rel for v in rel),
        }

    by_thm: dict = {}
    by_thm_fn: dict = {}
    for r in result.reports:
        by_thm.setdefault(r.theorem_id.value, []).append(r)
        by_thm_fn.setdefault((r.theorem_id.value, r.fn_id), []).append(r)

    rows = []
    for (thm, fn_id), reps in by_thm_fn.items():
        row = {"theorem": thm, "fn_id": fn_id, **stats(reps)}
        row["sharp"] = row["min_rel_slack"] is not None and abs(row["min_rel_slack"]) <= tol.equality_rel
        rows.append(row)

    identity = [r for r in result.reports if r.theorem_id is TheoremId.IDENTITY and r.status is not Status.DEGENERATE_SKIPPED]
    stated_findings = [r.to_dict() for r in result.reports if not r.asserted and r.status is Status.VIOLATED]
    return {
        "summary": {
            "reports": len(result.reports),
            "violations": len(result.violations),
            "stated_variant_failures": len(stated_findings),
            "identity_max_gap": max((abs(r.lhs - r.rhs) for r in identity), default=None),
        },
        "by_theorem": {k: stats(by_thm[k]) for k in sorted(by_thm)},
        "by_theorem_function": sorted(rows, key=lambda r: (r["theorem"], r["fn_id"])),
        "stated_vs_derived": [d for d in result.discrepancies if d["kind"] in ("STATED_VS_DERIVED", "DISPLAY_VS_DERIVED")],
        "cor32_display": [d for d in result.discrepancies if d["kind"] == "DISPLAY_VS_INSTANTIATION"],
        "propositions": [d for d in result.discrepancies if d["kind"] == "PRINTED_VS_CORRECTED"],
        "stated_variant_failures": stated_findings[:200],
        "violations": [r.to_dict() for r in result.violations],
    }


# -- serialisation -------------------------------------------------------

CSV_COLUMNS = ("theorem_id", "fn_id", "a", "b", "x", "alpha", "beta", "s", "p", "q", "n", "lhs", "rhs", "slack", "status")


def _clean(obj):
    """Replace non-finite floats by None so the output is strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    return obj


def result_to_dict(result: SuiteResult) -> dict:
    return _clean({
        "meta": result.meta,
        "reports": [r.to_dict() for r in result.reports],
        "violations": [r.to_dict() for r in result.violations],
        "discrepancies": result.discrepancies,
    })


def to_json(result: SuiteResult) -> str:
    return json.dumps(result_to_dict(result), sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def to_csv(result: SuiteResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in result.reports:
        row = r.to_dict()
        params = row["params"]
        values = {**row, **{k: params.get(k) for k in ("s", "p", "q", "n")}}
        writer.writerow(["" if values[c] is None else _fmt(values[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def _fmt(v) -> str:
    if isinstance(v, float):
        return "" if not math.isfinite(v) else repr(v)
    return str(v)


def _g(v) -> str:
    return "-" if v is None else f"{v:.15g}" if isinstance(v, float) else str(v)


def render_text(doc: dict) -> str:
    """Plain-text rendering of a :func:`discrepancy_report` document."""
    out = []
    sm = doc["summary"]
    out.append(f"reports: {sm['reports']}   asserted violations: {sm['violations']}   "
               f"stated-variant failures: {sm['stated_variant_failures']}")
    out.append(f"identity max gap: {_g(sm['identity_max_gap'])}")
    out.append("")
    out.append("per theorem: count holds violated skipped min_rel_slack median_rel_slack sharp_cells")
    for thm, st in doc["by_theorem"].items():
        out.append(f"  {thm:<15} {st['count']:>6} {st['holds']:>6} {st['violated']:>6} {st['skipped']:>4} "
                   f"{_g(st['min_rel_slack']):>22} {_g(st['median_rel_slack']):>22} {st['sharp_cells']:>5}")
    sharp = [f"{r['theorem']}/{r['fn_id']}" for r in doc["by_theorem_function"] if r["sharp"]]
    out.append("")
    out.append("sharp (theorem/function): " + (", ".join(sharp) if sharp else "none"))
    out.append("")
    out.append("stated vs derived (ratio = stated rhs / derived rhs)")
    for d in doc["stated_vs_derived"]:
        out.append(f"  {d['theorem']:<6} {d['fn_id']:<14} [{d['a']:g},{d['b']:g}] cells={d['cells']:<4} "
                   f"ratio in [{_g(d['ratio_min'])}, {_g(d['ratio_max'])}] "
                   f"stated failures={d['stated_violations']} worst shortfall={_g(d['worst_stated_shortfall'])}")
    out.append("")
    out.append("Bullen-type log-convex bound: displayed form vs instantiation")
    for d in doc["cor32_display"]:
        out.append(f"  {d['fn_id']:<14} [{d['a']:g},{d['b']:g}] display={_g(d['display'])} "
                   f"instantiated={_g(d['instantiated'])} rel_diff={_g(d['rel_diff'])}")
    out.append("")
    out.append("quadrature: actual error vs corrected (summed) and printed readings")
    for d in doc["propositions"]:
        s = "" if d["s"] is None else f" s={d['s']:g}"
        out.append(f"  {d['theorem']} {d['fn_id']:<14} [{d['a']:g},{d['b']:g}] n={d['n']:<2} {d['partition']:<8}{s} "
                   f"actual={_g(d['actual_error'])} corrected={_g(d['corrected'])} "
                   f"printed_max={_g(d['printed_max'])} printed_sum={_g(d['printed_sum'])}"
                   f"{'' if d['printed_max_covers'] else '  (printed max does not cover)'}")
    out.append("")
    out.append("violations: " + ("none" if not doc["violations"] else str(len(doc["violations"]))))
    for v in doc["violations"]:
        out.append(f"  {v['theorem_id']} {v['fn_id']} [{v['a']:g},{v['b']:g}] x={_g(v['x'])} "
                   f"lhs={_g(v['lhs'])} rhs={_g(v['rhs'])}")
    return "\n".join(out) + "\n"
