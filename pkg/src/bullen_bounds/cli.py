"""Command-line entry point: ``bullen-bounds <command> ...``.

Exit codes: 0 success (no violations / bound holds), 1 a checked
inequality failed, 2 usage, certification or I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from .core import (
    BullenBoundsError,
    CertificationError,
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
)
from .harness import GridSpec, discrepancy_report, render_text, run_suite, to_csv, to_json
from .kernel import kernel_integral, lhs_functional
from .logconvex import (
    bound_cor31,
    bound_cor32_bullen,
    bound_thm31,
    bound_thm32,
    bound_thm33,
    kappa_tau,
)
from .quadrature import BoundKind, integrate_with_bound, random_partition, uniform_partition
from .registry import RegistryEntry, builtin_registry, get_entry
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

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

S_THEOREMS = {TheoremId.THM21, TheoremId.COR21, TheoremId.COR22, TheoremId.COR23,
              TheoremId.THM22_STATED, TheoremId.THM22_DERIVED, TheoremId.THM23_STATED,
              TheoremId.THM23_DERIVED, TheoremId.THM24}
POWER_THEOREMS = {TheoremId.THM22_STATED, TheoremId.THM22_DERIVED, TheoremId.THM23_STATED,
                  TheoremId.THM23_DERIVED, TheoremId.THM24}
LOG_THEOREMS = {TheoremId.THM31, TheoremId.COR31, TheoremId.COR32, TheoremId.THM32, TheoremId.THM33}
# short names accepted by ``bound --thm`` that pick a variant via --variant
VARIANT_THEOREMS = {"THM22": "THM22", "THM23": "THM23"}


def _g(v: float) -> str:
    return "%.15g" % v


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _tolerances(args) -> Tolerances:
    return Tolerances(
        identity_abs=args.tol_identity,
        bound_slack_rel=args.tol_bound,
        equality_rel=args.tol_equality,
        oracle_abs=args.tol_oracle,
        kappa_degenerate=args.tol_kappa,
    )


def _registry(ids: Optional[Sequence[str]]) -> list[RegistryEntry]:
    if not ids:
        return builtin_registry()
    return [get_entry(i) for i in ids]


def _grid(args) -> GridSpec:
    kw = {"seed": args.seed}
    for name, attr in (("x_fracs", "x_fracs"), ("s", "s_values"), ("p", "p_values"), ("q", "q_values")):
        value = getattr(args, name)
        if value:
            kw[attr] = tuple(value)
    if args.interval:
        kw["intervals"] = tuple(Interval(a, b) for a, b in args.interval)
    if args.partitions:
        kw["partition_sizes"] = tuple(args.partitions)
    return GridSpec(**kw)


# -- commands ------------------------------------------------------------

def cmd_verify(args) -> int:
    result = run_suite(_grid(args), _registry(args.functions), _tolerances(args), workers=args.workers)
    if args.format == "json":
        text = to_json(result)
    elif args.format == "csv":
        text = to_csv(result)
    else:
        text = render_text(discrepancy_report(result, _tolerances(args)))
    _emit(text, args.output)
    if result.violations:
        print(f"{len(result.violations)} violation(s) among asserted checks", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_report(args) -> int:
    tol = _tolerances(args)
    result = run_suite(_grid(args), _registry(args.functions), tol, workers=args.workers)
    doc = discrepancy_report(result, tol)
    if args.format == "json":
        text = json.dumps(_finite(doc), sort_keys=True, indent=1, allow_nan=False) + "\n"
    else:
        text = render_text(doc)
    _emit(text, args.output)
    return EXIT_OK


def _finite(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite(v) for v in obj]
    return obj


def cmd_list_functions(args) -> int:
    _emit(json.dumps([e.to_dict() for e in builtin_registry()], indent=1, sort_keys=True) + "\n", args.output)
    return EXIT_OK


def _parse_theorem(text: str, variant: str) -> TheoremId:
    key = text.upper()
    if key in VARIANT_THEOREMS:
        key = f"{key}_{variant.upper()}"
    try:
        return TheoremId(key)
    except ValueError:
        raise BullenBoundsError(f"unknown theorem id {text!r}") from None


def _one_bound(thm: TheoremId, entry: RegistryEntry, args, tol: Tolerances):
    """Return (report, notes) for one cell."""
    fn = entry.fn
    iv = _interval(args)
    x = args.x if args.x is not None else iv.midpoint
    frame = ProblemFrame(iv, x, args.alpha, args.beta)
    notes = []

    if thm in S_THEOREMS:
        s = SExponent(args.s if args.s is not None else 1.0)
        if not fn.supports_s(s):
            raise CertificationError(f"{fn.id}: |f''| is not certified {s.s}-convex")
        if thm in POWER_THEOREMS and "power-closed" not in entry.tags:
            raise CertificationError(f"{fn.id}: |f''|^q is not certified s-convex")
    if thm in LOG_THEOREMS and not fn.log_convex_f2:
        raise CertificationError(f"{fn.id}: |f''| is not certified log-convex")

    if thm is TheoremId.IDENTITY:
        k_int = kernel_integral(fn, frame, tol)
        lhs = lhs_functional(fn, frame, tol)
        gap = abs(k_int - lhs)
        return make_report(thm, fn.id, iv, frame, gap, tol.identity_abs, tol), ["lhs = |kernel integral - functional|"]
    if thm is TheoremId.OSTROWSKI:
        return check_ostrowski(fn, iv, x, tol), notes
    if thm is TheoremId.BULLEN_CLASSIC:
        return check_bullen_classic(fn, iv, tol), notes

    if thm in (TheoremId.COR23, TheoremId.COR32):
        frame = midpoint_frame(iv)
        notes.append("x = (a+b)/2 with equal weights; lhs is the Bullen difference")
    d = fn.triple(frame)
    if thm in LOG_THEOREMS:
        kt = kappa_tau(d, frame, tol)
        if kt.kappa_degenerate or kt.tau_degenerate:
            notes.append("degenerate growth rate (kappa or tau = 1): moments evaluated by their series limit")

    params = {}
    if thm in S_THEOREMS:
        params["s"] = s.s
    h = make_holder(args.p if args.p is not None else 2.0)
    q = PowerMeanExponent(args.q if args.q is not None else 1.0)
    rhs_of = {
        TheoremId.THM21: lambda: bound_thm21(d, frame, s),
        TheoremId.COR21: lambda: bound_cor21(_need_m2(fn), frame, s),
        TheoremId.COR22: lambda: bound_cor22(d, iv, x, s),
        TheoremId.COR23: lambda: bound_cor23_bullen(d, iv, s),
        TheoremId.THM22_STATED: lambda: bound_thm22(d, frame, s, h, Variant.STATED),
        TheoremId.THM22_DERIVED: lambda: bound_thm22(d, frame, s, h, Variant.DERIVED),
        TheoremId.THM23_STATED: lambda: bound_thm23(d, frame, s, h, Variant.STATED),
        TheoremId.THM23_DERIVED: lambda: bound_thm23(d, frame, s, h, Variant.DERIVED),
        TheoremId.THM24: lambda: bound_thm24(d, frame, s, q),
        TheoremId.THM31: lambda: bound_thm31(d, frame, tol),
        TheoremId.COR31: lambda: bound_cor31(d, iv, x, tol),
        TheoremId.COR32: lambda: bound_cor32_bullen(d, iv, tol),
        TheoremId.THM32: lambda: bound_thm32(d, frame, h, tol, Variant(args.variant.upper())),
        TheoremId.THM33: lambda: bound_thm33(d, frame, q, tol),
    }
    if thm not in rhs_of:
        raise BullenBoundsError(f"{thm.value} is not a single-cell bound; use the integrate command")
    if thm in (TheoremId.THM22_STATED, TheoremId.THM22_DERIVED, TheoremId.THM23_STATED,
               TheoremId.THM23_DERIVED, TheoremId.THM32):
        params.update(p=h.p, q=h.q)
    if thm in (TheoremId.THM24, TheoremId.THM33):
        params["q"] = q.q
    if thm in (TheoremId.COR22, TheoremId.COR31) and args.alpha != args.beta:
        notes.append("this bound uses unit weights; alpha and beta are ignored")
        frame = ProblemFrame(iv, x, 1.0, 1.0)
    lhs = lhs_functional(fn, frame, tol)
    if thm in (TheoremId.COR23, TheoremId.COR32):
        lhs *= 0.5
    return make_report(thm, fn.id, iv, frame, lhs, rhs_of[thm](), tol, params), notes


def _interval(args) -> Interval:
    # [0, 1] lies inside every registry domain
    return Interval(args.a, args.b) if args.a is not None else Interval(0.0, 1.0)


def _need_m2(fn) -> float:
    if fn.M2 is None:
        raise CertificationError(f"{fn.id}: no uniform bound on |f''| recorded")
    return fn.M2


def cmd_bound(args) -> int:
    tol = _tolerances(args)
    entry = get_entry(args.fn)
    thm = _parse_theorem(args.thm, args.variant)
    report, notes = _one_bound(thm, entry, args, tol)
    if args.format == "json":
        text = json.dumps(_finite({**report.to_dict(), "notes": notes}), sort_keys=True, indent=1) + "\n"
    else:
        lines = [f"theorem {report.theorem_id.value}", f"function {report.fn_id}",
                 f"interval [{_g(report.interval.a)}, {_g(report.interval.b)}]"]
        if report.frame is not None:
            lines.append(f"x {_g(report.frame.x)} alpha {_g(report.frame.alpha)} beta {_g(report.frame.beta)}")
        for k in sorted(report.params):
            lines.append(f"{k} {_g(report.params[k])}")
        lines += [f"lhs {_g(report.lhs)}", f"rhs {_g(report.rhs)}", f"slack {_g(report.slack)}",
                  f"status {report.status.value}"]
        lines += [f"note: {n}" for n in notes]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if report.status is Status.HOLDS else EXIT_FAIL


def cmd_integrate(args) -> int:
    tol = _tolerances(args)
    fn = get_entry(args.fn).fn
    iv = _interval(args)
    if args.uniform is not None:
        part = uniform_partition(iv, args.uniform)
    else:
        part = random_partition(iv, args.random, seed=args.seed)
    kind = BoundKind.parse(args.kind)
    s = SExponent(args.s) if args.s is not None else (SExponent(1.0) if kind is BoundKind.PROP2_SCONVEX else None)
    res = integrate_with_bound(fn, part, kind, s, tol)
    fields = {
        "fn_id": fn.id,
        "a": iv.a,
        "b": iv.b,
        "n": part.n,
        "bound_kind": res.bound_kind.value,
        "amt_value": res.amt_value,
        "reference_value": res.reference_value,
        "actual_error": res.actual_error,
        "signed_error": res.signed_error,
        "apriori_bound": res.apriori_bound,
        "holds": res.holds,
    }
    if s is not None:
        fields["s"] = s.s
    if args.format == "json":
        text = json.dumps(fields, sort_keys=True, indent=1) + "\n"
    else:
        text = "".join(f"{k} {_g(v) if isinstance(v, float) else v}\n" for k, v in fields.items())
    _emit(text, args.output)
    return EXIT_OK if res.holds else EXIT_FAIL


# -- parser --------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    g = p.add_argument_group("tolerances")
    g.add_argument("--tol-identity", type=float, default=1e-9)
    g.add_argument("--tol-bound", type=float, default=1e-12, help="relative grace on |lhs| <= rhs")
    g.add_argument("--tol-equality", type=float, default=1e-10)
    g.add_argument("--tol-oracle", type=float, default=1e-12)
    g.add_argument("--tol-kappa", type=float, default=1e-8)


def _grid_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("grid")
    g.add_argument("--functions", nargs="+", metavar="ID", help="registry ids (default: all)")
    g.add_argument("--s", nargs="+", type=float)
    g.add_argument("--p", nargs="+", type=float)
    g.add_argument("--q", nargs="+", type=float)
    g.add_argument("--x-fracs", dest="x_fracs", nargs="+", type=float)
    g.add_argument("--interval", nargs=2, type=float, action="append", metavar=("A", "B"))
    g.add_argument("--partitions", nargs="+", type=int, metavar="N")
    g.add_argument("--seed", type=int, default=0, help="seed for random partitions")
    g.add_argument("--workers", type=int, default=None, help="overrides BULLEN_BOUNDS_THREADS")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bullen-bounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    _grid_args(p)
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="discrepancy report of a suite run")
    p.add_argument("--format", choices=("json", "text"), default="text")
    _grid_args(p)
    _common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("bound", help="evaluate one bound on one cell")
    p.add_argument("--thm", required=True, help="theorem id, e.g. THM21, THM22 (with --variant), OSTROWSKI")
    p.add_argument("--fn", required=True)
    p.add_argument("--a", type=float, help="default interval: [0, 1]")
    p.add_argument("--b", type=float)
    p.add_argument("--x", type=float, help="default: midpoint")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--s", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--variant", choices=("DERIVED", "STATED", "derived", "stated"), default="DERIVED")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("integrate", help="composite rule with its a-priori error bound")
    p.add_argument("--fn", required=True)
    part = p.add_mutually_exclusive_group(required=True)
    part.add_argument("--uniform", type=int, metavar="N")
    part.add_argument("--random", type=int, metavar="N")
    p.add_argument("--kind", required=True, help="PROP1 (log-convex) or PROP2 (s-convex)")
    p.add_argument("--s", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", type=float, help="default interval: [0, 1]")
    p.add_argument("--b", type=float)
    p.add_argument("--format", choices=("text", "json"), default="text")
    _common(p)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("list-functions", help="registry metadata as JSON")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_list_functions)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "a", None) is not None and getattr(args, "b", None) is None:
        parser.error("--a needs --b")
    try:
        return args.func(args)
    except (BullenBoundsError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
