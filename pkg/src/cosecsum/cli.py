"""Command line interface: ``cosecsum {eval,table,verify,bounds,pv}``.

Exit codes: 0 success, 1 verification failure, 2 domain error,
3 numeric nonconvergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

from . import __version__
from .asymptotics import (alternating_bounds, bounds, bounds_sweep, main_expansion,
                          refined_expansion, simple_approximation, watson_expansion)
from .core import (ConsistencyError, DomainError, NonConvergenceError,
                   PrecisionPolicy, SumQuery)
from .direct import alternating_cosecant_sum, cos_cosecant_sum, polya_vinogradov_direct, watson_sum
from .identities import run_catalog
from .quadrature import QuadratureSpec, Scheme
from .representations import (finite_series_eval, finite_series_variants,
                              infinite_series_eval, integral_eval_hyperbolic,
                              integral_eval_poisson, pv_sum_series)

EXIT_OK, EXIT_VERIFY, EXIT_DOMAIN, EXIT_NONCONV = 0, 1, 2, 3

RECORD_FIELDS = ["n", "nu", "method", "value", "bracket_lo", "bracket_hi", "residual"]


# ------------------------------------------------------------- formatting

def _fmt(x) -> str:
    if x is None:
        return "NA"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else "NA"
    return str(x)


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def write_rows(rows: List[dict], fields: Sequence[str], fmt: str, out, meta: Optional[dict] = None):
    if fmt == "json":
        doc = {"version": __version__}
        if meta:
            doc.update(meta)
        doc["records"] = [{f: _jsonable(r.get(f)) for f in fields} for r in rows]
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    out.write(",".join(fields) + "\n")
    for r in rows:
        out.write(",".join(_fmt(r.get(f)) for f in fields) + "\n")


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="\n", encoding="utf-8"), True


def _emit(args, rows, fields, meta=None):
    out, close = _open_out(args.out)
    try:
        write_rows(rows, fields, args.format, out, meta)
    finally:
        if close:
            out.close()


def parse_range(text: str) -> List[int]:
    """'5', '2..300', '7,10,16' or mixtures like '1..4,9'."""
    values: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, b = part.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(int(part))
    if not values:
        raise argparse.ArgumentTypeError(f"no values in {text!r}")
    return values


def _range_arg(text):
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _policy(args) -> PrecisionPolicy:
    return PrecisionPolicy(abs_tol=args.abs_tol, rel_tol=args.rel_tol, max_terms=args.max_terms)


def _threads(args) -> int:
    return args.threads if args.threads > 0 else (os.cpu_count() or 1)


# ----------------------------------------------------------------- methods

def _float(x):
    return None if x is None else float(x)


def _record(n, nu, method, value, lo=None, hi=None, residual=None) -> dict:
    return {"n": n, "nu": nu, "method": method, "value": _float(value),
            "bracket_lo": _float(lo), "bracket_hi": _float(hi), "residual": _float(residual)}


def _eval_method(name: str, n: int, nu: int, policy: PrecisionPolicy):
    """Return (value, bracket_lo, bracket_hi) for one named method."""
    quad = QuadratureSpec(target_tol=max(policy.abs_tol, 1e-14))
    if name == "direct":
        return cos_cosecant_sum(n, nu), None, None
    if name == "finite_series":
        return finite_series_eval(n, nu), None, None
    if name.startswith("finite_series_"):
        return finite_series_variants(n, nu, name[len("finite_series_"):]), None, None
    if name in ("infinite_series", "integral_poisson", "integral_hyperbolic"):
        if name == "infinite_series":
            ev = infinite_series_eval(n, nu, policy)
        elif name == "integral_poisson":
            ev = integral_eval_poisson(n, nu, QuadratureSpec(Scheme.ADAPTIVE_INTERVAL, quad.target_tol))
        else:
            ev = integral_eval_hyperbolic(n, nu, quad)
        return ev.value, ev.error_bracket.lower, ev.error_bracket.upper
    if name == "asymptotic_main":
        ex = main_expansion(n, nu, 4)
        return ex.partial_sum, ex.bracket.lower, ex.bracket.upper
    if name == "asymptotic_refined":
        return refined_expansion(n, nu).value, None, None
    if name == "approximation":
        return simple_approximation(n, nu), None, None
    if name == "bounds":
        b = bounds(n, nu)
        return (b.lower + b.upper) / 2, b.lower, b.upper
    raise DomainError(f"unknown method {name!r}")


EVAL_METHODS = ["direct", "finite_series", "finite_series_sin2", "finite_series_cos2",
                "finite_series_ctg_product", "infinite_series", "integral_poisson",
                "integral_hyperbolic", "asymptotic_main", "asymptotic_refined",
                "approximation", "bounds"]


def _exit_code_for(exc) -> int:
    if isinstance(exc, NonConvergenceError):
        return EXIT_NONCONV
    if isinstance(exc, DomainError):
        return EXIT_DOMAIN
    if isinstance(exc, ConsistencyError):
        return EXIT_VERIFY
    return EXIT_DOMAIN


# ---------------------------------------------------------------- commands

def cmd_eval(args) -> int:
    q = SumQuery(args.n, args.nu)
    policy = _policy(args)
    rows = []
    if q.is_watson_case:
        s = watson_sum(q.n)
        rows.append(_record(q.n, args.nu, "watson", s))
        try:
            ex = watson_expansion(q.n, 3)
            rows.append(_record(q.n, args.nu, "watson_expansion", ex.partial_sum,
                                ex.bracket.lower, ex.bracket.upper, s - ex.partial_sum))
        except DomainError:
            pass
        _emit(args, rows, RECORD_FIELDS, {"watson_case": True})
        return EXIT_OK
    explicit = args.method is not None
    methods = args.method or EVAL_METHODS
    oracle = cos_cosecant_sum(q.n, q.nu_mod)
    for name in methods:
        try:
            value, lo, hi = _eval_method(name, q.n, q.nu_mod, policy)
        except (DomainError, NonConvergenceError) as exc:
            if explicit:
                print(f"cosecsum eval: method {name} failed at n={q.n}, nu={args.nu}: {exc}",
                      file=sys.stderr)
                return _exit_code_for(exc)
            continue
        residual = None if name == "direct" else oracle - float(value)
        rows.append(_record(q.n, args.nu, name, value, lo, hi, residual))
    _emit(args, rows, RECORD_FIELDS)
    return EXIT_OK


TABLE_FIELDS = RECORD_FIELDS + ["error"]


def cmd_table(args) -> int:
    error_mode = args.mode.startswith("error_")
    method = args.method or ("approximation" if error_mode else "direct")
    if method not in EVAL_METHODS:
        print(f"cosecsum table: unknown method {method!r}", file=sys.stderr)
        return EXIT_DOMAIN
    policy = _policy(args)
    if args.mode.endswith("vs_n"):
        # sums are defined for 0 <= nu <= n-1; larger nu would alias
        grid = [(n, nu) for nu in args.nu for n in args.n if n > nu and n >= 2]
    else:
        grid = [(n, nu) for n in args.n for nu in args.nu]

    def row(point):
        n, nu = point
        try:
            q = SumQuery(n, nu)
            if method == "direct":
                value, lo, hi = cos_cosecant_sum(q), None, None
            else:
                value, lo, hi = _eval_method(method, n, q.require_interior(), policy)
            residual = cos_cosecant_sum(q) - float(value) if error_mode else None
            r = _record(n, nu, method, value, lo, hi, residual)
            r["error"] = None
        except (DomainError, NonConvergenceError) as exc:
            r = _record(n, nu, method, None)
            r["error"] = f"{type(exc).__name__}: {exc}".replace(",", ";")
            r["_code"] = _exit_code_for(exc)
        return r

    with ThreadPoolExecutor(max_workers=_threads(args)) as pool:
        rows = list(pool.map(row, grid))
    _emit(args, rows, TABLE_FIELDS, {"mode": args.mode})
    codes = [r["_code"] for r in rows if "_code" in r]
    return max(codes) if codes else EXIT_OK


REPORT_FIELDS = ["id", "swept", "checks", "worst_abs_residual", "worst_rel_residual",
                 "worst_case_params", "passed", "vacuous", "error"]


def cmd_verify(args) -> int:
    reports = run_catalog(args.n_max, _policy(args), workers=_threads(args))
    dicts = [r.to_dict() for r in reports]
    passed = sum(r.passed for r in reports)
    summary = {"total": len(reports), "passed": passed, "failed": len(reports) - passed}
    out, close = _open_out(args.out)
    try:
        if args.format == "json":
            doc = {"version": __version__, "reports": [{k: d[k] for k in REPORT_FIELDS} for d in dicts],
                   "summary": summary}
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            for d in dicts:
                d["worst_case_params"] = " ".join(map(str, d["worst_case_params"])) or None
            write_rows(dicts, REPORT_FIELDS, "csv", out)
    finally:
        if close:
            out.close()
    return EXIT_OK if summary["failed"] == 0 else EXIT_VERIFY


BOUNDS_FIELDS = ["n", "nu", "kind", "lower", "oracle", "upper", "contained"]


def cmd_bounds(args) -> int:
    small = [n for n in args.n if n < 4]
    if small:
        print(f"cosecsum bounds: n={small[0]} is below 4; the bounds are only "
              f"checked for n >= 4", file=sys.stderr)
        return EXIT_DOMAIN
    rows = []
    for n in args.n:
        nus = None if args.nu is None else [v for v in args.nu if v % n]
        for r in bounds_sweep(n, nus):
            rows.append({"n": n, "nu": r.nu, "kind": "general", "lower": r.lower,
                         "oracle": r.oracle, "upper": r.upper, "contained": r.contained})
        if args.nu is None and n % 2 == 0:
            b = alternating_bounds(n, dps=40)
            c = alternating_cosecant_sum(n, dps=40)
            rows.append({"n": n, "nu": None, "kind": "alternating", "lower": float(b.lower),
                         "oracle": float(c), "upper": float(b.upper),
                         "contained": bool(b.strictly_contains(c))})
    _emit(args, rows, BOUNDS_FIELDS)
    return EXIT_OK if all(r["contained"] for r in rows) else EXIT_VERIFY


PV_FIELDS = ["n", "k", "R", "direct", "series", "bracket_lo", "bracket_hi", "agree"]


def cmd_pv(args) -> int:
    direct = polya_vinogradov_direct(args.n, args.k)
    ev = pv_sum_series(args.n, args.k, args.R)
    row = {"n": args.n, "k": args.k, "R": args.R, "direct": direct, "series": ev.value,
           "bracket_lo": ev.error_bracket.lower, "bracket_hi": ev.error_bracket.upper,
           "agree": direct in ev.error_bracket}
    _emit(args, [row], PV_FIELDS)
    return EXIT_OK if row["agree"] else EXIT_VERIFY


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--abs-tol", type=float, default=1e-12)
    g.add_argument("--rel-tol", type=float, default=1e-12)
    g.add_argument("--max-terms", type=int, default=10**6)
    g.add_argument("--format", choices=["csv", "json"], default=None,
                   help="default: json for verify, csv otherwise")
    g.add_argument("--out", default=None, help="output path (default: stdout)")
    g.add_argument("--threads", type=int, default=0, help="worker threads, 0 = auto")

    p = argparse.ArgumentParser(prog="cosecsum",
                                description="Generalized cosecant sums C_n(nu), C_n and S_n.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate one (n, nu) by several methods")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--nu", type=int, default=0)
    e.add_argument("--method", action="append", choices=EVAL_METHODS,
                   help="repeatable; default is every applicable method")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("table", parents=[common], help="grid of values or errors (plot data)")
    t.add_argument("--mode", required=True, choices=["vs_n", "vs_nu", "error_vs_n", "error_vs_nu"])
    t.add_argument("--n", type=_range_arg, required=True)
    t.add_argument("--nu", type=_range_arg, required=True)
    t.add_argument("--method", choices=EVAL_METHODS)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="run the identity catalog")
    v.add_argument("--n-max", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", parents=[common], help="check the two-sided bounds")
    b.add_argument("--n", type=_range_arg, required=True)
    b.add_argument("--nu", type=_range_arg, default=None)
    b.set_defaults(func=cmd_bounds)

    q = sub.add_parser("pv", parents=[common], help="Polya-Vinogradov sum, direct and by series")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--R", type=int, default=2000)
    q.set_defaults(func=cmd_pv)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "verify" else "csv"
    try:
        PrecisionPolicy(args.abs_tol, args.rel_tol, args.max_terms)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return args.func(args)
    except (DomainError, NonConvergenceError, ConsistencyError) as exc:
        print(f"cosecsum {args.command}: {exc}", file=sys.stderr)
        return _exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
