"""Command-line front end: ``mzvtools {dual,eval,expand,verify,table,cache}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 numeric domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .cache import DiskCache
from .compositions import (
    Composition,
    compositions_up_to,
    format_composition,
    hoffman_dual,
    mzv_dual_index,
    parse_composition,
    reverse,
)
from .errors import CompositionError, MZVError
from .formulas import (
    cor34_sides,
    expand_eta,
    expand_psi,
    expand_thm21_rhs,
    expand_thm23_rhs,
    expand_xi,
    kt_conjecture_sum,
    sym_sides,
)
from .series import EvalResult, eval_a, eval_li, eval_li_landen, eval_t, eval_zeta, eval_zeta_star
from .verify import default_grid, parse_grid, run_suite, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x: float | None) -> str:
    """15 significant digits; Python's formatting rounds half to even on the exact binary value."""
    if x is None:
        return "-"
    return format(x, ".15g")


def _record(command: str, inputs: dict, result) -> str:
    doc = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    return json.dumps(doc, indent=2)


def _cache(args) -> DiskCache | None:
    if args.no_cache:
        return None
    return DiskCache(args.cache_dir)


# -- dual --------------------------------------------------------------------


def cmd_dual(args, out) -> int:
    k = parse_composition(args.composition)
    rows = {
        "composition": format_composition(k),
        "reverse": format_composition(reverse(k)),
        "dual": format_composition(hoffman_dual(k)),
        "mzv_dual": format_composition(mzv_dual_index(k)),
    }
    if args.format == "json":
        print(_record("dual", {"composition": args.composition}, rows), file=out)
    else:
        for name, value in rows.items():
            print(f"{name}: {value}", file=out)
    return EXIT_OK


# -- eval --------------------------------------------------------------------

_SHIFT_KINDS = {"zeta": eval_zeta, "zstar": eval_zeta_star, "t": eval_t}
_POINT_KINDS = {"li": eval_li, "a": eval_a, "landen": eval_li_landen}


def _evaluate(kind: str, k: Composition, alpha: float | None, x: float | None, tol: float | None, cache) -> EvalResult:
    if kind in _SHIFT_KINDS:
        if x is not None:
            raise UsageError(f"--x does not apply to {kind}")
        alpha = 0.0 if alpha is None else alpha
        run = lambda: _SHIFT_KINDS[kind](k, alpha, tol)  # noqa: E731
    else:
        if alpha is not None:
            raise UsageError(f"--alpha does not apply to {kind}")
        if x is None:
            raise UsageError(f"{kind} needs --x")
        run = lambda: _POINT_KINDS[kind](k, x, tol)  # noqa: E731
    if cache is None:
        return run()
    want = tol if tol is not None else 1e-8
    hit = cache.get(kind, k, want, alpha or 0.0, x)
    if hit is not None:
        return hit
    res = run()
    cache.put(kind, k, res, alpha or 0.0, x)
    return res


def cmd_eval(args, out) -> int:
    k = parse_composition(args.composition)
    res = _evaluate(args.kind, k, args.alpha, args.x, args.tol, _cache(args))
    if args.format == "json":
        inputs = {"kind": args.kind, "composition": format_composition(k), "alpha": args.alpha, "x": args.x, "tol": args.tol}
        result = {"value": res.value, "err_estimate": res.err_estimate, "terms_used": res.terms_used, "method": res.method}
        print(_record("eval", inputs, result), file=out)
    else:
        print(f"value: {fmt(res.value)}", file=out)
        print(f"err: {res.err_estimate:.3g}", file=out)
        print(f"method: {res.method}", file=out)
    return EXIT_OK


# -- expand ------------------------------------------------------------------


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"expand {args.target} needs " + ", ".join("--" + m.replace("_", "") for m in missing))


def _expansions(args) -> dict:
    t = args.target
    if t in ("xi", "psi", "eta", "thm21", "thm23"):
        _need(args, "k")
        k = parse_composition(args.k)
        klog = args.klog or 0
        if t == "xi":
            return {"expansion": expand_xi(k, klog)}
        if t == "psi":
            return {"expansion": expand_psi(k, klog)}
        if t == "eta":
            return {"expansion": expand_eta(k, klog)}
        if t == "thm21":
            return {"expansion": expand_thm21_rhs(k, klog, args.variant or "zeta", args.alpha)}
        return {"expansion": expand_thm23_rhs(k, klog, args.alpha)}
    if t == "ktsum":
        _need(args, "p", "q", "m")
        return {"expansion": kt_conjecture_sum(args.p, args.q, args.m, args.variant or "tvalue")}
    if t == "sym":
        _need(args, "p", "q", "m")
        lhs, rhs = sym_sides(args.p, args.q, args.m, args.variant or "zeta")
        return {"lhs": lhs, "rhs": rhs}
    _need(args, "p", "q")
    lhs, rhs = cor34_sides(args.p, args.q, args.variant or "zeta")
    return {"lhs": lhs, "rhs": rhs}


def cmd_expand(args, out) -> int:
    parts = _expansions(args)
    if args.format == "json":
        inputs = {n: getattr(args, n) for n in ("target", "k", "klog", "p", "q", "m", "variant", "alpha")}
        print(_record("expand", inputs, {name: e.to_dict() for name, e in parts.items()}), file=out)
        return EXIT_OK
    render: Callable = (lambda e: e.to_latex()) if args.format == "latex" else (lambda e: e.to_text(fold=not args.unfold))
    if len(parts) == 1:
        print(render(parts["expansion"]), file=out)
    else:
        print(f"{render(parts['lhs'])} = {render(parts['rhs'])}", file=out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    if args.grid is not None:
        try:
            text = Path(args.grid).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read grid file: {exc}") from exc
        try:
            grid = parse_grid(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        grid = default_grid()
    reports = run_suite(grid, args.parallel)
    counts = summarize(reports)
    if args.format == "json":
        inputs = {"suite": None if args.grid else args.suite, "grid": args.grid, "parallel": args.parallel}
        result = {"summary": counts, "reports": [r.to_dict() for r in reports]}
        print(_record("verify", inputs, result), file=out)
    else:
        for r in reports:
            line = f"{r.status.upper():4} {r.case.id} {r.case.params.describe()}"
            if r.residual is not None:
                line += f" residual={r.residual:.3g} lhs={fmt(r.lhs)} rhs={fmt(r.rhs)} err={r.lhs_err + r.rhs_err:.3g}"
            if r.message:
                line += f" ({r.message})"
            print(line, file=out)
        print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped", file=out)
    return EXIT_OK if counts["pass"] == len(reports) else EXIT_FAIL


# -- table -------------------------------------------------------------------


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return int(lo), int(lo)
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None


def cmd_table(args, out) -> int:
    if args.weight_upto is None and args.k is None:
        raise UsageError("table needs --weight-upto or --k")
    lo, hi = _range(args.k) if args.k is not None else (2, args.weight_upto)
    if args.weight_upto is not None:
        hi = min(hi, args.weight_upto)
    rows = [c for c in compositions_up_to(max(hi, 0), admissible_only=True) if c.weight >= lo]
    if args.depth is not None:
        rows = [c for c in rows if c.depth == args.depth]
    cache = _cache(args)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["k", "weight", "depth", "value", "err_estimate"])
    for c in rows:
        res = _evaluate(args.target, c, args.alpha, None, args.tol, cache)
        writer.writerow([format_composition(c), c.weight, c.depth, fmt(res.value), f"{res.err_estimate:.3g}"])
    return EXIT_OK


# -- cache -------------------------------------------------------------------


def cmd_cache(args, out) -> int:
    cache = DiskCache(args.cache_dir)
    if args.clear:
        print(f"removed {cache.clear()} records from {cache.directory}", file=out)
    else:
        info = cache.info()
        for key, value in info.items():
            print(f"{key}: {value}", file=out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mzvtools", description="Multiple zeta, T-value and polylogarithm toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--no-cache", action="store_true", help="bypass the on-disk result cache")
    p.add_argument("--cache-dir", default=None, help="cache directory (default: $MZVTOOLS_CACHE_DIR)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dual", help="reversal, Hoffman dual and MZV-dual index")
    d.add_argument("composition")
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.set_defaults(func=cmd_dual)

    e = sub.add_parser("eval", help="evaluate a single value")
    e.add_argument("kind", choices=("zeta", "zstar", "t", "li", "a", "landen"))
    e.add_argument("composition")
    e.add_argument("--alpha", type=float, default=None, help="Hurwitz shift; summation indices become n - alpha")
    e.add_argument("--x", type=float, default=None, help="argument for li, a and landen")
    e.add_argument("--tol", type=float, default=None)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_eval)

    x = sub.add_parser("expand", help="print an explicit finite expansion")
    x.add_argument("target", choices=("xi", "psi", "eta", "thm21", "thm23", "ktsum", "sym", "cor34"))
    x.add_argument("--k", default=None, help="composition, e.g. 2,1 or 1^3,2")
    x.add_argument("--klog", type=int, default=None, help="power of the logarithm (first argument minus one)")
    x.add_argument("--p", type=int, default=None)
    x.add_argument("--q", type=int, default=None)
    x.add_argument("--m", type=int, default=None)
    x.add_argument("--variant", choices=("zeta", "tvalue", "t"), default=None)
    x.add_argument("--alpha", type=float, default=0.0)
    x.add_argument("--unfold", action="store_true", help="keep the overall scalar outside the bracket")
    x.add_argument("--format", choices=("text", "json", "latex"), default="text")
    x.set_defaults(func=cmd_expand)

    v = sub.add_parser("verify", help="check identities numerically")
    src = v.add_mutually_exclusive_group()
    src.add_argument("--suite", choices=("default",), default="default")
    src.add_argument("--grid", default=None, help="grid file with lines 'id key=value ...'")
    v.add_argument("--parallel", type=int, default=1)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="batch evaluation as CSV")
    t.add_argument("target", choices=("zeta", "zstar", "t"))
    t.add_argument("--weight-upto", type=int, default=None)
    t.add_argument("--depth", type=int, default=None)
    t.add_argument("--k", default=None, help="weight range a..b")
    t.add_argument("--alpha", type=float, default=None)
    t.add_argument("--tol", type=float, default=None)
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("cache", help="inspect or clear the on-disk cache")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--info", action="store_true", default=True)
    g.add_argument("--clear", action="store_true")
    c.set_defaults(func=cmd_cache)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, CompositionError) as exc:
        print(f"mzvtools: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MZVError as exc:
        print(f"mzvtools: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
