"""Command-line front end.

    cliffck family --kind P --m 5 --k 4 --format csv
    cliffck ck extend --kind hgck --m 3 --a0 "x0^2" --a1 0
    cliffck verify --suite fueter --m 3,5,7 --kmax 9 --report json
    cliffck planewave --m 3 --a0 "x0^2" --a1 0 --mc --samples 100000 --seed 42 --point 1,0.5,0,0
    cliffck examples --which ex31 --m 3 --point 0.5,0.5,0,0 --n 25
    cliffck eval --m 3 --expr "x0^2 - x1^2" --op Laplacian --point 1,2,0,0

Exit status is 0 iff every requested check passes; usage errors exit 2.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from contextlib import ExitStack
from fractions import Fraction

from gmpy2 import mpq

from . import __version__
from .ck import gck_extend, hgck_extend
from .exceptions import CliffckError
from .families import FAMILY_KINDS, coeff, family_poly, paravector_form, perturbed_coefficient
from .numeric import EXAMPLES, NORMALIZATIONS, closed_form, example_residual, hgck_float, initial_data, resolve_normalization
from .parser import parse_polynomial
from .planewave import planewave_mc, planewave_reconstruct
from .polynomial import LaplacianPower, Op, apply_operator, evaluate, format_polynomial
from .univariate import UnivariatePoly
from .verify import DEFAULT_TOLERANCES, SUITES, report_json, report_ok, run_suites


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _point(text: str) -> list[str]:
    parts = [t.strip() for t in text.split(",")]
    for t in parts:
        if not re.fullmatch(r"[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?|[-+]?\d+/\d+", t):
            raise argparse.ArgumentTypeError(f"bad coordinate {t!r}")
    return parts


def _exact(coord: str) -> mpq:
    # decimal strings are read exactly, so 0.3 becomes 3/10
    f = Fraction(coord)
    return mpq(f.numerator, f.denominator)


def _tolerance(text: str) -> tuple[str, float]:
    name, _, value = text.partition("=")
    if name not in DEFAULT_TOLERANCES or not value:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME in {sorted(DEFAULT_TOLERANCES)}")
    return name, float(value)


def _mutation(text: str) -> tuple[str, int, int, int, mpq]:
    # kind:k:s:m=value, e.g. harmonic:4:1:5=9/35
    m = re.fullmatch(r"(appell|harmonic):(\d+):(\d+):(\d+)=([-+]?\d+(?:/\d+)?)", text)
    if not m:
        raise argparse.ArgumentTypeError("expected KIND:k:s:m=VALUE")
    kind, k, s, dim, value = m.groups()
    return kind, int(k), int(s), int(dim), _exact(value)


def _univariate(text: str, m: int, flag: str) -> UnivariatePoly:
    p = parse_polynomial(text, m)
    try:
        return UnivariatePoly.from_polynomial(p)
    except CliffckError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_family(args) -> int:
    p = family_poly(args.kind, args.k, args.m)
    rows = _family_rows(args.kind, args.k, args.m)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "coefficient", "monomial-expansion"])
        for s, c, expansion in rows:
            w.writerow([s, str(c), expansion])
        sys.stdout.write(buf.getvalue())
    else:
        _emit({
            "kind": args.kind,
            "m": args.m,
            "k": args.k,
            "polynomial": p.to_json(),
            "text": format_polynomial(p),
            "coefficients": [{"s": s, "coefficient": str(c)} for s, c, _ in rows],
        })
    return 0


def _family_rows(kind: str, k: int, m: int) -> list[tuple[int, mpq, str]]:
    """Coefficient table: one row per paravector monomial x^(n-s) xbar^s."""
    if kind in ("Q", "P"):
        ck = "appell" if kind == "Q" else "harmonic"
        n, weights, grade = k, {s: coeff(ck, k, s, m) for s in range(k + 1)}, None
    elif kind == "H0":
        n, weights, grade = k, {s: coeff("appell", k, s, m) for s in range(k + 1)}, 0
    else:
        n = k + 1
        weights = {s: coeff("appell", n, s, m) * mpq(m, n) for s in range(n + 1)}
        grade = 1
    rows = []
    for s, c in weights.items():
        mono = paravector_form({s: 1}, n, m)
        if grade is not None:
            mono = mono.grade_project(grade)
        rows.append((s, c, format_polynomial(mono)))
    return rows


def cmd_ck(args) -> int:
    a0 = _univariate(args.a0, args.m, "--a0")
    if args.kind == "gck":
        if args.a1 not in (None, "0"):
            raise UsageError("gck takes only --a0 (the restriction f0)")
        p = gck_extend(a0, args.m)
    else:
        a1 = _univariate(args.a1 or "0", args.m, "--a1")
        p = hgck_extend(a0, a1, args.m)
    if args.format == "text":
        sys.stdout.write(format_polynomial(p) + "\n")
    else:
        _emit({"kind": args.kind, "m": args.m, "polynomial": p.to_json(), "text": format_polynomial(p)})
    return 0


def cmd_verify(args) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite == "fueter" and args.m:
        bad = [m for m in args.m if m < 3 or m % 2 == 0]
        if bad:
            raise UsageError(f"--m: m must be odd and >= 3 for the fueter suite, got {bad}")
    if args.m and any(m < 1 for m in args.m):
        raise UsageError("--m: dimensions must be positive")
    with ExitStack() as stack:
        for kind, k, s, m, value in args.mutate or ():
            stack.enter_context(perturbed_coefficient(kind, k, s, m, value))
        report = run_suites(suites, args.m, args.kmax, args.seed, dict(args.tol or ()), args.threads)
    if args.mutate:
        report["header"]["mutations"] = [f"{kind}:{k}:{s}:{m}={v}" for kind, k, s, m, v in args.mutate]
    text = report_json(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = report["summary"]
    print(f"{s['pass']} pass, {s['fail']} fail, {s['deviation']} deviation", file=sys.stderr)
    for e in report["failures"]:
        print(f"FAIL {e['suite']}/{e['check']} m={e['m']} k={e['k']}", file=sys.stderr)
    return 0 if report_ok(report) else 1


def cmd_planewave(args) -> int:
    m = args.m
    a0 = _univariate(args.a0, m, "--a0")
    a1 = _univariate(args.a1, m, "--a1")
    p = planewave_reconstruct(a0, a1, m)
    out = {"m": m, "polynomial": p.to_json(), "text": format_polynomial(p), "equals_hgck": True}
    ok = True
    if args.mc:
        if args.point is None:
            raise UsageError("--mc needs --point")
        if len(args.point) != m + 1:
            raise UsageError(f"--point needs {m + 1} coordinates")
        exact_pt = [_exact(c) for c in args.point]
        res = planewave_mc(a0, a1, m, args.samples, args.seed, exact_pt)
        exact = evaluate(p, exact_pt)
        within = all(
            abs(res.estimate.coefficient(mask) - float(exact.coefficient(mask))) <= 3 * res.stderr.coefficient(mask) + 1e-12
            for mask in set(res.estimate.terms) | set(exact.terms)
        )
        ok = within
        out["mc"] = {**res.to_json(), "exact": exact.to_json(), "within_3_stderr": within}
    _emit(out)
    return 0 if ok else 1


def cmd_examples(args) -> int:
    point = [float(c) for c in args.point]
    if len(point) != args.m + 1:
        raise UsageError(f"--point needs {args.m + 1} coordinates")
    whiches = EXAMPLES if args.which == "all" else (args.which,)
    rows = []
    ok = True
    for which in whiches:
        res = resolve_normalization(which, m=args.m, n=args.n) if args.m == 3 else None
        norm = args.normalization
        if norm == "auto":
            norm = "consistent" if res is None or res["resolved"] in ("consistent", "both", "neither") else res["resolved"]
        a0, a1 = initial_data(which, 2 * args.n, norm)
        approx = hgck_float(a0, a1, args.m, point)
        exact = closed_form(which, point, args.m)
        r = example_residual(which, point, args.n, args.m, norm)
        row = {
            "example": which,
            "n": args.n,
            "normalization": norm,
            "closed_form": exact.to_dict(),
            "series": approx.to_dict(),
            "residual": r,
        }
        if res is not None:
            row["resolution"] = res
        if args.tol is not None:
            row["within_tolerance"] = r <= args.tol
            ok = ok and r <= args.tol
        rows.append(row)
    _emit({"m": args.m, "point": point, "examples": rows})
    return 0 if ok else 1


OPS = {op.value: op for op in Op}


def cmd_eval(args) -> int:
    p = parse_polynomial(args.expr, args.m)
    if args.op:
        for name in args.op:
            if name.startswith("Laplacian^"):
                p = apply_operator(LaplacianPower(int(name.split("^", 1)[1])), p)
            elif name in OPS:
                p = apply_operator(OPS[name], p)
            else:
                raise UsageError(f"--op: unknown operator {name!r}; choose from {sorted(OPS)} or Laplacian^n")
    out = {"m": args.m, "polynomial": p.to_json(), "text": format_polynomial(p)}
    if args.point is not None:
        if len(args.point) != args.m + 1:
            raise UsageError(f"--point needs {args.m + 1} coordinates")
        out["value"] = evaluate(p, [_exact(c) for c in args.point]).to_json()
    _emit(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliffck", description="Exact Clifford-analysis extensions and identity checks.")
    ap.add_argument("--version", action="version", version=f"cliffck {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("family", help="generate Q, P, H0 or H1 polynomials")
    f.add_argument("--kind", choices=FAMILY_KINDS, required=True)
    f.add_argument("--m", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--format", choices=("json", "csv"), default="json")
    f.set_defaults(func=cmd_family)

    c = sub.add_parser("ck", help="Cauchy-Kovalevskaya extensions")
    csub = c.add_subparsers(dest="action", required=True)
    ce = csub.add_parser("extend", help="extend initial data off the real line")
    ce.add_argument("--kind", choices=("hgck", "gck"), default="hgck")
    ce.add_argument("--m", type=int, required=True)
    ce.add_argument("--a0", required=True, help="polynomial in x0 (f0 for gck)")
    ce.add_argument("--a1", default=None, help="polynomial in x0 (hgck only)")
    ce.add_argument("--format", choices=("json", "text"), default="json")
    ce.set_defaults(func=cmd_ck)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--m", type=_int_list, default=None, help="comma-separated dimensions (suite defaults otherwise)")
    v.add_argument("--kmax", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--report", choices=("json",), default="json")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    v.add_argument("--threads", type=int, default=None, help="work-pool size (default CK_THREADS)")
    v.add_argument("--tol", type=_tolerance, action="append", help="override a tolerance, NAME=VALUE")
    v.add_argument("--mutate", type=_mutation, action="append", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("planewave", help="plane-wave reconstruction and Monte-Carlo witness")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a0", default="0")
    p.add_argument("--a1", default="0")
    p.add_argument("--mc", action="store_true")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--point", type=_point, default=None)
    p.set_defaults(func=cmd_planewave)

    e = sub.add_parser("examples", help="closed-form extensions versus truncated series")
    e.add_argument("--which", choices=EXAMPLES + ("all",), required=True)
    e.add_argument("--m", type=int, default=3)
    e.add_argument("--point", type=_point, required=True)
    e.add_argument("--n", type=int, default=25, help="initial data truncated at degree 2n")
    e.add_argument("--normalization", choices=NORMALIZATIONS + ("auto",), default="auto")
    e.add_argument("--tol", type=float, default=None)
    e.set_defaults(func=cmd_examples)

    ev = sub.add_parser("eval", help="parse, apply operators, evaluate")
    ev.add_argument("--m", type=int, required=True)
    ev.add_argument("--expr", required=True)
    ev.add_argument("--op", action="append", help="Dx0, Dirac, CR, CRbar, Laplacian or Laplacian^n (repeatable)")
    ev.add_argument("--point", type=_point, default=None)
    ev.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        ap.error(str(exc))
    except CliffckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
