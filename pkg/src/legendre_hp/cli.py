"""``legendre-hp`` command line front end.

Every command prints one document (JSON by default) with a small version
header. Rational arguments accept ``p/q`` or finite decimals, both parsed
exactly. Exit codes: 0 success, 2 usage or precondition error, 3 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import __version__
from .combinatorics import sigma_closed, sigma_direct
from .diffop import (
    EigenSequence,
    capital_P,
    decompose_even_odd,
    delta,
    operator_from_h,
    s2m0_routes,
)
from .errors import InconsistencyError
from .hyperbolicity import (
    FAIL,
    PASS,
    _jsonable,
    bates_yoshida_check,
    calibrate_proper_position,
    classical_ms_necessary,
    eventual_sign,
    fall_factor,
    fall_operator,
    in_fall_range,
    ms_empirical_check,
    noodd_test,
    reduced_inequality,
)
from .poly import UniPoly, isolate_real_roots
from .selftest import run_selftest
from .symbol import (
    ALL_REAL,
    LITERAL,
    breaking_point,
    coarse_lines,
    power_shift_battery,
    line_test,
    quartic_symbol,
    quintic_consistency,
    region_scan,
    shift_sign_report,
    standard_lines,
    symbol_of,
)

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 2, 3

# Treat "-1/2", "-4:4" and "-0.25" as values, not option flags.
_NEGATIVE_VALUE = re.compile(r"^-(\d|\.\d)[\d./:,]*$")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_VALUE
        self._has_negative_number_optionals = []


# --- argument parsing helpers ------------------------------------------------


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def interval(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) == 1:
        v = rational(parts[0])
        return v, v
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    lo, hi = rational(parts[0]), rational(parts[1])
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty interval {text!r}")
    return lo, hi


def step_pair(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected sb,sc, got {text!r}")
    sb, sc = rational(parts[0]), rational(parts[1])
    if sb <= 0 or sc <= 0:
        raise argparse.ArgumentTypeError("steps must be positive")
    return sb, sc


def int_grid(text: str) -> list[Fraction]:
    lo, hi = interval(text)
    if lo.denominator != 1 or hi.denominator != 1:
        raise argparse.ArgumentTypeError("root grid bounds must be integers")
    return [Fraction(k) for k in range(int(lo), int(hi) + 1)]


def lines_option(text: str):
    if text == "standard":
        return standard_lines()
    if text == "coarse":
        return coarse_lines()
    raise argparse.ArgumentTypeError("lines must be 'standard' or 'coarse'")


def _poly_arg(coeffs: list[Fraction]) -> UniPoly:
    p = UniPoly(coeffs)
    if p.is_zero():
        raise ValueError("polynomial must be nonzero")
    return p


# --- output ------------------------------------------------------------------


def _header(command: str) -> dict:
    return {"tool": "legendre-hp", "version": __version__, "command": command}


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _rows_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in row.items()})
    return buf.getvalue()


def _emit(args, result: dict, csv_text: str | None = None) -> None:
    if args.format == "csv":
        if csv_text is None:
            raise ValueError(f"command {args.command!r} has no CSV output")
        out = csv_text
    elif args.format == "text":
        out = "\n".join(_text({**_header(args.command), **result})) + "\n"
    else:
        out = json.dumps({**_header(args.command), "result": result}, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# --- commands ----------------------------------------------------------------


def cmd_sigma(args) -> int:
    direct = sigma_direct(args.m, args.n)
    result = {"m": args.m, "n": args.n, "sigma_direct": direct}
    if args.both:
        if 2 * args.m >= args.n:
            closed = sigma_closed(args.m, args.n)
            result["sigma_closed"] = closed
            result["flag"] = "equal" if closed == direct else "MISMATCH"
            if closed != direct:
                _emit(args, _jsonable(result))
                raise InconsistencyError("sigma closed form disagrees with the direct sum")
        else:
            result["sigma_closed"] = None
            result["flag"] = "closed form not applicable (2m < n)"
    _emit(args, _jsonable(result))
    return EXIT_OK


def cmd_s2m0(args) -> int:
    p = _poly_arg(args.coeffs)
    seq = EigenSequence(p)
    rows = []
    for m in range(args.m_max + 1):
        r = s2m0_routes(seq, m)
        rows.append({
            "m": m,
            "direct": r.direct,
            "closed": r.closed,
            "agree": r.agree,
        })
        if r.agree is False:
            raise InconsistencyError(f"S_2m(0) routes disagree at m={m}")
    h, q = decompose_even_odd(p)
    P = capital_P(q) if not q.is_zero() else None
    noodd = noodd_test(p)
    result = {
        "p": p,
        "h": h,
        "q": q,
        "P_of_p": capital_P(seq),
        "eventual_sign_P_of_p": eventual_sign(capital_P(seq)),
        "P_of_q": P,
        "eventual_sign": None if P is None else eventual_sign(P),
        "rows": rows,
        "noodd": noodd.to_json(),
        "verdict": "not a Legendre MS" if noodd.failed else "not excluded by the odd-part test",
    }
    _emit(args, _jsonable(result), _rows_csv(_jsonable(rows)))
    return EXIT_OK


def cmd_check(args) -> int:
    p = _poly_arg(args.coeffs)
    seq = EigenSequence(p)
    h, q = decompose_even_odd(p)
    reports = [noodd_test(p), classical_ms_necessary(seq, args.jensen_n)]
    reports.append(ms_empirical_check(seq, args.corpus_degree, args.grid))
    failed = [r.test for r in reports if r.failed]
    if failed:
        verdict = FAIL
    elif all(r.passed for r in reports):
        verdict = PASS
    else:
        verdict = "inconclusive"
    result = {
        "p": p,
        "decomposition": {"h": h, "q": q, "odd_part_zero": q.is_zero()},
        "verdict": verdict,
        "failed_tests": failed,
        "reports": [r.to_json() for r in reports],
        "note": "pass means no obstruction found, not a proof",
    }
    _emit(args, _jsonable(result))
    return EXIT_OK


def _point_cloud(curve, x_range, x_step, precision) -> list[tuple[float, float]]:
    points = []
    lo, hi = x_range
    x = lo
    while x <= hi:
        ys = _y_slice(curve.poly, x)
        if not ys.is_zero() and ys.degree >= 1:
            iso = isolate_real_roots(ys, precision)
            for a, b, _ in iso.intervals:
                points.append((float(x), float((a + b) / 2)))
            for r, _ in iso.exact_roots:
                points.append((float(x), float(r)))
        x += x_step
    points.sort()
    return points


def _y_slice(poly, x) -> UniPoly:
    """The curve restricted to a vertical line, as a polynomial in y."""
    return UniPoly([c(x) for c in poly.y_coeffs()], "y")


def cmd_symbol(args) -> int:
    if args.from_h is not None:
        h = _poly_arg(args.from_h)
        curve = symbol_of(operator_from_h(h), source=f"h(delta), h = {h}")
    else:
        if args.b is None or args.c is None:
            raise ValueError("give --b and --c, or --from-h")
        curve = quartic_symbol(args.b, args.c)
    result = {"curve": curve.to_json()}
    if args.line_test:
        result["line_test"] = line_test(curve, args.lines, args.criterion).to_json()
    points = _point_cloud(curve, args.x_range, args.x_step, Fraction(1, 10**4))
    csv_text = "x,y\n" + "".join(f"{x:.6f},{y:.6f}\n" for x, y in points)
    if args.points:
        with open(args.points, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
        result["points_file"] = args.points
    result["n_points"] = len(points)
    _emit(args, _jsonable(result), csv_text)
    return EXIT_OK


def cmd_break(args) -> int:
    bp = breaking_point(args.c, args.lines, args.tol, args.b_range)
    _emit(args, bp.to_json())
    return EXIT_OK


def cmd_scan(args) -> int:
    scan = region_scan(args.b, args.c, args.steps, args.lines)
    result = scan.to_json()
    if args.c[0] <= 0 <= args.c[1] and Fraction(0) in scan.c_values:
        result["quintic_consistency_c0"] = _jsonable(quintic_consistency(scan, 0))
    _emit(args, result, scan.to_csv())
    return EXIT_OK


def cmd_fall(args) -> int:
    op = fall_operator(args.n, args.N, args.A)
    factors = []
    for a in op.A:
        Q2, Q1, Q0 = fall_factor(args.n, a)
        factors.append({
            "A": a,
            "Q2": Q2,
            "Q1": Q1,
            "Q0": Q0,
            "in_range": in_fall_range(args.n, a),
            "bates_yoshida": bates_yoshida_check(Q2, Q1, Q0),
            "reduced_inequality": reduced_inequality(args.n, a),
        })
    result = {**op.to_json(), "interval": [-(args.n + 1), args.n * (args.n + 1)], "factors": factors}
    _emit(args, _jsonable(result))
    return EXIT_OK


def cmd_conj2(args) -> int:
    battery = power_shift_battery(args.n, args.k, args.corpus_degree, args.grid, args.lines)
    result = {
        k: (v.to_json() if hasattr(v, "to_json") else v) for k, v in battery.items()
    }
    result["note"] = "empirical evidence only; a pass is not a proof of hyperbolicity preservation"
    _emit(args, _jsonable(result))
    return EXIT_OK


def cmd_calibrate(args) -> int:
    report = calibrate_proper_position()
    lines = args.lines
    delta_rep = line_test(symbol_of(delta()), lines, ALL_REAL)
    quartic_rep = line_test(quartic_symbol(4, 0), lines, ALL_REAL)
    literal_delta = line_test(symbol_of(delta()), lines, LITERAL)
    report["line_criterion"] = {
        "criterion_in_use": ALL_REAL,
        "delta_all_real": delta_rep.verdict,
        "quartic_4_0_all_real": quartic_rep.verdict,
        "delta_literal": literal_delta.verdict,
        "ok": delta_rep.passed and quartic_rep.failed,
    }
    report["shift_sign"] = shift_sign_report(lines=lines)
    _emit(args, _jsonable(report))
    if not (report["ok"] and report["line_criterion"]["ok"]):
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_selftest()
    ok = all(r["ok"] for r in results)
    if args.format == "json":
        _emit(args, {"ok": ok, "checks": results})
    else:
        out = "".join(f"{'PASS' if r['ok'] else 'FAIL'}  {r['check']}  ({r['seconds']}s) {r['error']}\n"
                      for r in results)
        out += f"{'all checks passed' if ok else 'SOME CHECKS FAILED'}\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    return EXIT_OK if ok else EXIT_INCONSISTENT


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="legendre-hp", description="Exact tools for Legendre multiplier sequences.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add = sub.add_parser

    def add_parser(name, **kwargs):
        p = add(name, **kwargs)
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        return p

    sub.add_parser = add_parser

    p = sub.add_parser("sigma", help="sum_k (-1)^k C(2m,k) k^n, direct and closed form")
    p.add_argument("m", type=nonneg_int)
    p.add_argument("n", type=nonneg_int)
    p.add_argument("--both", action="store_true", help="also evaluate the closed form")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("s2m0", help="table of S_2m(0) for gamma_k = p(k)")
    p.add_argument("coeffs", nargs="+", type=rational, help="coefficients of p, constant term first")
    p.add_argument("--m-max", type=nonneg_int, default=10)
    p.set_defaults(func=cmd_s2m0)

    p = sub.add_parser("check", help="run every multiplier-sequence test on p(k)")
    p.add_argument("coeffs", nargs="+", type=rational)
    p.add_argument("--corpus-degree", type=nonneg_int, default=6)
    p.add_argument("--grid", type=int_grid, default=int_grid("-3:3"), help="integer root grid lo:hi")
    p.add_argument("--jensen-n", type=nonneg_int, default=12)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("symbol", help="symbol curve of delta^2 + b delta + c or of h(delta)")
    p.add_argument("--b", type=rational)
    p.add_argument("--c", type=rational)
    p.add_argument("--from-h", nargs="+", type=rational, help="coefficients of h, constant term first")
    p.add_argument("--points", help="also write the point-cloud CSV here")
    p.add_argument("--x-range", type=interval, default=interval("-3:3"))
    p.add_argument("--x-step", type=rational, default=Fraction(1, 20))
    p.add_argument("--line-test", action="store_true", help="also run the line test")
    p.add_argument("--lines", type=lines_option, default=None)
    p.add_argument("--criterion", choices=(ALL_REAL, LITERAL), default=ALL_REAL)
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("break", help="bisect the breaking point in b for fixed c")
    p.add_argument("--c", type=rational, default=Fraction(0))
    p.add_argument("--tol", type=rational, default=Fraction(1, 1000))
    p.add_argument("--b-range", type=interval, default=interval("2:7"))
    p.add_argument("--lines", type=lines_option, default=None)
    p.set_defaults(func=cmd_break)

    p = sub.add_parser("scan", help="line-test a (b, c) lattice")
    p.add_argument("--b", type=interval, default=interval("2:7"))
    p.add_argument("--c", type=interval, default=interval("0:0"))
    p.add_argument("--steps", type=step_pair, default=step_pair("1/4,1/4"))
    p.add_argument("--lines", type=lines_option, default=None)
    p.set_defaults(func=cmd_scan, format="csv")

    p = sub.add_parser("fall", help="delta(delta-2)...(delta-(n-1)n) prod (delta - A_j)")
    p.add_argument("n", type=nonneg_int)
    p.add_argument("N", type=nonneg_int)
    p.add_argument("A", nargs="+", type=rational)
    p.set_defaults(func=cmd_fall)

    p = sub.add_parser("conj2", help="evidence battery for delta^(n-k)(delta^k - 2^k)")
    p.add_argument("n", type=nonneg_int)
    p.add_argument("k", type=nonneg_int)
    p.add_argument("--corpus-degree", type=nonneg_int, default=6)
    p.add_argument("--grid", type=int_grid, default=int_grid("-3:3"))
    p.add_argument("--lines", type=lines_option, default=None)
    p.set_defaults(func=cmd_conj2)

    p = sub.add_parser("calibrate", help="proper-position and line-criterion calibration")
    p.add_argument("--lines", type=lines_option, default=None)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("selftest", help="run the invariant battery")
    p.set_defaults(func=cmd_selftest, format="text")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InconsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
