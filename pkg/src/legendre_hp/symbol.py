"""Symbol curves sum_k (-1)^k S_k(x) y^k of finite-order operators, the
positive-slope line test, the quartic (b, c) family, breaking-point bisection
and region scans.

Line tests are falsifiers over a finite grid of lines; a pass means no
sampled line broke the criterion.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from math import gcd
from typing import Iterable, Sequence

from . import _parallel
from .diffop import DiffOperator, EigenSequence, coeff_at_zero_direct, operator_from_h
from .errors import InconsistencyError
from .hyperbolicity import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    VerdictReport,
    classical_ms_necessary,
    ms_empirical_check,
)
from .poly import (
    BiPoly,
    UniPoly,
    _int_real_root_count,
    _int_squarefree,
    _primitive,
    as_fraction,
    discriminant,
    isolate_real_roots,
    real_root_count_with_multiplicity,
    squarefree_part,
)

ALL_REAL = "all_real"
LITERAL = "literal"
BOUNDARY = "boundary-suspect"

Line = tuple[Fraction, Fraction]


def standard_lines() -> list[Line]:
    """s in {j/10 : 1..50}, t in {j/10 : -50..50}; slope-major order."""
    return [(Fraction(i, 10), Fraction(j, 10)) for i in range(1, 51) for j in range(-50, 51)]


def coarse_lines() -> list[Line]:
    return [(s, Fraction(t)) for s in (Fraction(1, 2), Fraction(1), Fraction(2)) for t in range(-2, 3)]


def line_grid(s_values: Iterable, t_values: Iterable) -> list[Line]:
    return [(as_fraction(s), as_fraction(t)) for s in s_values for t in t_values]


@dataclass(frozen=True)
class SymbolCurve:
    poly: BiPoly
    order: int
    source: str = ""

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "order": self.order, "source": self.source}

    @classmethod
    def from_json(cls, data: dict) -> "SymbolCurve":
        return cls(BiPoly.from_json(data["poly"]), int(data["order"]), data.get("source", ""))


def symbol_of(op: DiffOperator, vars=("x", "y"), source: str = "") -> SymbolCurve:
    """sum_k (-1)^k S_k(x) y^k, i.e. T[exp(-xy)] with the exponential divided out."""
    coeffs = [c * (-1) ** k for k, c in enumerate(op.coeffs)]
    order = op.order if op.coeffs else 0
    return SymbolCurve(BiPoly.from_y_coeffs(coeffs, vars), order, source or repr(op))


def symbol_series_at_x0(seq: EigenSequence, M: int) -> list[Fraction]:
    """Coefficients (-1)^k S_k(0) of G_T(0, y), k = 0..M."""
    out = [(-1) ** k * coeff_at_zero_direct(seq, k) for k in range(M + 1)]
    if any(out[k] for k in range(1, M + 1, 2)):
        raise InconsistencyError("odd-index coefficients at zero did not vanish")
    return out


def line_restriction_of_poly(poly: BiPoly, s, t) -> UniPoly:
    s, t = as_fraction(s), as_fraction(t)
    return poly.substitute_y(UniPoly((t, s), poly.vars[0]))


def line_restriction(curve: SymbolCurve, s, t) -> UniPoly:
    """F(x) = G(x, s x + t) for a line of positive slope."""
    s = as_fraction(s)
    if s <= 0:
        raise ValueError("line slope must be positive")
    return line_restriction_of_poly(curve.poly, s, t)


# --- integer fast path ------------------------------------------------------


def _integer_y_coeffs(poly: BiPoly) -> list[list[int]]:
    """The y-coefficient polynomials, scaled by one positive common denominator."""
    rows = poly.y_coeffs()
    den = 1
    for r in rows:
        for c in r.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
    return [[int(c * den) for c in r.coeffs] for r in rows]


def _int_restriction(cy: list[list[int]], s: Fraction, t: Fraction) -> list[int]:
    """d^n F(x) with d the common denominator of s and t; a positive multiple of F."""
    d = s.denominator * t.denominator // gcd(s.denominator, t.denominator)
    a, e = int(s * d), int(t * d)
    n = len(cy) - 1
    acc = list(cy[n])
    dpow = 1
    for k in range(n - 1, -1, -1):
        dpow *= d
        # acc <- acc * (a x + e) + cy[k] * d^(n-k)
        nxt = [0] * (max(len(acc) + 1, len(cy[k])))
        for i, c in enumerate(acc):
            nxt[i] += c * e
            nxt[i + 1] += c * a
        for i, c in enumerate(cy[k]):
            nxt[i] += c * dpow
        while nxt and nxt[-1] == 0:
            nxt.pop()
        acc = nxt
    return acc


def _line_status(cy: list[list[int]], order: int, criterion: str, line: Line) -> str:
    F = _int_restriction(cy, *line)
    if not F:
        return BOUNDARY
    F = _primitive(F)
    deg = len(F) - 1
    if criterion == ALL_REAL:
        if deg <= 1:
            return PASS
        sqf = _int_squarefree(F)
        return PASS if _int_real_root_count(sqf) == len(sqf) - 1 else FAIL
    if criterion == LITERAL:
        count = real_root_count_with_multiplicity(UniPoly(F)) if deg >= 1 else 0
        return PASS if count == order else FAIL
    raise ValueError(f"unknown criterion {criterion!r}")


def _scan_lines(cy, order, criterion, lines: Sequence[Line]) -> int | None:
    """Index of the first line that does not pass."""
    for i, line in enumerate(lines):
        if _line_status(cy, order, criterion, line) != PASS:
            return i
    return None


def line_test(curve: SymbolCurve, lines: Sequence[Line] | None = None, criterion: str = ALL_REAL) -> VerdictReport:
    """Check every sampled line of positive slope against the intersection criterion.

    ``all_real`` (default): each restriction has only real roots.
    ``literal``: each restriction has exactly ``order`` real roots with multiplicity.
    """
    lines = standard_lines() if lines is None else [(as_fraction(s), as_fraction(t)) for s, t in lines]
    if any(s <= 0 for s, _ in lines):
        raise ValueError("all slopes must be positive")
    params = {"curve": curve.poly, "order": curve.order, "criterion": criterion, "n_lines": len(lines)}
    if curve.poly.is_zero():
        return VerdictReport(INCONCLUSIVE, "line_test", params=params, note="zero curve")
    cy = _integer_y_coeffs(curve.poly)
    hit = _parallel.first_hit(partial(_scan_lines, cy, curve.order, criterion), lines)
    if hit is None:
        return VerdictReport(PASS, "line_test", params=params)
    s, t = lines[hit]
    status = _line_status(cy, curve.order, criterion, (s, t))
    F = line_restriction(curve, s, t)
    if status == BOUNDARY:
        # Keep looking for a genuine failure further along.
        rest = _scan_for_fail(cy, curve.order, criterion, lines[hit + 1 :])
        if rest is None:
            return VerdictReport(INCONCLUSIVE, "line_test", params=params,
                                 note=f"restriction vanishes identically on line s={s}, t={t}")
        hit = hit + 1 + rest
        s, t = lines[hit]
        F = line_restriction(curve, s, t)
    from .hyperbolicity import z_c

    witness = {"line_index": hit, "s": s, "t": t, "restriction": F, "z_c": z_c(F)}
    return VerdictReport(FAIL, "line_test", witness, params)


def _scan_for_fail(cy, order, criterion, lines) -> int | None:
    for i, line in enumerate(lines):
        if _line_status(cy, order, criterion, line) == FAIL:
            return i
    return None


# --- the quartic family -----------------------------------------------------


def quartic_curve_expanded(b, c) -> BiPoly:
    """14x^2w^2 - 8x^3w^3 + x^4w^4 - 2w^4x^2 - 6w^2 + 8xw^3 + w^4 - 4xw
    + b x^2w^2 - b w^2 - 2b xw + c, the expanded symbol in (x, w)."""
    b, c = as_fraction(b), as_fraction(c)
    terms = {}

    def add(i, j, v):
        terms[(i, j)] = terms.get((i, j), 0) + v

    add(2, 2, 14)
    add(3, 3, -8)
    add(4, 4, 1)
    add(2, 4, -2)
    add(0, 2, -6)
    add(1, 3, 8)
    add(0, 4, 1)
    add(1, 1, -4)
    add(2, 2, b)
    add(0, 2, -b)
    add(1, 1, -2 * b)
    add(0, 0, c)
    return BiPoly(terms, ("x", "w"))


def quartic_symbol(b, c) -> SymbolCurve:
    """Symbol of delta^2 + b delta + c, i.e. the sequence (k^2+k)^2 + b(k^2+k) + c."""
    b, c = as_fraction(b), as_fraction(c)
    expanded = quartic_curve_expanded(b, c)
    derived = symbol_of(operator_from_h(UniPoly((c, b, 1)))).poly.rename(("x", "w"))
    if expanded != derived:
        raise InconsistencyError(f"quartic symbol mismatch at b={b}, c={c}")
    return SymbolCurve(expanded, 4, f"delta^2 + ({b}) delta + ({c})")


@dataclass
class BreakingPoint:
    c: Fraction
    b_lo: Fraction
    b_hi: Fraction
    found: bool
    n_lines: int
    failing_line: Line | None = None
    restriction_hi: UniPoly | None = None
    disc_lo: Fraction | None = None
    disc_hi: Fraction | None = None
    note: str = ""

    @property
    def disc_sign_change(self) -> bool | None:
        if self.disc_lo is None or self.disc_hi is None:
            return None
        return (self.disc_lo > 0) != (self.disc_hi > 0)

    def to_json(self) -> dict:
        f = lambda q: None if q is None else f"{q.numerator}/{q.denominator}"  # noqa: E731
        return {
            "c": f(self.c),
            "b_lo": f(self.b_lo),
            "b_hi": f(self.b_hi),
            "b_lo_decimal": f"{float(self.b_lo):.12f}",
            "b_hi_decimal": f"{float(self.b_hi):.12f}",
            "found": self.found,
            "n_lines": self.n_lines,
            "failing_line": None if self.failing_line is None else [f(v) for v in self.failing_line],
            "restriction_at_b_hi": None if self.restriction_hi is None else self.restriction_hi.to_json(),
            "discriminant_at_b_lo": f(self.disc_lo),
            "discriminant_at_b_hi": f(self.disc_hi),
            "discriminant_sign_change": self.disc_sign_change,
            "note": self.note,
        }


def breaking_point(c=0, lines: Sequence[Line] | None = None, tolerance=Fraction(1, 1000),
                   b_range=(2, 7)) -> BreakingPoint:
    """Bisect b on the pass/fail status of line_test(quartic_symbol(b, c))."""
    c = as_fraction(c)
    tolerance = as_fraction(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    lines = standard_lines() if lines is None else list(lines)
    lo, hi = (as_fraction(v) for v in b_range)
    if hi - lo <= tolerance:
        return BreakingPoint(c, lo, hi, True, len(lines), note="tolerance covers the whole range; endpoints not tested")

    def passes(b):
        return line_test(quartic_symbol(b, c), lines).passed

    if not passes(lo) or passes(hi):
        return BreakingPoint(c, lo, hi, False, len(lines), note="no pass-to-fail transition on the range")
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if passes(mid):
            lo = mid
        else:
            hi = mid
    report = line_test(quartic_symbol(hi, c), lines)
    s, t = report.witness["s"], report.witness["t"]
    F_hi = line_restriction(quartic_symbol(hi, c), s, t)
    F_lo = line_restriction(quartic_symbol(lo, c), s, t)
    return BreakingPoint(c, lo, hi, True, len(lines), (s, t), F_hi, discriminant(F_lo), discriminant(F_hi))


def quintic_boundary(c) -> UniPoly:
    """b^5 - (c+15)b^4 + 4(c+12)b^3 + 8(c^2+24c+19)b^2 - 16(10c^2+101c+33)b - 16(c^3-50c^2-185c+63)."""
    c = as_fraction(c)
    return UniPoly((
        -16 * (c**3 - 50 * c**2 - 185 * c + 63),
        -16 * (10 * c**2 + 101 * c + 33),
        8 * (c**2 + 24 * c + 19),
        4 * (c + 12),
        -(c + 15),
        1,
    ), "b")


def parabola_boundary(b) -> Fraction:
    """c = (b+2)^2 / 8 - 4."""
    b = as_fraction(b)
    return (b + 2) ** 2 / 8 - 4


@dataclass
class RegionScan:
    b_values: list[Fraction]
    c_values: list[Fraction]
    lines: list[Line]
    cells: list[dict] = field(default_factory=list)

    def verdict(self, b, c) -> str:
        b, c = as_fraction(b), as_fraction(c)
        for cell in self.cells:
            if cell["b"] == b and cell["c"] == c:
                return cell["verdict"]
        raise KeyError((b, c))

    def row(self, c) -> list[dict]:
        c = as_fraction(c)
        return [cell for cell in self.cells if cell["c"] == c]

    def transitions(self, c) -> list[tuple[Fraction, Fraction]]:
        """Adjacent (b_pass, b_fail) pairs along the row at c."""
        row = sorted(self.row(c), key=lambda cell: cell["b"])
        return [(a["b"], z["b"]) for a, z in zip(row, row[1:]) if a["verdict"] == PASS and z["verdict"] == FAIL]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["b", "c", "verdict", "first_fail_s", "first_fail_t",
                    "b_exact", "c_exact", "first_fail_s_exact", "first_fail_t_exact",
                    "parabola_side", "quintic_sign"])
        dec = lambda q: "" if q is None else f"{float(q):.12f}"  # noqa: E731
        ex = lambda q: "" if q is None else f"{q.numerator}/{q.denominator}"  # noqa: E731
        for cell in self.cells:
            s, t = cell["first_fail"] or (None, None)
            w.writerow([dec(cell["b"]), dec(cell["c"]), cell["verdict"], dec(s), dec(t),
                        ex(cell["b"]), ex(cell["c"]), ex(s), ex(t), cell["parabola_side"], cell["quintic_sign"]])
        return buf.getvalue()

    def to_json(self) -> dict:
        ex = lambda q: f"{q.numerator}/{q.denominator}"  # noqa: E731
        return {
            "b_values": [ex(b) for b in self.b_values],
            "c_values": [ex(c) for c in self.c_values],
            "n_lines": len(self.lines),
            "cells": [
                {
                    "b": ex(cell["b"]),
                    "c": ex(cell["c"]),
                    "verdict": cell["verdict"],
                    "first_fail": None if cell["first_fail"] is None else [ex(v) for v in cell["first_fail"]],
                    "parabola_side": cell["parabola_side"],
                    "quintic_sign": cell["quintic_sign"],
                }
                for cell in self.cells
            ],
        }


def _frange(lo, hi, step) -> list[Fraction]:
    lo, hi, step = as_fraction(lo), as_fraction(hi), as_fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    out = []
    v = lo
    while v <= hi:
        out.append(v)
        v += step
    return out


def _classify_cell(lines: Sequence[Line], bc: tuple[Fraction, Fraction]) -> dict:
    b, c = bc
    report = line_test(quartic_symbol(b, c), lines)
    if report.passed:
        verdict, first_fail = PASS, None
    elif report.failed:
        verdict, first_fail = FAIL, (report.witness["s"], report.witness["t"])
    else:
        verdict, first_fail = BOUNDARY, None
    par = parabola_boundary(b)
    q = quintic_boundary(c)(b)
    return {
        "b": b,
        "c": c,
        "verdict": verdict,
        "first_fail": first_fail,
        "parabola_side": "above" if c > par else ("on" if c == par else "below"),
        "quintic_sign": (q > 0) - (q < 0),
    }


def _classify_chunk(lines, cells):
    return [_classify_cell(lines, bc) for bc in cells]


def region_scan(b_range=(2, 7), c_range=(0, 0), steps=(Fraction(1, 4), Fraction(1, 4)),
                lines: Sequence[Line] | None = None) -> RegionScan:
    """Line-test every (b, c) cell of a rectangular lattice; cells ordered c-major, then b."""
    lines = standard_lines() if lines is None else list(lines)
    bs = _frange(b_range[0], b_range[1], steps[0])
    cs = _frange(c_range[0], c_range[1], steps[1])
    grid = [(b, c) for c in cs for b in bs]
    # Parallelise across cells; each cell scans its lines sequentially.
    chunks = _parallel.ordered_map(partial(_classify_chunk, lines), grid, chunks_per_worker=2)
    cells = [cell for chunk in chunks for cell in chunk]
    return RegionScan(bs, cs, lines, cells)


def quintic_consistency(scan: RegionScan, c=0) -> dict:
    """Compare the scan's pass-to-fail column on row c with real roots of the quintic boundary."""
    c = as_fraction(c)
    step = scan.b_values[1] - scan.b_values[0] if len(scan.b_values) > 1 else Fraction(0)
    transitions = scan.transitions(c)
    iso = isolate_real_roots(quintic_boundary(c), Fraction(1, 10**6))
    sqf = squarefree_part(quintic_boundary(c))
    roots = [r for r, _ in iso.exact_roots]
    for lo, hi, _ in iso.intervals:
        # Snap to a nearby small-denominator rational when it is an exact root.
        guess = ((lo + hi) / 2).limit_denominator(1000)
        roots.append(guess if lo < guess <= hi and sqf(guess) == 0 else (lo + hi) / 2)
    roots.sort()

    def distance(pair, r):
        a, z = pair
        if a <= r <= z:
            return Fraction(0)
        return min(abs(r - a), abs(r - z))

    best = None
    for pair in transitions:
        for r in roots:
            d = distance(pair, r)
            if best is None or d < best[0]:
                best = (d, pair, r)
    return {
        "c": c,
        "grid_step": step,
        "transitions": transitions,
        "quintic_real_roots": roots,
        "closest": None if best is None else {"distance": best[0], "transition": best[1], "root": best[2]},
        "within_one_cell": best is not None and best[0] <= step,
    }


# --- the delta^(n-k) (delta^k - 2^k) family ---------------------------------


def power_shift_h(n: int, k: int) -> UniPoly:
    if not (1 <= k <= n - 1):
        raise ValueError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    return UniPoly.monomial(n - k) * (UniPoly.monomial(k) - 2**k)


def power_shift_operator(n: int, k: int) -> DiffOperator:
    """delta^(n-k) (delta^k - 2^k)."""
    return operator_from_h(power_shift_h(n, k))


def power_shift_battery(n: int, k: int, max_degree: int = 6, root_grid=range(-3, 4),
                        lines: Sequence[Line] | None = None) -> dict:
    """Empirical evidence only: falsification attempts, never a proof of HP."""
    h = power_shift_h(n, k)
    op = operator_from_h(h)
    seq = EigenSequence.from_h(h)
    curve = symbol_of(op, source=f"delta^{n - k}(delta^{k} - {2**k})")
    return {
        "n": n,
        "k": k,
        "h": h,
        "order": op.order,
        "operator": op,
        "ms_empirical": ms_empirical_check(seq, max_degree, root_grid),
        "classical_necessary": classical_ms_necessary(seq),
        "line_test": line_test(curve, lines),
    }


# --- sign of A in delta(delta +- A) -------------------------------------------


SHIFT_SAMPLES = (Fraction(-4), Fraction(-3), Fraction(-2), Fraction(0), Fraction(2), Fraction(3),
                 Fraction(37, 10), Fraction(4))


def shift_sign_report(A_values: Iterable = SHIFT_SAMPLES, lines: Sequence[Line] | None = None) -> dict:
    """Line-test delta(delta + A) and delta(delta - A) side by side.

    The candidate range -2 <= A <= 4*sqrt(2) - 2 fits at most one of the two
    readings; ``consistent`` lists those that agree with it on every sample.
    """
    lower = Fraction(-2)
    rows = []
    for A in (as_fraction(a) for a in A_values):
        plus = line_test(quartic_symbol(A, 0), lines).verdict
        minus = line_test(quartic_symbol(-A, 0), lines).verdict
        # inside the candidate range iff -2 <= A and A^2 + 4A - 28 <= 0 (A <= 4 sqrt 2 - 2)
        inside = A >= lower and (A < 0 or A * A + 4 * A - 28 <= 0)
        rows.append({"A": A, "inside_candidate_range": inside, "delta_plus_A": plus, "delta_minus_A": minus})
    consistent = [
        name for name in ("delta_plus_A", "delta_minus_A")
        if all((r[name] == PASS) == r["inside_candidate_range"] for r in rows)
    ]
    return {"rows": rows, "consistent": consistent}
