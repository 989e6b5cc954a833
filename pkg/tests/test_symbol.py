import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from legendre_hp.diffop import EigenSequence, delta, operator_from_h
from legendre_hp.hyperbolicity import verify_witness, z_c
from legendre_hp.poly import BiPoly, UniPoly, isolate_real_roots
from legendre_hp.symbol import (
    ALL_REAL,
    LITERAL,
    SymbolCurve,
    breaking_point,
    coarse_lines,
    power_shift_battery,
    power_shift_h,
    power_shift_operator,
    line_grid,
    line_restriction,
    line_test,
    parabola_boundary,
    quartic_curve_expanded,
    quartic_symbol,
    quintic_boundary,
    region_scan,
    shift_sign_report,
    standard_lines,
    symbol_of,
    symbol_series_at_x0,
)

b_vals = st.fractions(min_value=-8, max_value=8, max_denominator=8)


def test_delta_symbol():
    curve = symbol_of(delta())
    assert curve.order == 2
    assert curve.poly == BiPoly({(1, 1): -2, (2, 2): 1, (0, 2): -1})


def test_symbol_json_round_trip():
    curve = quartic_symbol(3, Fraction(-1, 2))
    assert SymbolCurve.from_json(json.loads(json.dumps(curve.to_json()))) == curve


@given(b_vals, b_vals)
def test_expanded_quartic_equals_derived_symbol(b, c):
    derived = symbol_of(operator_from_h([c, b, 1])).poly.rename(("x", "w"))
    assert quartic_curve_expanded(b, c) == derived


def test_symbol_at_x0_matches_coefficients():
    seq = EigenSequence.from_h([0, 0, 1])
    series = symbol_series_at_x0(seq, 6)
    op = operator_from_h([0, 0, 1])
    assert series == [(-1) ** k * op.coeff(k)(0) for k in range(7)]


def test_line_grids():
    lines = standard_lines()
    assert len(lines) == 5050
    assert lines[0] == (Fraction(1, 10), Fraction(-5))
    assert lines[-1] == (Fraction(5), Fraction(5))
    assert line_grid([1], [0, 1]) == [(1, 0), (1, 1)]


def test_line_restriction():
    curve = symbol_of(delta())
    # G(x, x) = -2x^2 + (x^2 - 1) x^2
    assert line_restriction(curve, 1, 0) == UniPoly([0, 0, -3, 0, 1])
    with pytest.raises(ValueError):
        line_restriction(curve, 0, 1)
    with pytest.raises(ValueError):
        line_test(curve, [(Fraction(-1), Fraction(0))])


def test_delta_passes_coarse_lines():
    assert line_test(symbol_of(delta()), coarse_lines()).passed


def test_quartic_4_0_fails_with_verifiable_witness():
    rep = line_test(quartic_symbol(4, 0))
    assert rep.failed
    assert rep.witness["z_c"] > 0
    assert verify_witness(rep)
    F = line_restriction(quartic_symbol(4, 0), rep.witness["s"], rep.witness["t"])
    assert z_c(F) > 0


def test_literal_criterion_is_stricter_on_delta():
    curve = symbol_of(delta())
    assert line_test(curve, coarse_lines(), ALL_REAL).passed
    assert line_test(curve, coarse_lines(), LITERAL).failed


def test_identity_symbol_passes():
    # constant curve: every restriction is a nonzero constant
    assert line_test(symbol_of(operator_from_h([1])), coarse_lines()).passed


def test_zero_curve_is_inconclusive():
    assert line_test(symbol_of(operator_from_h([0])), coarse_lines()).verdict == "inconclusive"


# --- boundaries ----------------------------------------------------------------------------


def test_quintic_at_c0_factors():
    b = UniPoly([0, 1], "b")
    assert quintic_boundary(0) == (b - 7) * (b - 6) ** 2 * (b + 2) ** 2


def test_parabola_crosses_axis_at_target():
    assert parabola_boundary(-2) == -4
    root = isolate_real_roots(UniPoly([-28, 4, 1]), Fraction(1, 10**9)).intervals[-1]
    lo, hi = root[0], root[1]
    assert parabola_boundary(lo) < 0 < parabola_boundary(hi)


def test_breaking_point_coarse():
    bp = breaking_point(0, coarse_lines(), Fraction(1, 8))
    assert bp.found
    assert bp.b_hi - bp.b_lo <= Fraction(1, 8)
    assert line_test(quartic_symbol(bp.b_lo, 0), coarse_lines()).passed
    assert line_test(quartic_symbol(bp.b_hi, 0), coarse_lines()).failed
    data = bp.to_json()
    assert data["found"]
    assert Fraction(data["b_lo"]) == bp.b_lo


def test_breaking_point_no_transition():
    bp = breaking_point(0, coarse_lines(), Fraction(1, 4), b_range=(4, 6))
    assert not bp.found
    with pytest.raises(ValueError):
        breaking_point(0, coarse_lines(), 0)


def test_region_scan_small():
    scan = region_scan((2, 5), (-1, 0), (1, 1), coarse_lines())
    assert [(c["b"], c["c"]) for c in scan.cells[:2]] == [(2, -1), (3, -1)]
    assert scan.verdict(3, 0) == "pass"
    assert scan.verdict(4, 0) == "fail"
    assert scan.transitions(0) == [(3, 4)]
    text = scan.to_csv()
    assert text.splitlines()[0].startswith("b,c,verdict,first_fail_s,first_fail_t")
    assert len(text.splitlines()) == 1 + 8
    assert text == region_scan((2, 5), (-1, 0), (1, 1), coarse_lines()).to_csv()


def test_power_shift_operator():
    assert power_shift_h(3, 1) == UniPoly([0, 0, -2, 1])
    assert power_shift_operator(2, 1) == operator_from_h([0, -2, 1])
    for n, k in [(2, 0), (2, 2), (1, 1)]:
        with pytest.raises(ValueError):
            power_shift_h(n, k)


def test_power_shift_battery_runs():
    out = power_shift_battery(3, 1, max_degree=3, root_grid=range(-1, 2), lines=coarse_lines())
    assert out["order"] == 6
    for key in ("ms_empirical", "classical_necessary", "line_test"):
        assert out[key].verdict in ("pass", "fail", "inconclusive")


def test_shift_sign_prefers_delta_plus_A():
    report = shift_sign_report()
    assert report["consistent"] == ["delta_plus_A"]
    by_A = {r["A"]: r for r in report["rows"]}
    assert by_A[Fraction(-3)]["delta_minus_A"] == "pass"
    assert by_A[Fraction(3)]["delta_plus_A"] == "pass"
