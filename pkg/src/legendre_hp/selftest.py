"""Invariant battery behind ``legendre-hp selftest``. Sizes are kept small so
the whole run finishes in well under a minute."""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Callable

from .combinatorics import pochhammer, sigma_closed, sigma_direct, stirling2, stirling2_recurrence
from .diffop import (
    DiffOperator,
    EigenSequence,
    apply,
    apply_diagonal,
    coeff_at_zero_direct,
    compose,
    decompose_even_odd,
    delta,
    operator_from_h,
    operator_from_sequence,
    s2m0_routes,
)
from .hyperbolicity import (
    bates_yoshida_check,
    calibrate_proper_position,
    fall_factor,
    fall_operator,
    in_fall_range,
    noodd_test,
    reduced_inequality,
)
from .legendre import legendre_at_zero, legendre_poly, monomial_to_legendre
from .poly import UniPoly
from .symbol import coarse_lines, line_test, quartic_symbol, symbol_of

X = UniPoly((0, 1))
SEQ_CORPUS = ([1], [0, 1], [0, 0, 1], [0, 1, 1], [0, 0, 0, 1], [0, 0, 1, 2, 1])


def _sigma():
    return all(sigma_direct(m, n) == sigma_closed(m, n) for m in range(9) for n in range(2 * m + 1))


def _stirling():
    return all(stirling2(n, k) == stirling2_recurrence(n, k) for n in range(15) for k in range(15))


def _pochhammer_split():
    alphas = (Fraction(1, 2), Fraction(-3, 4), Fraction(5, 3))
    return all(pochhammer(a, j + k) == pochhammer(a, j) * pochhammer(a + j, k)
               for a in alphas for j in range(6) for k in range(6))


def _legendre_ode():
    for k in range(16):
        P = legendre_poly(k)
        residual = UniPoly((-1, 0, 1)) * P.derivative(2) + UniPoly((0, 2)) * P.derivative() - P * (k * (k + 1))
        if not residual.is_zero() or P(1) != 1 or P(0) != legendre_at_zero(k):
            return False
    return True


def _legendre_reconstruct():
    return all(monomial_to_legendre(n).reconstruct() == UniPoly.monomial(n) for n in range(16))


def _odd_vanishing():
    return all(coeff_at_zero_direct(EigenSequence(UniPoly(c)), 2 * m + 1) == 0 for c in SEQ_CORPUS for m in range(8))


def _two_routes():
    for c in SEQ_CORPUS:
        seq = EigenSequence(UniPoly(c))
        for m in range(max(len(c) - 1, 1), 9):
            r = s2m0_routes(seq, m)
            if not r.agree or r.direct != coeff_at_zero_direct(seq, 2 * m):
                return False
    return True


def _delta_recovery():
    return operator_from_sequence(EigenSequence(UniPoly((0, 1, 1))), 8) == delta()


def _diagonal_identity():
    for h in ([0, 1], [0, 0, 1], [3, -1, 0, 2]):
        op = operator_from_h(h)
        hp = UniPoly(h)
        if op.order > 2 * hp.degree:
            return False
        for k in range(8):
            if apply(op, legendre_poly(k)) != legendre_poly(k) * hp(k * k + k):
                return False
    return True


def _compose():
    a = DiffOperator([UniPoly((1, 2)), UniPoly((0, 0, 1)), UniPoly((-1,))])
    b = DiffOperator([UniPoly((0, 1)), UniPoly((3,)), UniPoly((1, 1))])
    p = UniPoly((1, -2, 0, 5, 1, 0, 3))
    return apply(compose(a, b), p) == apply(a, apply(b, p))


def _decomposition():
    for p in (UniPoly((1, 2, 3, 4, 5, 6, 7)), UniPoly((0, 0, 1)), UniPoly((2, -1, 0, 3))):
        h, q = decompose_even_odd(p)
        if h.compose(UniPoly((0, 1, 1))) + q != p or any(q.coeff(k) for k in range(0, len(q.coeffs), 2)):
            return False
    return True


def _noodd():
    return all(noodd_test(p).failed for p in ([0, 1], [0, 0, 0, 1], [1, 2, 0, 1])) and noodd_test([0, 1, 1]).passed


def _fall_interval():
    for n in range(1, 4):
        samples = [-(n + 1) - Fraction(1, 3), -(n + 1), 0, n * (n + 1), n * (n + 1) + Fraction(1, 2)]
        for A in samples:
            reduced_inequality(n, A)
            if bates_yoshida_check(*fall_factor(n, A)) != in_fall_range(n, A):
                return False
    return True


def _fall_factorization():
    fall_operator(1, 1, [0])
    fall_operator(2, 1, [1])
    fall_operator(2, 2, [-3, 6])
    return fall_operator(1, 1, [0]).operator == compose(delta(), delta())


def _symbol():
    for b, c in ((0, 0), (3, 0), (1, 2)):
        quartic_symbol(b, c)
    return line_test(symbol_of(delta()), coarse_lines()).passed and line_test(quartic_symbol(4, 0)).failed


def _calibration():
    return calibrate_proper_position()["ok"]


def _diagonal_vs_operator():
    seq = EigenSequence.from_h([1, -2, 1])
    op = operator_from_h([1, -2, 1])
    p = UniPoly((2, 0, -1, 1, 4))
    return apply_diagonal(seq, p) == apply(op, p)


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("sigma direct == closed (m <= 8)", _sigma),
    ("Stirling formula == recurrence", _stirling),
    ("Pochhammer splitting", _pochhammer_split),
    ("Legendre ODE, P_k(1) = 1, P_k(0)", _legendre_ode),
    ("x^n Legendre expansion round trip", _legendre_reconstruct),
    ("odd S_n(0) vanish", _odd_vanishing),
    ("S_2m(0) direct == closed", _two_routes),
    ("delta recovered from {k^2+k}", _delta_recovery),
    ("h(delta) acts diagonally", _diagonal_identity),
    ("diagonal action == h(delta)", _diagonal_vs_operator),
    ("composition faithfulness", _compose),
    ("even/odd decomposition", _decomposition),
    ("odd part obstruction", _noodd),
    ("Bates-Yoshida interval", _fall_interval),
    ("delta-family factorizations agree", _fall_factorization),
    ("symbol curves and line test", _symbol),
    ("proper-position calibration", _calibration),
]


def run_selftest() -> list[dict]:
    results = []
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            ok, error = bool(fn()), ""
        except Exception as exc:  # report, don't abort the battery
            ok, error = False, f"{type(exc).__name__}: {exc}"
        results.append({"check": name, "ok": ok, "seconds": round(time.perf_counter() - start, 3), "error": error})
    return results
