"""Real-rootedness tests and hyperbolicity-preservation criteria.

Verdicts come back as :class:`VerdictReport`. A ``fail`` always carries a
witness that can be re-checked with :func:`verify_witness`; a ``pass`` from an
empirical search only means no counterexample turned up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from math import ceil, comb
from typing import Any, Iterable, Iterator, Sequence

from . import _parallel
from .diffop import (
    DiffOperator,
    EigenSequence,
    apply,
    apply_diagonal,
    capital_P,
    compose,
    decompose_even_odd,
    delta,
    s2m0_direct,
)
from .errors import InconsistencyError
from .legendre import legendre_poly, to_legendre_basis
from .poly import (
    UniPoly,
    as_fraction,
    cauchy_bound,
    has_only_real_roots,
    is_nonnegative_on_reals,
    real_root_count_with_multiplicity,
    wronskian,
)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

# Sign convention for proper position, fixed by calibrate_proper_position():
# f << g iff both are real-rooted and W[f, g] = f g' - f' g >= 0 on R.
PROPER_POSITION_CONVENTION = "nonneg"


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return _fmt(value)
    if isinstance(value, (UniPoly, DiffOperator)) or hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class VerdictReport:
    verdict: str
    test: str
    witness: dict | None = None
    params: dict = field(default_factory=dict)
    note: str = ""

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.witness:
            raise ValueError("a fail verdict needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_json(self) -> dict:
        out = {"test": self.test, "verdict": self.verdict, "params": _jsonable(self.params)}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.note:
            out["note"] = self.note
        return out


# --- basic real-rootedness -------------------------------------------------


def is_hyperbolic(p: UniPoly) -> bool:
    """All zeros real; the zero polynomial counts as hyperbolic."""
    if p.is_zero() or p.degree <= 1:
        return True
    return has_only_real_roots(p)


def z_c(p: UniPoly) -> int:
    """Number of nonreal zeros, with multiplicity; 0 for the zero polynomial."""
    if p.is_zero() or p.degree <= 0:
        return 0
    return p.degree - real_root_count_with_multiplicity(p)


def turan_check(gamma: Sequence) -> VerdictReport:
    gamma = [as_fraction(g) for g in gamma]
    if len(gamma) < 3:
        raise ValueError("Turan check needs at least three terms")
    for k in range(1, len(gamma) - 1):
        value = gamma[k] ** 2 - gamma[k - 1] * gamma[k + 1]
        if value < 0:
            return VerdictReport(FAIL, "turan", {"index": k, "value": value}, {"length": len(gamma)})
    return VerdictReport(PASS, "turan", params={"length": len(gamma)})


def eventual_sign(P: UniPoly) -> str:
    """Sign of P(m) for all large m."""
    if P.is_zero():
        return "zero"
    return "positive" if P.lc > 0 else "negative"


# --- form of polynomially interpolated sequences ---------------------------


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def noodd_test(p: UniPoly | Sequence, check_upto: int = 4) -> VerdictReport:
    """Odd-part obstruction: p = h(x^2+x) + q with q != 0 cannot give a Legendre MS.

    S_2m(0) of the sequence must alternate in sign, but once m exceeds deg h
    only q contributes and the sign is eventually that of P_q(m), constant.
    The witness gives the tail start and S_2m(0) samples confirming it.
    """
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    h, q = decompose_even_odd(p)
    params = {"p": p, "h": h, "q": q}
    if q.is_zero():
        return VerdictReport(PASS, "noodd", params=params, note="odd part vanishes; necessary condition holds")
    P = capital_P(q)
    sign = eventual_sign(P)
    if sign == "zero":
        return VerdictReport(INCONCLUSIVE, "noodd", params=params, note="P(m) vanished identically")
    # Past the h-part's order and P's largest real root, the sign is frozen.
    start = max(q.degree, (h.degree if not h.is_zero() else 0) + 1, ceil(cauchy_bound(P)))
    seq = EigenSequence(p)
    samples = {m: s2m0_direct(seq, m) for m in range(start, start + check_upto)}
    want = 1 if sign == "positive" else -1
    if any(_sign(v) != want for v in samples.values()):
        raise InconsistencyError(f"S_2m(0) tail does not follow the sign of P(m) for p = {p}")
    witness = {"P": P, "sign": sign, "tail_start": start, "samples": samples}
    return VerdictReport(FAIL, "noodd", witness, params, note="S_2m(0) has constant sign for m >= tail_start")


# --- Bates-Yoshida and the delta-family ------------------------------------


def proper_position(f: UniPoly, g: UniPoly, convention: str | None = None) -> bool:
    """f << g: both hyperbolic (constants included) and W[f, g] of one fixed sign.

    With the default convention the Wronskian must be >= 0 everywhere.
    """
    convention = convention or PROPER_POSITION_CONVENTION
    if f.degree > 2 or g.degree > 2:
        raise ValueError("proper_position is only used for degree <= 2")
    if not (is_hyperbolic(f) and is_hyperbolic(g)):
        return False
    w = wronskian(f, g)
    if convention == "nonneg":
        return is_nonnegative_on_reals(w)
    if convention == "nonpos":
        return is_nonnegative_on_reals(-w)
    raise ValueError(f"unknown convention {convention!r}")


def wronskian_combination(Q2: UniPoly, Q1: UniPoly, Q0: UniPoly) -> UniPoly:
    """W[Q0,Q2]^2 - W[Q0,Q1] W[Q1,Q2]."""
    return wronskian(Q0, Q2) ** 2 - wronskian(Q0, Q1) * wronskian(Q1, Q2)


def bates_yoshida_check(Q2: UniPoly, Q1: UniPoly, Q0: UniPoly, convention: str | None = None) -> bool:
    """Is Q2 D^2 + Q1 D + Q0 a hyperbolicity preserver?

    Requires deg Q2 = 2, deg Q1 <= 1, Q0 constant (zero allowed).
    """
    if Q2.degree != 2 or Q1.degree > 1 or Q0.degree > 0:
        raise ValueError("Bates-Yoshida needs deg Q2 = 2, deg Q1 <= 1, deg Q0 <= 0")
    combo = wronskian_combination(Q2, Q1, Q0)
    if not is_nonnegative_on_reals(-combo):
        return False
    return proper_position(Q0, Q1, convention) and proper_position(Q1, Q2, convention)


def fall_factor(n: int, A) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(Q2, Q1, Q0) of (x^2-1) D^2 + 2(n+1) x D + n^2+n-A."""
    A = as_fraction(A)
    return UniPoly((-1, 0, 1)), UniPoly((0, 2 * (n + 1))), UniPoly((n * n + n - A,))


def reduced_inequality(n: int, A) -> UniPoly:
    """-4(n^2+n-A) [(A+n+1) x^2 + (n+1)^2], checked against the raw Wronskians.

    This is the Bates-Yoshida expression for the factor built by fall_factor.
    """
    A = as_fraction(A)
    c = n * n + n - A
    closed = UniPoly((-4 * c * (n + 1) ** 2, 0, -4 * c * (A + n + 1)))
    raw = wronskian_combination(*fall_factor(n, A))
    if closed != raw:
        raise InconsistencyError(f"reduced inequality mismatch at n={n}, A={A}: {closed} vs {raw}")
    return closed


def in_fall_range(n: int, A) -> bool:
    A = as_fraction(A)
    return -(n + 1) <= A <= n * (n + 1)


def _first_order_factor(k: int) -> DiffOperator:
    """(x^2 - 1) D + 2(k+1) x."""
    return DiffOperator([UniPoly((0, 2 * (k + 1))), UniPoly((-1, 0, 1))])


def _second_order_factor(n: int, A: Fraction) -> DiffOperator:
    Q2, Q1, Q0 = fall_factor(n, A)
    return DiffOperator([Q0, Q1, Q2])


@dataclass(frozen=True)
class FallOperator:
    n: int
    A: tuple[Fraction, ...]
    operator: DiffOperator
    certified: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A": [_fmt(a) for a in self.A],
            "operator": self.operator.to_json(),
            "order": self.operator.order,
            "certificate": "HP by the delta-family interval" if self.certified else "none (some A outside [-(n+1), n(n+1)])",
        }


def fall_h(n: int, A: Iterable) -> UniPoly:
    """x (x - 1*2) ... (x - (n-1) n) prod (x - A_j)."""
    return UniPoly.from_roots([k * (k + 1) for k in range(n)] + [as_fraction(a) for a in A])


def fall_operator(n: int, N: int, A: Sequence) -> FallOperator:
    """delta (delta - 1*2) ... (delta - (n-1)n) prod_j (delta - A_j), built two ways.

    One route composes (delta - c) factors; the other multiplies the
    first-order factors (x^2-1) D + 2(k+1) x (k = 0 leftmost), the conjugated
    second-order factors, and D^n. They must coincide.
    """
    if n < 1 or N < 1:
        raise ValueError("n and N must be positive")
    A = tuple(as_fraction(a) for a in A)
    if len(A) != N:
        raise ValueError(f"expected {N} values of A, got {len(A)}")
    d = delta()
    direct = DiffOperator.identity()
    for c in [k * (k + 1) for k in range(n)] + list(A):
        direct = compose(direct, d - c)

    factored = DiffOperator.identity()
    for k in range(n):
        factored = compose(factored, _first_order_factor(k))
    for a in A:
        factored = compose(factored, _second_order_factor(n, a))
    factored = compose(factored, DiffOperator.D(n))

    if direct != factored:
        raise InconsistencyError(f"factorizations disagree for n={n}, A={A}")
    return FallOperator(n, A, direct, all(in_fall_range(n, a) for a in A))


# --- empirical multiplier-sequence checks ----------------------------------


def hyperbolic_corpus(max_degree: int = 6, root_grid: Sequence = range(-3, 4)) -> Iterator[UniPoly]:
    """Deterministic stream of hyperbolic test inputs.

    Order: Legendre polynomials P_0..P_max; products of linear factors over
    root multisets (by degree, then lexicographic); hyperbolic partial sums of
    the Legendre expansions of those products.
    """
    grid = sorted({as_fraction(r) for r in root_grid})
    for k in range(max_degree + 1):
        yield legendre_poly(k)
    products = []
    for d in range(1, max_degree + 1):
        for roots in itertools.combinations_with_replacement(grid, d):
            p = UniPoly.from_roots(roots)
            products.append(p)
            yield p
    seen = set()
    for p in products:
        exp = to_legendre_basis(p)
        partial_sum = UniPoly.zero()
        for k in range(len(exp) - 1):
            if not exp[k]:
                continue
            partial_sum = partial_sum + legendre_poly(k) * exp[k]
            if partial_sum.degree >= 2 and partial_sum not in seen and is_hyperbolic(partial_sum):
                seen.add(partial_sum)
                yield partial_sum


def _first_nonhyperbolic_image(seq: EigenSequence, inputs: Sequence[UniPoly]) -> int | None:
    for i, p in enumerate(inputs):
        if z_c(apply_diagonal(seq, p)) > 0:
            return i
    return None


def _first_nonhyperbolic_image_op(op: DiffOperator, inputs: Sequence[UniPoly]) -> int | None:
    for i, p in enumerate(inputs):
        if z_c(apply(op, p)) > 0:
            return i
    return None


def ms_empirical_check(
    seq: EigenSequence, max_degree: int = 6, root_grid: Sequence = range(-3, 4)
) -> VerdictReport:
    """Search the hyperbolic corpus for an input whose image has nonreal zeros."""
    inputs = list(hyperbolic_corpus(max_degree, root_grid))
    if not inputs:
        raise ValueError("empty corpus")
    params = {"interp": seq.interp, "max_degree": max_degree, "root_grid": [as_fraction(r) for r in root_grid],
              "corpus_size": len(inputs)}
    hit = _parallel.first_hit(partial(_first_nonhyperbolic_image, seq), inputs)
    if hit is None:
        return VerdictReport(PASS, "ms_empirical", params=params, note="no counterexample in corpus")
    p = inputs[hit]
    out = apply_diagonal(seq, p)
    witness = {"index": hit, "input": p, "output": out, "z_c": z_c(out)}
    return VerdictReport(FAIL, "ms_empirical", witness, params)


def operator_empirical_check(
    op: DiffOperator, max_degree: int = 6, root_grid: Sequence = range(-3, 4)
) -> VerdictReport:
    """Same search as :func:`ms_empirical_check` for an arbitrary operator."""
    inputs = list(hyperbolic_corpus(max_degree, root_grid))
    params = {"operator": op, "max_degree": max_degree, "corpus_size": len(inputs)}
    hit = _parallel.first_hit(partial(_first_nonhyperbolic_image_op, op), inputs)
    if hit is None:
        return VerdictReport(PASS, "operator_empirical", params=params, note="no counterexample in corpus")
    p = inputs[hit]
    out = apply(op, p)
    return VerdictReport(FAIL, "operator_empirical", {"index": hit, "input": p, "output": out, "z_c": z_c(out)}, params)


def verify_witness(report: VerdictReport, seq: EigenSequence | None = None, op: DiffOperator | None = None) -> bool:
    """Recompute a fail witness from scratch."""
    if not report.failed:
        return False
    w = report.witness
    if report.test == "ms_empirical":
        if not is_hyperbolic(w["input"]):
            return False
        out = apply_diagonal(seq, w["input"])
        return out == w["output"] and z_c(out) == w["z_c"] > 0
    if report.test == "operator_empirical":
        out = apply(op, w["input"])
        return is_hyperbolic(w["input"]) and out == w["output"] and z_c(out) > 0
    if report.test == "classical_necessary":
        if "jensen_n" in w:
            n = w["jensen_n"]
            g = UniPoly([comb(n, k) * seq(k) for k in range(n + 1)])
            return g == w["polynomial"] and z_c(g) > 0
        return _sign(seq(w["index_a"])) * _sign(seq(w["index_b"])) < 0
    if report.test == "noodd":
        samples = {m: s2m0_direct(EigenSequence(report.params["p"]), m) for m in w["samples"]}
        want = 1 if w["sign"] == "positive" else -1
        return all(_sign(v) == want for v in samples.values())
    if report.test == "turan":
        return w["value"] < 0
    if report.test == "line_test":
        from .symbol import line_restriction_of_poly

        F = line_restriction_of_poly(report.params["curve"], w["s"], w["t"])
        return F == w["restriction"] and z_c(F) > 0
    raise ValueError(f"no witness verifier for test {report.test!r}")


def classical_ms_necessary(seq: EigenSequence, N: int = 12) -> VerdictReport:
    """Necessary conditions from the classical theory.

    (i) the nonzero gamma_k all share one sign, checked past the last real
    root of the interpolating polynomial; (ii) the Jensen polynomials
    sum_k C(n,k) gamma_k x^k are hyperbolic for n <= N.
    """
    p = seq.interp
    params = {"interp": p, "N": N}
    horizon = N if p.degree < 1 else max(N, ceil(cauchy_bound(p)) + 1)
    signed = [(k, _sign(seq(k))) for k in range(horizon + 1)]
    signed = [(k, s) for k, s in signed if s]
    for (ka, sa), (kb, sb) in itertools.combinations(signed, 2):
        if sa != sb:
            witness = {"index_a": ka, "index_b": kb, "gamma_a": seq(ka), "gamma_b": seq(kb)}
            return VerdictReport(FAIL, "classical_necessary", witness, params, note="terms of both signs")
    for n in range(1, N + 1):
        g = UniPoly([comb(n, k) * seq(k) for k in range(n + 1)])
        zc = z_c(g)
        if zc:
            witness = {"jensen_n": n, "polynomial": g, "z_c": zc}
            return VerdictReport(FAIL, "classical_necessary", witness, params, note="Jensen polynomial not hyperbolic")
    return VerdictReport(PASS, "classical_necessary", params=params)


# --- proper-position calibration --------------------------------------------


@dataclass(frozen=True)
class CalibrationCase:
    name: str
    Q2: UniPoly
    Q1: UniPoly
    Q0: UniPoly
    expected_hp: bool
    evidence: str


def calibration_suite() -> list[CalibrationCase]:
    cases = []
    for n in (1, 2, 3):
        for A in (-(n + 1), 0, n * (n + 1)):
            Q2, Q1, Q0 = fall_factor(n, A)
            cases.append(CalibrationCase(f"delta-family n={n} A={A}", Q2, Q1, Q0, True, "delta-family interval"))
    # (x^2-1) D^2 - 2x D sends x^2 to -2x^2 - 2.
    cases.append(CalibrationCase("(x^2-1)D^2 - 2xD", UniPoly((-1, 0, 1)), UniPoly((0, -2)), UniPoly(()),
                                 False, "x^2 -> -2x^2 - 2"))
    # (x^2+1) D^2 + 2x D sends x^2 to 6x^2 + 2.
    cases.append(CalibrationCase("(x^2+1)D^2 + 2xD", UniPoly((1, 0, 1)), UniPoly((0, 2)), UniPoly(()),
                                 False, "x^2 -> 6x^2 + 2"))
    return cases


def calibrate_proper_position() -> dict:
    """Run both sign conventions over the suite and report which one is consistent."""
    cases = calibration_suite()
    rows = []
    consistent = {}
    for conv in ("nonneg", "nonpos"):
        ok = True
        for case in cases:
            got = bates_yoshida_check(case.Q2, case.Q1, case.Q0, convention=conv)
            ok &= got == case.expected_hp
            rows.append({"convention": conv, "case": case.name, "expected_hp": case.expected_hp, "by_check": got})
        consistent[conv] = ok
    # Independent evidence for the expected statuses.
    evidence = []
    for case in cases:
        op = DiffOperator([case.Q0, case.Q1, case.Q2])
        rep = operator_empirical_check(op, max_degree=4, root_grid=range(-2, 3))
        evidence.append({"case": case.name, "empirical": rep.verdict, "expected_hp": case.expected_hp})
        if rep.failed == case.expected_hp:
            raise InconsistencyError(f"calibration case {case.name} contradicts its expected status")
    chosen = [c for c, ok in consistent.items() if ok]
    return {
        "convention_in_use": PROPER_POSITION_CONVENTION,
        "definition": "f << g iff f, g hyperbolic (or constant) and W[f,g] = f g' - f' g >= 0 on R",
        "consistent_conventions": chosen,
        "ok": chosen == [PROPER_POSITION_CONVENTION],
        "rows": rows,
        "empirical_evidence": evidence,
    }
