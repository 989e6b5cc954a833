"""Finite-order differential operators sum_k S_k(x) D^k with polynomial
coefficients, the Legendre operator delta = (x^2-1) D^2 + 2x D, and operators
diagonal in the Legendre basis."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .combinatorics import double_factorial, p_poly, pochhammer, pochhammer_poly, stirling2
from .errors import InconsistencyError
from .legendre import legendre_at_zero, to_legendre_basis
from .poly import NEG_INF, UniPoly, as_fraction

log = logging.getLogger(__name__)

X = UniPoly((0, 1))
X2_PLUS_X = UniPoly((0, 1, 1))

__all__ = [
    "DiffOperator",
    "EigenSequence",
    "S2mRoutes",
    "apply",
    "compose",
    "delta",
    "operator_from_h",
    "operator_from_sequence",
    "apply_diagonal",
    "coeff_at_zero_direct",
    "coeff_at_zero_via_action",
    "s2m0_direct",
    "s2m0_closed",
    "s2m0_routes",
    "s2m0_formula",
    "capital_P",
    "decompose_even_odd",
    "xD_expansion",
]


class DiffOperator:
    """sum_k coeffs[k](x) D^k. Immutable; ``op(p)`` applies it, ``a @ b`` composes."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, UniPoly) else UniPoly((c,)) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("DiffOperator is immutable")

    def __reduce__(self):
        return (DiffOperator, (self.coeffs,))

    @classmethod
    def identity(cls) -> "DiffOperator":
        return cls([UniPoly.one()])

    @classmethod
    def D(cls, n: int = 1) -> "DiffOperator":
        return cls([UniPoly.zero()] * n + [UniPoly.one()])

    @classmethod
    def multiplication(cls, p: UniPoly) -> "DiffOperator":
        return cls([p])

    @property
    def order(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, k: int) -> UniPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else UniPoly.zero()

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        if not isinstance(other, DiffOperator):
            other = DiffOperator([UniPoly((as_fraction(other),))])
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOperator([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, DiffOperator):
            other = DiffOperator([UniPoly((as_fraction(other),))])
        return self + (-other)

    def __mul__(self, c):
        c = as_fraction(c)
        return DiffOperator([p * c for p in self.coeffs])

    __rmul__ = __mul__

    def __matmul__(self, other: "DiffOperator") -> "DiffOperator":
        return compose(self, other)

    def __call__(self, p: UniPoly) -> UniPoly:
        return apply(self, p)

    def __repr__(self):
        return "DiffOperator([" + ", ".join(str(c) for c in self.coeffs) + "])"

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "DiffOperator":
        return cls([UniPoly.from_json(c) for c in data])


def apply(op: DiffOperator, p: UniPoly) -> UniPoly:
    out = UniPoly.zero(p.var)
    deriv = p
    for s in op.coeffs:
        if deriv.is_zero():
            break
        out = out + s.with_var(p.var) * deriv
        deriv = deriv.derivative()
    return out


def compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """a o b via Leibniz: D^i (f D^j) = sum_l C(i,l) f^(l) D^(i-l+j)."""
    if not a.coeffs or not b.coeffs:
        return DiffOperator()
    out = [UniPoly.zero() for _ in range(len(a.coeffs) + len(b.coeffs) - 1)]
    for j, bj in enumerate(b.coeffs):
        derivs = [bj]
        for _ in range(len(a.coeffs) - 1):
            derivs.append(derivs[-1].derivative())
        for i, ai in enumerate(a.coeffs):
            if ai.is_zero():
                continue
            for l in range(i + 1):
                if derivs[l].is_zero():
                    break
                out[i - l + j] = out[i - l + j] + ai * derivs[l] * comb(i, l)
    return DiffOperator(out)


def delta() -> DiffOperator:
    """(x^2 - 1) D^2 + 2x D; satisfies delta P_k = (k^2 + k) P_k."""
    return DiffOperator([UniPoly.zero(), UniPoly((0, 2)), UniPoly((-1, 0, 1))])


def operator_from_h(h: UniPoly | Sequence) -> DiffOperator:
    """h(delta) = a_0 + a_1 delta + ... + a_n delta^n, via Horner."""
    if not isinstance(h, UniPoly):
        h = UniPoly(h)
    d = delta()
    out = DiffOperator()
    for c in reversed(h.coeffs):
        out = compose(out, d) + c
    return out


@dataclass(frozen=True)
class EigenSequence:
    """gamma_k = interp(k); optionally interp = h(x^2 + x) with h recorded."""

    interp: UniPoly
    h: UniPoly | None = None

    def __post_init__(self):
        if not isinstance(self.interp, UniPoly):
            object.__setattr__(self, "interp", UniPoly(self.interp))
        if self.h is not None:
            if not isinstance(self.h, UniPoly):
                object.__setattr__(self, "h", UniPoly(self.h))
            if self.h.compose(X2_PLUS_X) != self.interp:
                raise ValueError("h(x^2+x) does not reproduce the interpolating polynomial")

    @classmethod
    def from_h(cls, h: UniPoly | Sequence) -> "EigenSequence":
        if not isinstance(h, UniPoly):
            h = UniPoly(h)
        return cls(h.compose(X2_PLUS_X), h)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "EigenSequence":
        return cls(UniPoly(coeffs))

    def __call__(self, k: int) -> Fraction:
        return self.interp(k)

    def terms(self, n: int) -> list[Fraction]:
        return [self.interp(k) for k in range(n)]

    def to_json(self) -> dict:
        out = {"interp": self.interp.to_json()}
        if self.h is not None:
            out["h"] = self.h.to_json()
        return out


def apply_diagonal(seq: EigenSequence, p: UniPoly) -> UniPoly:
    """T[p] where T P_k = gamma_k P_k: expand, scale, reconstruct."""
    return to_legendre_basis(p).map_eigen(seq).reconstruct(p.var)


def operator_from_sequence(seq: EigenSequence, max_order: int) -> DiffOperator:
    """Coefficients S_0..S_max_order of the diagonal operator, by triangular solve.

    T[x^n] = sum_k n!/(n-k)! x^(n-k) S_k(x), so S_n is what remains of T[x^n]
    after the lower coefficients are accounted for, divided by n!.
    """
    coeffs: list[UniPoly] = []
    for n in range(max_order + 1):
        acc = apply_diagonal(seq, UniPoly.monomial(n))
        for k, s in enumerate(coeffs):
            acc = acc - UniPoly.monomial(n - k, Fraction(factorial(n), factorial(n - k))) * s
        coeffs.append(acc / factorial(n))
    return DiffOperator(coeffs)


def coeff_at_zero_direct(seq: EigenSequence, n: int) -> Fraction:
    """S_n(0) = 2^-n sum_k (2n-4k+1) gamma_{n-2k} P_{n-2k}(0) / (k! (3/2)_{n-k})."""
    three_halves = Fraction(3, 2)
    total = Fraction(0)
    for k in range(n // 2 + 1):
        p0 = legendre_at_zero(n - 2 * k)
        if p0:
            total += (2 * n - 4 * k + 1) * seq(n - 2 * k) * p0 / (factorial(k) * pochhammer(three_halves, n - k))
    return total / 2**n


def coeff_at_zero_via_action(seq: EigenSequence, n: int) -> Fraction:
    """S_n(0) = T[x^n](0) / n!."""
    return apply_diagonal(seq, UniPoly.monomial(n))(0) / factorial(n)


def s2m0_direct(seq: EigenSequence, m: int) -> Fraction:
    """S_2m(0) = 1/(2 4^m m!) sum_k C(m,k) (4k+1) gamma_2k (-1)^k / (k+1/2)_{m+1}."""
    half = Fraction(1, 2)
    total = Fraction(0)
    for k in range(m + 1):
        total += comb(m, k) * (4 * k + 1) * seq(2 * k) * (-1) ** k / pochhammer(k + half, m + 1)
    return total / (2 * 4**m * factorial(m))


def capital_P(seq: EigenSequence | UniPoly) -> UniPoly:
    """P(m) = sum_j a_j 2^j (2m-n)_{n-j} [4 p_{j+1}(m) + (2m-j) p_j(m)], n = deg p."""
    p = seq.interp if isinstance(seq, EigenSequence) else seq
    if p.is_zero():
        raise ValueError("capital_P needs a nonzero interpolating polynomial")
    n = p.degree
    out = UniPoly.zero("m")
    for j, a in enumerate(p.coeffs):
        if not a:
            continue
        bracket = p_poly(j + 1) * 4 + UniPoly((-j, 2), "m") * p_poly(j)
        out = out + pochhammer_poly(2, -n, n - j) * bracket * (a * 2**j)
    return out


def s2m0_closed(seq: EigenSequence, m: int) -> Fraction:
    """(2m-n-1)! P(m) / ((m!)^2 (4m+1)!!); requires m >= deg and 2m - n - 1 >= 0."""
    n = seq.interp.degree
    if n == NEG_INF:
        return Fraction(0)
    if m < n or 2 * m - n - 1 < 0:
        raise ValueError(f"closed form needs m >= deg p and 2m > deg p (m={m}, deg={n})")
    return Fraction(factorial(2 * m - n - 1), factorial(m) ** 2 * double_factorial(4 * m + 1)) * capital_P(seq)(m)


@dataclass(frozen=True)
class S2mRoutes:
    m: int
    direct: Fraction
    closed: Fraction | None

    @property
    def agree(self) -> bool | None:
        return None if self.closed is None else self.closed == self.direct


def closed_form_valid(seq: EigenSequence, m: int) -> bool:
    n = seq.interp.degree
    return n == NEG_INF or (m >= n and 2 * m - n - 1 >= 0)


def s2m0_routes(seq: EigenSequence, m: int) -> S2mRoutes:
    direct = s2m0_direct(seq, m)
    closed = s2m0_closed(seq, m) if closed_form_valid(seq, m) else None
    return S2mRoutes(m, direct, closed)


def s2m0_formula(seq: EigenSequence, m: int) -> Fraction:
    """S_2m(0) from the direct sum, cross-checked against the closed form where it applies."""
    routes = s2m0_routes(seq, m)
    if routes.agree is False:
        if m == seq.interp.degree:
            log.warning("closed form disagrees at the boundary m = deg p = %d", m)
        else:
            raise InconsistencyError(
                f"S_2m(0) routes disagree at m={m}: direct={routes.direct}, closed={routes.closed}"
            )
    return routes.direct


def decompose_even_odd(p: UniPoly | Sequence) -> tuple[UniPoly, UniPoly]:
    """p = h(x^2 + x) + q with q made of odd powers only.

    Peels leading terms against the basis (x^2+x)^(k/2) for even k and x^k for
    odd k, both monic of degree k.
    """
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    rest = p.with_var("x")
    h = [Fraction(0)] * (len(p.coeffs) // 2 + 1)
    q = [Fraction(0)] * len(p.coeffs)
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = rest.coeff(k)
        if not c:
            continue
        if k % 2:
            q[k] = c
            rest = rest - UniPoly.monomial(k, c)
        else:
            h[k // 2] = c
            rest = rest - X2_PLUS_X ** (k // 2) * c
    assert rest.is_zero()
    return UniPoly(h), UniPoly(q)


def xD_expansion(n: int) -> DiffOperator:
    """(xD)^n = sum_k S(n,k) x^k D^k."""
    return DiffOperator([UniPoly.monomial(k, stirling2(n, k)) for k in range(n + 1)])
