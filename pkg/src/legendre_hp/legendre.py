"""Legendre polynomials and exact conversion between the monomial and
Legendre bases."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .combinatorics import pochhammer
from .poly import UniPoly, as_fraction

__all__ = [
    "LegendreExpansion",
    "legendre_poly",
    "legendre_at_zero",
    "monomial_to_legendre",
    "to_legendre_basis",
]

_cache: list[UniPoly] = [UniPoly.one(), UniPoly((0, 1))]
_cache_lock = threading.Lock()


def legendre_poly(k: int) -> UniPoly:
    """P_k from Bonnet's recurrence (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    with _cache_lock:
        x = UniPoly((0, 1))
        while len(_cache) <= k:
            n = len(_cache) - 1
            nxt = (x * _cache[n] * (2 * n + 1) - _cache[n - 1] * n) / (n + 1)
            _cache.append(nxt)
        return _cache[k]


def legendre_at_zero(k: int) -> Fraction:
    """P_k(0): zero for odd k, (-1)^j (1/2)_j / j! for k = 2j."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2:
        return Fraction(0)
    j = k // 2
    return (-1) ** j * pochhammer(Fraction(1, 2), j) / factorial(j)


@dataclass(frozen=True)
class LegendreExpansion:
    """sum_k coeffs[k] * P_k(x), trailing zeros trimmed."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [as_fraction(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other: "LegendreExpansion") -> "LegendreExpansion":
        n = max(len(self), len(other))
        return LegendreExpansion(tuple(self[k] + other[k] for k in range(n)))

    def scale(self, c) -> "LegendreExpansion":
        c = as_fraction(c)
        return LegendreExpansion(tuple(c * v for v in self.coeffs))

    def map_eigen(self, gamma) -> "LegendreExpansion":
        """Multiply coefficient k by gamma(k)."""
        return LegendreExpansion(tuple(gamma(k) * v for k, v in enumerate(self.coeffs)))

    def reconstruct(self, var: str = "x") -> UniPoly:
        out = UniPoly.zero()
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + legendre_poly(k) * c
        return out.with_var(var)

    def as_dict(self) -> dict[int, Fraction]:
        return {k: c for k, c in enumerate(self.coeffs) if c}


def monomial_to_legendre(n: int) -> LegendreExpansion:
    """x^n = (n!/2^n) sum_{k<=n/2} (2n-4k+1) P_{n-2k} / (k! (3/2)_{n-k})."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    coeffs = [Fraction(0)] * (n + 1)
    lead = Fraction(factorial(n), 2**n)
    three_halves = Fraction(3, 2)
    for k in range(n // 2 + 1):
        coeffs[n - 2 * k] = lead * (2 * n - 4 * k + 1) / (factorial(k) * pochhammer(three_halves, n - k))
    return LegendreExpansion(tuple(coeffs))


def to_legendre_basis(p: UniPoly | Sequence) -> LegendreExpansion:
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    out = LegendreExpansion()
    for n, c in enumerate(p.coeffs):
        if c:
            out = out + monomial_to_legendre(n).scale(c)
    return out
