"""Exact scalar combinatorics: rising factorials, Stirling numbers, and the
alternating sums sigma(m, n) that drive the coefficient formulas."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .poly import UniPoly

__all__ = [
    "pochhammer",
    "pochhammer_poly",
    "stirling2",
    "stirling2_recurrence",
    "double_factorial",
    "sigma_direct",
    "sigma_closed",
    "p_poly",
]


def pochhammer(alpha, k: int) -> Fraction:
    """Rising factorial alpha (alpha+1) ... (alpha+k-1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    alpha = Fraction(alpha)
    out = Fraction(1)
    for i in range(k):
        out *= alpha + i
    return out


def pochhammer_poly(a, b, k: int, var: str = "m") -> UniPoly:
    """(a*m + b)_k expanded as a polynomial in m."""
    out = UniPoly.one(var)
    for i in range(k):
        out = out * UniPoly([Fraction(b) + i, Fraction(a)], var)
    return out


def stirling2(n: int, k: int) -> int:
    """S(n, k) from the explicit alternating sum (1/k!) sum_j C(k,j)(-1)^(k-j) j^n."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    # 0**0 == 1 in Python, which is the convention needed for S(0, 0).
    total = sum(comb(k, j) * (-1) ** (k - j) * j**n for j in range(k + 1))
    q, r = divmod(total, factorial(k))
    assert r == 0
    return q


@lru_cache(maxsize=None)
def stirling2_recurrence(n: int, k: int) -> int:
    """S(n, k) via S(n,k) = k S(n-1,k) + S(n-1,k-1); independent of :func:`stirling2`."""
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2_recurrence(n - 1, k) + stirling2_recurrence(n - 1, k - 1)


def double_factorial(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def sigma_direct(m: int, n: int) -> Fraction:
    """sum_{k=0}^m C(m,k) k^n (-1)^k / (k+1/2)_{m+1}, summed term by term."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    half = Fraction(1, 2)
    total = Fraction(0)
    for k in range(m + 1):
        total += Fraction(comb(m, k) * k**n * (-1) ** k) / pochhammer(k + half, m + 1)
    return total


@lru_cache(maxsize=None)
def p_poly(n: int) -> UniPoly:
    """p_n(m) = sum_k S(n,k) (-m)_k (1/2)_k (2m-n+1)_{n-k}, as a polynomial in m."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    half = Fraction(1, 2)
    out = UniPoly.zero("m")
    for k in range(n + 1):
        s = stirling2(n, k)
        if s == 0:
            continue
        term = pochhammer_poly(-1, 0, k) * pochhammer_poly(2, 1 - n, n - k)
        out = out + term * (s * pochhammer(half, k))
    return out


def sigma_closed(m: int, n: int) -> Fraction:
    """Closed form 2*4^m (2m-n)! p_n(m) / (m! (4m+1)!!).

    Only defined for 2m >= n; the boundary 2m = n-1 would need (-1)!.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if 2 * m < n:
        raise ValueError(f"sigma_closed needs 2m >= n, got m={m}, n={n}")
    scale = Fraction(2 * 4**m * factorial(2 * m - n), factorial(m) * double_factorial(4 * m + 1))
    return scale * p_poly(n)(m)
