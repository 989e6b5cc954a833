"""Exact rational polynomials in one and two variables, and real-root machinery.

Everything here works over ``fractions.Fraction``; root counting internally
clears denominators and runs integer pseudo-remainder sequences, which keeps
coefficient growth in check without ever leaving exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Sequence

NEG_INF = float("-inf")

__all__ = [
    "NEG_INF",
    "UniPoly",
    "BiPoly",
    "RootIsolation",
    "as_fraction",
    "poly_gcd",
    "sturm_chain",
    "sturm_count",
    "squarefree_part",
    "squarefree_decomposition",
    "real_root_count",
    "real_root_count_with_multiplicity",
    "has_only_real_roots",
    "is_nonnegative_on_reals",
    "isolate_real_roots",
    "cauchy_bound",
    "wronskian",
    "resultant",
    "discriminant",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings ("3/4", "0.25") to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _strip(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class UniPoly:
    """Dense univariate polynomial, coefficients stored constant-term first.

    Instances are immutable. ``p(a)`` evaluates at a rational, ``p(q)`` with
    another UniPoly composes.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        object.__setattr__(self, "coeffs", tuple(_strip([as_fraction(c) for c in coeffs])))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    def __reduce__(self):
        return (UniPoly, (self.coeffs, self.var))

    @classmethod
    def zero(cls, var: str = "x") -> "UniPoly":
        return cls((), var)

    @classmethod
    def one(cls, var: str = "x") -> "UniPoly":
        return cls((1,), var)

    @classmethod
    def constant(cls, c, var: str = "x") -> "UniPoly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, n: int, c=1, var: str = "x") -> "UniPoly":
        return cls([0] * n + [c], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "x") -> "UniPoly":
        out = cls.one(var)
        for r in roots:
            out = out * cls((-as_fraction(r), 1), var)
        return out

    @property
    def degree(self):
        """Index of the leading coefficient; ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, BiPoly):
            raise TypeError("cannot mix UniPoly and BiPoly")
        return UniPoly((as_fraction(other),), self.var)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return UniPoly.zero(self.var)
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return UniPoly(out, self.var)
        if isinstance(other, BiPoly):
            return NotImplemented
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return UniPoly([c * a for a in self.coeffs], self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_fraction(other)
        return UniPoly([a / c for a in self.coeffs], self.var)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out, base = UniPoly.one(self.var), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lb = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            shift = len(rem) - 1 - db
            q = rem[-1] / lb
            quot[shift] = q
            for i, b in enumerate(other.coeffs):
                rem[i + shift] -= q * b
            rem.pop()
            _strip(rem)
        return UniPoly(quot, self.var), UniPoly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, value):
        if isinstance(value, UniPoly):
            return self.compose(value)
        value = as_fraction(value)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * value + c
        return out

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """self(inner(x)) by Horner's scheme."""
        out = UniPoly.zero(inner.var)
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def derivative(self, k: int = 1) -> "UniPoly":
        coeffs = list(self.coeffs)
        for _ in range(k):
            coeffs = [i * c for i, c in enumerate(coeffs)][1:]
        return UniPoly(coeffs, self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self / self.lc

    def scale_var(self, c) -> "UniPoly":
        """p(c x)."""
        c = as_fraction(c)
        return UniPoly([a * c**i for i, a in enumerate(self.coeffs)], self.var)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    def sign_at(self, value) -> int:
        v = self(value)
        return (v > 0) - (v < 0)

    def __repr__(self):
        return f"UniPoly({self}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = str(abs(c)) + ("*" + mono if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "coeffs": {str(k): _format_fraction(c) for k, c in enumerate(self.coeffs) if c},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "UniPoly":
        items = {int(k): Fraction(v) for k, v in data["coeffs"].items()}
        n = max(items, default=-1) + 1
        return cls([items.get(k, 0) for k in range(n)], data.get("var", "x"))


class BiPoly:
    """Sparse bivariate polynomial: ``{(i, j): c}`` means c * x^i * y^j."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms: Mapping | None = None, vars: tuple[str, str] = ("x", "y")):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "vars", tuple(vars))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    def __reduce__(self):
        return (BiPoly, (self.terms, self.vars))

    @classmethod
    def from_y_coeffs(cls, coeffs: Sequence[UniPoly], vars=("x", "y")) -> "BiPoly":
        """sum_k coeffs[k](x) * y^k."""
        terms = {}
        for j, p in enumerate(coeffs):
            for i, c in enumerate(p.coeffs):
                if c:
                    terms[(i, j)] = c
        return cls(terms, vars)

    def y_coeffs(self) -> list[UniPoly]:
        """Inverse of :meth:`from_y_coeffs`."""
        if not self.terms:
            return []
        dy = max(j for _, j in self.terms)
        rows = [dict() for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        out = []
        for row in rows:
            n = max(row, default=-1) + 1
            out.append(UniPoly([row.get(i, 0) for i in range(n)], self.vars[0]))
        return out

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, which: int) -> int | float:
        if not self.terms:
            return NEG_INF
        return max(key[which] for key in self.terms)

    def _lift(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, UniPoly):
            raise TypeError("arity mismatch: cannot combine BiPoly with UniPoly")
        return BiPoly({(0, 0): as_fraction(other)}, self.vars)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BiPoly({(0, 0): other}).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()}, self.vars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out, self.vars)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            out: dict = {}
            for (i1, j1), c1 in self.terms.items():
                for (i2, j2), c2 in other.terms.items():
                    key = (i1 + i2, j1 + j2)
                    out[key] = out.get(key, 0) + c1 * c2
            return BiPoly(out, self.vars)
        if isinstance(other, UniPoly):
            raise TypeError("arity mismatch: cannot combine BiPoly with UniPoly")
        c = as_fraction(other)
        return BiPoly({k: c * v for k, v in self.terms.items()}, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = BiPoly({(0, 0): 1}, self.vars)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x, y) -> Fraction:
        x, y = as_fraction(x), as_fraction(y)
        return sum((c * x**i * y**j for (i, j), c in self.terms.items()), Fraction(0))

    def diff(self, which: int = 0) -> "BiPoly":
        """Partial derivative in x (which=0) or y (which=1)."""
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[which]
            if e:
                key = (i - 1, j) if which == 0 else (i, j - 1)
                out[key] = c * e
        return BiPoly(out, self.vars)

    def substitute_y(self, g: UniPoly) -> UniPoly:
        """The univariate polynomial self(x, g(x))."""
        out = UniPoly.zero(self.vars[0])
        for cy in reversed(self.y_coeffs()):
            out = out * g + cy
        return out

    def substitute(self, fx: UniPoly | None = None, fy: UniPoly | None = None) -> "BiPoly":
        """self(fx(x), fy(y)); a missing substitution leaves that variable alone."""
        def as_bi(p: UniPoly, which: int) -> BiPoly:
            return BiPoly({((k, 0) if which == 0 else (0, k)): c for k, c in enumerate(p.coeffs)}, self.vars)

        X = as_bi(fx, 0) if fx is not None else BiPoly({(1, 0): 1}, self.vars)
        Y = as_bi(fy, 1) if fy is not None else BiPoly({(0, 1): 1}, self.vars)
        out = BiPoly({}, self.vars)
        for (i, j), c in self.terms.items():
            out = out + (X**i) * (Y**j) * c
        return out

    def rename(self, vars: tuple[str, str]) -> "BiPoly":
        return BiPoly(self.terms, vars)

    def __repr__(self):
        return f"BiPoly({self}, vars={self.vars!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        x, y = self.vars
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[0] + k[1], k), reverse=True):
            c = self.terms[(i, j)]
            mono = "*".join(
                s for s in (
                    (x if i == 1 else f"{x}^{i}") if i else "",
                    (y if j == 1 else f"{y}^{j}") if j else "",
                ) if s
            )
            body = mono if mono and abs(c) == 1 else (str(abs(c)) + ("*" + mono if mono else ""))
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "coeffs": {f"{i},{j}": _format_fraction(c) for (i, j), c in sorted(self.terms.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BiPoly":
        terms = {}
        for key, v in data["coeffs"].items():
            i, j = (int(s) for s in key.split(","))
            terms[(i, j)] = Fraction(v)
        return cls(terms, tuple(data.get("vars", ("x", "y"))))


# --- integer polynomial kernels -------------------------------------------
# Lists of ints, constant term first. Every transformation below multiplies by
# a *positive* scalar unless noted, so signs (and hence Sturm counts) survive.


def _to_primitive_ints(coeffs: Sequence[Fraction]) -> list[int]:
    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    return _primitive(ints)


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return a
    if g <= 1:
        return a
    return [c // g for c in a]


def _int_derivative(a: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(a)][1:]


def _int_prem(a: list[int], b: list[int]) -> tuple[list[int], int]:
    """Pseudo-remainder r with r = lc(b)^steps * rem(a, b); returns (r, steps)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = 0
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, bc in enumerate(b):
            r[i + shift] -= lr * bc
        r.pop()
        _strip(r)
        steps += 1
    return r, steps


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _primitive(list(a)), _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r, _ = _int_prem(a, b)
        a, b = b, _primitive(r)
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _int_exact_div(a: list[int], b: list[int]) -> list[int]:
    """a / b for primitive b dividing a over Q; the quotient is integral up to content."""
    rem = [Fraction(c) for c in a]
    db = len(b) - 1
    quot = [Fraction(0)] * (len(a) - db)
    while rem and len(rem) - 1 >= db:
        shift = len(rem) - 1 - db
        q = rem[-1] / b[-1]
        quot[shift] = q
        for i, bc in enumerate(b):
            rem[i + shift] -= q * bc
        rem.pop()
        _strip(rem)
    assert not rem, "inexact polynomial division"
    return _to_primitive_ints(quot)


def _int_sturm_chain(a: list[int]) -> list[list[int]]:
    chain = [a, _primitive(_int_derivative(a))]
    while chain[-1]:
        prev, cur = chain[-2], chain[-1]
        r, steps = _int_prem(prev, cur)
        # rem = r / lc^steps; a negative lc with odd steps flips the sign.
        if cur[-1] < 0 and steps % 2:
            r = [-c for c in r]
        chain.append(_primitive([-c for c in r]))
    chain.pop()
    return chain


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _int_sign_at(a: list[int], x: Fraction | float) -> int:
    if x == float("inf"):
        return _sign(a[-1])
    if x == NEG_INF:
        return _sign(a[-1]) * (-1 if (len(a) - 1) % 2 else 1)
    x = as_fraction(x)
    u, v = x.numerator, x.denominator
    d = len(a) - 1
    # v^d * a(u/v), homogenised so no Fractions are needed
    total = 0
    upow, vpow = 1, v**d
    for c in a:
        total += c * upow * vpow
        upow *= u
        vpow //= v
    return _sign(total)


def _variations(signs: Iterable[int]) -> int:
    last, count = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _int_real_root_count(a: list[int]) -> int:
    """Distinct real roots of a nonzero integer polynomial."""
    if len(a) <= 1:
        return 0
    chain = _int_sturm_chain(a)
    lo = _variations(_int_sign_at(p, NEG_INF) for p in chain)
    hi = _variations(_int_sign_at(p, float("inf")) for p in chain)
    return lo - hi


def _int_squarefree(a: list[int]) -> list[int]:
    if len(a) <= 2:
        return _primitive(list(a))
    g = _int_gcd(a, _int_derivative(a))
    if len(g) <= 1:
        return _primitive(list(a))
    return _int_exact_div(a, g)


def _require_nonzero(p: UniPoly, what: str) -> None:
    if p.is_zero():
        raise ValueError(f"{what}: the zero polynomial is not allowed")


# --- public root machinery -------------------------------------------------


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero only if both inputs are zero)."""
    if a.is_zero() and b.is_zero():
        return UniPoly.zero(a.var)
    g = _int_gcd(_to_primitive_ints(a.coeffs), _to_primitive_ints(b.coeffs))
    return UniPoly(g, a.var).monic()


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Sturm chain p, p', -rem(p, p'), ... up to positive scalar factors."""
    _require_nonzero(p, "sturm_chain")
    ints = _to_primitive_ints(p.coeffs)
    if len(ints) == 1:
        return [UniPoly(ints, p.var)]
    return [UniPoly(c, p.var) for c in _int_sturm_chain(ints)]


def sturm_count(p: UniPoly, lo=NEG_INF, hi=float("inf")) -> int:
    """Number of distinct real roots of p in (lo, hi]; infinite endpoints allowed."""
    _require_nonzero(p, "sturm_count")
    if lo != NEG_INF:
        lo = as_fraction(lo)
    if hi != float("inf"):
        hi = as_fraction(hi)
    if lo >= hi:
        return 0
    ints = _to_primitive_ints(p.coeffs)
    if len(ints) == 1:
        return 0
    chain = _int_sturm_chain(ints)
    return _variations(_int_sign_at(c, lo) for c in chain) - _variations(_int_sign_at(c, hi) for c in chain)


def real_root_count(p: UniPoly) -> int:
    """Distinct real roots over the whole line."""
    _require_nonzero(p, "real_root_count")
    return _int_real_root_count(_to_primitive_ints(p.coeffs))


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), returned as a primitive integer-coefficient polynomial."""
    _require_nonzero(p, "squarefree_part")
    return UniPoly(_int_squarefree(_to_primitive_ints(p.coeffs)), p.var)


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: p = c * prod a_i^i with each a_i squarefree and coprime.

    Returns the nonconstant strata as (a_i, i) pairs.
    """
    _require_nonzero(p, "squarefree_decomposition")
    if p.degree < 1:
        return []
    dp = p.derivative()
    b = poly_gcd(p, dp)
    c = p // b
    d = dp // b - c.derivative()
    out = []
    i = 1
    while c.degree >= 1:
        a = poly_gcd(c, d)
        c = c // a
        d = d // a - c.derivative()
        if a.degree >= 1:
            out.append((a, i))
        i += 1
    return out


def real_root_count_with_multiplicity(p: UniPoly) -> int:
    _require_nonzero(p, "real_root_count_with_multiplicity")
    return sum(i * real_root_count(a) for a, i in squarefree_decomposition(p))


def has_only_real_roots(p: UniPoly) -> bool:
    """All roots real, via the radical: p and its squarefree part share a root set."""
    _require_nonzero(p, "has_only_real_roots")
    ints = _to_primitive_ints(p.coeffs)
    if len(ints) <= 2:
        return True
    sqf = _int_squarefree(ints)
    return _int_real_root_count(sqf) == len(sqf) - 1


def is_nonnegative_on_reals(p: UniPoly) -> bool:
    """True iff p(x) >= 0 for every real x, decided exactly.

    Zero is fine; otherwise the leading coefficient must be positive and every
    real root must have even multiplicity.
    """
    if p.is_zero():
        return True
    if p.lc < 0:
        return False
    if p.degree == 0:
        return True
    return all(i % 2 == 0 or real_root_count(a) == 0 for a, i in squarefree_decomposition(p))


def cauchy_bound(p: UniPoly) -> Fraction:
    """1 + max |a_i / a_n|; every root lies strictly inside (-bound, bound)."""
    _require_nonzero(p, "cauchy_bound")
    lc = p.lc
    return 1 + max((abs(c / lc) for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootIsolation:
    """Intervals (lo, hi, multiplicity) each holding exactly one distinct real
    root in their interior, plus roots that were hit exactly."""

    intervals: list[tuple[Fraction, Fraction, int]] = field(default_factory=list)
    exact_roots: list[tuple[Fraction, int]] = field(default_factory=list)

    def count_distinct(self) -> int:
        return len(self.intervals) + len(self.exact_roots)

    def to_json(self) -> dict:
        return {
            "intervals": [[_format_fraction(a), _format_fraction(b), m] for a, b, m in self.intervals],
            "exact_roots": [[_format_fraction(r), m] for r, m in self.exact_roots],
        }


def isolate_real_roots(p: UniPoly, precision=Fraction(1, 1000)) -> RootIsolation:
    """Bisection on the squarefree part, starting from the Cauchy bound."""
    _require_nonzero(p, "isolate_real_roots")
    precision = as_fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    if p.degree < 1:
        return RootIsolation()
    strata = squarefree_decomposition(p)
    sqf = squarefree_part(p)

    def multiplicity(lo, hi, exact=None):
        for a, i in strata:
            if exact is not None:
                if a(exact) == 0:
                    return i
            elif sturm_count(a, lo, hi) > 0:
                return i
        raise AssertionError("root not found in any stratum")

    bound = cauchy_bound(sqf)
    intervals, exact = [], {}
    # Half-open (lo, hi] throughout, matching sturm_count.
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = sturm_count(sqf, lo, hi)
        if n == 0:
            continue
        if sqf(hi) == 0:
            exact[hi] = multiplicity(lo, hi, exact=hi)
            if n > 1:
                mid = (lo + hi) / 2
                stack.append((lo, mid))
                stack.append((mid, hi))
            continue
        if n == 1 and hi - lo <= precision:
            intervals.append((lo, hi, multiplicity(lo, hi)))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    intervals.sort()
    return RootIsolation(intervals, sorted(exact.items()))


def wronskian(f: UniPoly, g: UniPoly) -> UniPoly:
    """W[f, g] = f g' - f' g."""
    return f * g.derivative() - f.derivative() * g


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = m[r][col] / pv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def resultant(p: UniPoly, q: UniPoly) -> Fraction:
    """Determinant of the Sylvester matrix of p and q."""
    _require_nonzero(p, "resultant")
    _require_nonzero(q, "resultant")
    m, n = len(p.coeffs) - 1, len(q.coeffs) - 1
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    a = list(reversed(p.coeffs))
    b = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + a + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + b + [Fraction(0)] * (size - n - 1 - i))
    return _det(rows)


def discriminant(p: UniPoly) -> Fraction:
    """(-1)^(d(d-1)/2) res(p, p') / lc(p), for deg p >= 1."""
    _require_nonzero(p, "discriminant")
    d = len(p.coeffs) - 1
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return Fraction(1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(p, p.derivative()) / p.lc
