"""Univariate polynomials over Q with Sturm-sequence real root isolation.

All decisions (root counts, signs, refinements) are made in exact rational
arithmetic.  Roots are reported as rational-endpoint isolating intervals;
a degenerate interval [r, r] marks an exactly known rational root.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence


class ZeroPolynomialError(ValueError):
    """An operation that needs a nonzero polynomial received the zero one."""


class UniPoly:
    """Dense univariate polynomial; coefficient index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int]) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- basic structure ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    # -- arithmetic ------------------------------------------------------

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other: "UniPoly | Fraction | int") -> UniPoly:
        if isinstance(other, (Fraction, int)):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.leading
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / lc
            q[i - d] = f
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= f * c
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        """Exact division; raises if the remainder is nonzero."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    # -- calculus and evaluation -----------------------------------------

    def evaluate(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def primitive(self) -> UniPoly:
        """Scale by a positive rational to integer coefficients with gcd 1."""
        if self.is_zero():
            return self
        denom = 1
        for c in self.coeffs:
            denom = lcm(denom, c.denominator)
        ints = [int(c * denom) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return UniPoly([Fraction(v, g) for v in ints])

    def pretty(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if mag.denominator == 1:
                coeff = str(mag.numerator)
            else:
                coeff = f"({mag.numerator}/{mag.denominator})"
            if i == 0:
                term = coeff
            else:
                base = var if i == 1 else f"{var}^{i}"
                term = base if mag == 1 else f"{coeff}*{base}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def poly_from_ints(values: Sequence[int]) -> UniPoly:
    return UniPoly([Fraction(v) for v in values])


def _int_coeffs(p: UniPoly) -> list[int]:
    """Primitive integer coefficient list (positive content scaling)."""
    denom = 1
    for c in p.coeffs:
        denom = lcm(denom, c.denominator)
    ints = [int(c * denom) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def _int_primitive(v: list[int]) -> list[int]:
    while v and v[-1] == 0:
        v.pop()
    g = 0
    for c in v:
        g = gcd(g, c)
    return [c // g for c in v] if g > 1 else v


def _int_prem_signed(f: list[int], g: list[int]) -> list[int]:
    """Integer remainder of c*f by g for some positive rational c > 0.

    Plain pseudo-remainders scale by lc(g)^(deg f - deg g + 1), which may be
    negative; the sign is corrected so the result is a positive multiple of
    the true remainder, as Sturm chains require.
    """
    lead = g[-1]
    n = len(g) - 1
    r = list(f)
    steps = 0
    while len(r) - 1 >= n:
        top = r[-1]
        steps += 1
        r = [c * lead for c in r[:-1]]
        if top:
            off = len(r) - n
            for k in range(n):
                r[off + k] -= top * g[k]
        while r and r[-1] == 0:
            r.pop()
    if lead < 0 and steps % 2:
        r = [-c for c in r]
    return _int_primitive(r)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q via a primitive integer remainder sequence."""
    if a.is_zero():
        return b if b.is_zero() else b * (1 / b.leading)
    if b.is_zero():
        return a * (1 / a.leading)
    fa, fb = _int_coeffs(a), _int_coeffs(b)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        fa, fb = fb, _int_prem_signed(fa, fb)
    g = UniPoly(fa)
    return g * (1 / g.leading)


@lru_cache(maxsize=512)
def squarefree_part(p: UniPoly) -> UniPoly:
    """p divided by gcd(p, p'): same roots, all simple."""
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if p.degree == 0:
        return UniPoly([1])
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p
    return p // g


def sign_variations(values: Iterable[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


@lru_cache(maxsize=512)
def sturm_chain(p: UniPoly) -> tuple[UniPoly, ...]:
    """Sturm chain of p, built as a sign-faithful primitive integer remainder
    sequence (every element is a positive rational multiple of the classical
    chain element, so sign variations are unchanged)."""
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    cur = _int_coeffs(p)
    chain = [cur]
    d = UniPoly(cur).derivative()
    if not d.is_zero():
        chain.append(_int_coeffs(d))
        while True:
            r = _int_prem_signed(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-c for c in r])
    return tuple(UniPoly(c) for c in chain)


def _variations_at(chain: Sequence[UniPoly], x: Fraction) -> int:
    return sign_variations([q.evaluate(x) for q in chain])


def count_real_roots(p: UniPoly, lo: Fraction | int, hi: Fraction | int) -> int:
    """Number of distinct real roots of p in the closed interval [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    sf = squarefree_part(p)
    n = 0
    if sf.evaluate(lo) == 0:
        n += 1
        sf = sf // UniPoly([-lo, 1])
    if hi > lo and sf.evaluate(hi) == 0:
        n += 1
        sf = sf // UniPoly([-hi, 1])
    if hi == lo or sf.degree < 1:
        return n
    chain = sturm_chain(sf)
    return n + _variations_at(chain, lo) - _variations_at(chain, hi)


@dataclass(frozen=True)
class RootInterval:
    """Rational-endpoint interval isolating one real root of `polynomial`.

    Either the endpoint polynomial signs differ (simple interior root of the
    squarefree isolating polynomial) or lo == hi is an exact rational root.
    """

    lo: Fraction
    hi: Fraction
    polynomial: UniPoly

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_exact(self) -> bool:
        return self.lo == self.hi


_SPLIT_FRACTIONS = (
    Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4),
    Fraction(3, 4), Fraction(2, 5), Fraction(3, 5), Fraction(1, 5),
    Fraction(4, 5), Fraction(3, 7), Fraction(4, 7),
)


def _nonroot_split(p: UniPoly, a: Fraction, b: Fraction) -> Fraction:
    """A rational point strictly inside (a, b) that is not a root of p."""
    for t in _SPLIT_FRACTIONS:
        m = a + (b - a) * t
        if p.evaluate(m) != 0:
            return m
    # p has finitely many roots; walk a finer grid until one point is free.
    k = 8
    while True:
        for i in range(1, k):
            m = a + (b - a) * Fraction(i, k)
            if p.evaluate(m) != 0:
                return m
        k *= 2


def isolate_real_roots(
    p: UniPoly, lo: Fraction | int, hi: Fraction | int
) -> list[RootInterval]:
    """Disjoint isolating intervals, one per distinct real root in [lo, hi]."""
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial has no isolation")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty range")
    sf = squarefree_part(p)
    out: list[RootInterval] = []
    if sf.evaluate(lo) == 0:
        out.append(RootInterval(lo, lo, sf))
        sf_int = sf // UniPoly([-lo, 1])
    else:
        sf_int = sf
    if hi > lo and sf_int.evaluate(hi) == 0:
        out.append(RootInterval(hi, hi, sf))
        sf_int = sf_int // UniPoly([-hi, 1])
    if hi == lo or sf_int.degree < 1:
        return sorted(out, key=lambda r: r.lo)
    chain = sturm_chain(sf_int)

    def split(a: Fraction, b: Fraction, va: int, vb: int) -> None:
        k = va - vb
        if k == 0:
            return
        if k == 1:
            # reference the deflated polynomial: with an endpoint root
            # deflated away, [a, b] isolates only for the deflated form
            out.append(RootInterval(a, b, sf_int))
            return
        m = _nonroot_split(sf_int, a, b)
        vm = _variations_at(chain, m)
        split(a, m, va, vm)
        split(m, b, vm, vb)

    split(lo, hi, _variations_at(chain, lo), _variations_at(chain, hi))
    return sorted(out, key=lambda r: r.lo)


def refine_root(r: RootInterval, width: Fraction | int) -> RootInterval:
    """Shrink the isolating interval to width <= `width` by exact bisection."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if r.is_exact():
        return r
    p = r.polynomial
    lo, hi = r.lo, r.hi
    s_lo = p.evaluate(lo)
    if s_lo == 0:
        return RootInterval(lo, lo, p)
    if p.evaluate(hi) == 0:
        return RootInterval(hi, hi, p)
    while hi - lo > width:
        m = _nonroot_split(p, lo, hi)
        # keep the half with the sign change
        if (s_lo > 0) != (p.evaluate(m) > 0):
            hi = m
        else:
            lo, s_lo = m, p.evaluate(m)
    return RootInterval(lo, hi, p)


def _same_root(a: RootInterval, b: RootInterval) -> bool:
    """Decide exactly whether two isolating intervals enclose the same real root."""
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return False
    if a.polynomial == b.polynomial:
        return True  # overlapping isolating intervals of one squarefree polynomial
    g = poly_gcd(a.polynomial, b.polynomial)
    if g.degree < 1:
        return False
    # a common root inside both brackets must be each bracket's isolated root
    return count_real_roots(g, lo, hi) > 0


def refine_disjoint(intervals: Sequence[RootInterval], width: Fraction | int) -> list[RootInterval]:
    """Refine to the given width, drop duplicates of the same root, and
    continue refining until the surviving intervals are pairwise disjoint."""
    items = sorted((refine_root(r, width) for r in intervals), key=lambda r: (r.lo, r.hi))
    i = 0
    while i < len(items) - 1:
        a, b = items[i], items[i + 1]
        if a.hi < b.lo:
            i += 1
            continue
        if a.hi == b.lo and not a.is_exact() and not b.is_exact():
            # touching endpoints are fine: both roots are strictly interior
            i += 1
            continue
        if _same_root(a, b):
            del items[i + 1]
            continue
        if not a.is_exact():
            items[i] = refine_root(a, a.width / 4)
        if not b.is_exact():
            items[i + 1] = refine_root(b, b.width / 4)
        items.sort(key=lambda r: (r.lo, r.hi))
    return items


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """B with every real root of p in [-B, B]."""
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if p.degree == 0:
        return Fraction(0)
    lead = abs(p.leading)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


def integer_roots(p: UniPoly) -> list[int]:
    """All integer roots of p, found by isolation plus exact candidate checks."""
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial has no root enumeration")
    if p.degree == 0:
        return []
    b = cauchy_root_bound(p)
    bound = int(b) + 1
    found: set[int] = set()
    for r in isolate_real_roots(p, -bound, bound):
        r = refine_root(r, Fraction(1, 2))
        for k in range(math.ceil(r.lo), math.floor(r.hi) + 1):
            if p.evaluate(k) == 0:
                found.add(k)
    return sorted(found)


def rational_root_in(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction | None:
    """The rational root of p inside the isolating interval [lo, hi], if any.

    Certified both ways: any rational root has denominator dividing the
    leading coefficient of the primitive form, so after refining below the
    spacing of such fractions the single candidate decides it.
    """
    if lo == hi:
        return lo if p.evaluate(lo) == 0 else None
    prim = p.primitive()
    lead = abs(prim.leading.numerator)
    # refine [lo, hi] below 1/(2*lead^2) so at most one denominator-dividing
    # rational fits, then take the best rational approximation
    target = Fraction(1, 2 * lead * lead + 1)
    r = RootInterval(lo, hi, squarefree_part(p))
    r = refine_root(r, target)
    if r.is_exact():
        return r.lo if p.evaluate(r.lo) == 0 else None
    cand = Fraction(r.midpoint()).limit_denominator(lead)
    if r.lo <= cand <= r.hi and p.evaluate(cand) == 0:
        return cand
    return None


def poly_sup_bound(p: UniPoly, lo: Fraction, hi: Fraction, pieces: int = 16) -> Fraction:
    """A certified rational upper bound for sup |p| on [lo, hi].

    Taylor-expand at the left end of each subinterval and bound by the
    coefficient sums; always >= the true supremum, and tight as pieces grow.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if p.is_zero():
        return Fraction(0)
    best = Fraction(0)
    step = (hi - lo) / pieces if hi > lo else Fraction(0)
    for i in range(pieces if hi > lo else 1):
        a = lo + step * i
        w = step
        # coefficients of p(a + t) via iterated derivatives
        bound = Fraction(0)
        q = p
        fact = 1
        k = 0
        wpow = Fraction(1)
        while not q.is_zero():
            bound += abs(q.evaluate(a)) / fact * wpow
            q = q.derivative()
            k += 1
            fact *= k
            wpow *= w
        best = max(best, bound)
    return best
