"""Sparse exact bivariate polynomials in x, y over Q.

Provides parsing/printing in a small text grammar, partial derivatives,
divisibility, resultants eliminating y, and the corner-index used to build
punctured monomial sets.  Term order is graded lexicographic with x taking
priority inside each total degree; printing lists highest terms first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from .exactlinalg import bareiss_determinant
from .unipoly import UniPoly

ExponentPair = tuple[int, int]


class PolyParseError(ValueError):
    """Syntax error while parsing polynomial text; carries the position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ResultantDomainError(ValueError):
    """Resultant eliminating y needs positive y-degree on both sides."""


def term_order_key(j: ExponentPair) -> tuple[int, int]:
    """Sort key: ascending total degree, x-power breaking ties (1, x, y, x^2, x*y, y^2, ...)."""
    return (j[0] + j[1], j[1])


def display_order_key(j: ExponentPair) -> tuple[int, int]:
    """Sort key for printing: highest total degree first, x before y inside a degree."""
    return (j[0] + j[1], j[0])


class BiPoly:
    """Immutable sparse bivariate polynomial keyed by (x-exponent, y-exponent)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[ExponentPair, Fraction | int] | Iterable[tuple[ExponentPair, Fraction | int]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExponentPair, Fraction] = {}
        for (j1, j2), c in items:
            if j1 < 0 or j2 < 0:
                raise ValueError("negative exponent")
            c = Fraction(c)
            if c == 0:
                continue
            key = (int(j1), int(j2))
            c = acc.get(key, Fraction(0)) + c
            if c == 0:
                acc.pop(key, None)
            else:
                acc[key] = c
        object.__setattr__(self, "terms", dict(acc))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(c: Fraction | int) -> BiPoly:
        return BiPoly({(0, 0): Fraction(c)})

    @staticmethod
    def monomial(j1: int, j2: int, c: Fraction | int = 1) -> BiPoly:
        return BiPoly({(j1, j2): Fraction(c)})

    @staticmethod
    def var_x() -> BiPoly:
        return BiPoly.monomial(1, 0)

    @staticmethod
    def var_y() -> BiPoly:
        return BiPoly.monomial(0, 1)

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((j1 + j2 for j1, j2 in self.terms), default=-1)

    def degree_x(self) -> int:
        return max((j1 for j1, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j2 for _, j2 in self.terms), default=-1)

    def leading_term(self) -> tuple[ExponentPair, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        j = max(self.terms, key=display_order_key)
        return j, self.terms[j]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"BiPoly({self.pretty()!r})"

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> BiPoly:
        return BiPoly({j: -c for j, c in self.terms.items()})

    def __add__(self, other: BiPoly) -> BiPoly:
        out = dict(self.terms)
        for j, c in other.terms.items():
            s = out.get(j, Fraction(0)) + c
            if s == 0:
                out.pop(j, None)
            else:
                out[j] = s
        return BiPoly(out)

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other: "BiPoly | Fraction | int") -> BiPoly:
        if isinstance(other, (Fraction, int)):
            return BiPoly({j: c * other for j, c in self.terms.items()})
        out: dict[ExponentPair, Fraction] = {}
        for (a1, a2), ca in self.terms.items():
            for (b1, b2), cb in other.terms.items():
                key = (a1 + b1, a2 + b2)
                s = out.get(key, Fraction(0)) + ca * cb
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiPoly:
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation and specialization ---------------------------------------

    def evaluate(self, x: Fraction | int, y: Fraction | int) -> Fraction:
        total = Fraction(0)
        xp: dict[int, Fraction] = {}
        yp: dict[int, Fraction] = {}
        for (j1, j2), c in self.terms.items():
            if j1 not in xp:
                xp[j1] = Fraction(x) ** j1
            if j2 not in yp:
                yp[j2] = Fraction(y) ** j2
            total += c * xp[j1] * yp[j2]
        return total

    def at_x(self, x0: Fraction | int) -> UniPoly:
        """Specialize x = x0; the result is a univariate polynomial in y."""
        deg = self.degree_y()
        coeffs = [Fraction(0)] * (deg + 1)
        for (j1, j2), c in self.terms.items():
            coeffs[j2] += c * Fraction(x0) ** j1
        return UniPoly(coeffs)

    def at_y(self, y0: Fraction | int) -> UniPoly:
        deg = self.degree_x()
        coeffs = [Fraction(0)] * (deg + 1)
        for (j1, j2), c in self.terms.items():
            coeffs[j1] += c * Fraction(y0) ** j2
        return UniPoly(coeffs)

    def as_unipoly_x(self) -> UniPoly:
        """Reinterpret a y-free polynomial as univariate in x."""
        if self.degree_y() > 0:
            raise ValueError("polynomial depends on y")
        return self.at_y(0)

    def y_coefficients(self) -> list[UniPoly]:
        """Coefficients of powers of y; each one a univariate polynomial in x."""
        degy = self.degree_y()
        degx = self.degree_x()
        rows: list[list[Fraction]] = [[Fraction(0)] * (degx + 1) for _ in range(degy + 1)]
        for (j1, j2), c in self.terms.items():
            rows[j2][j1] = c
        return [UniPoly(r) for r in rows]

    @staticmethod
    def from_y_coefficients(coeffs: Iterable[UniPoly]) -> BiPoly:
        terms: dict[ExponentPair, Fraction] = {}
        for j2, u in enumerate(coeffs):
            for j1, c in enumerate(u.coeffs):
                if c:
                    terms[(j1, j2)] = c
        return BiPoly(terms)

    def swap_xy(self) -> BiPoly:
        return BiPoly({(j2, j1): c for (j1, j2), c in self.terms.items()})

    # -- normalization ---------------------------------------------------------

    def primitive_integer(self) -> BiPoly:
        """Positive rational rescaling to integer coefficients with gcd 1,
        leading coefficient (display order) positive."""
        if self.is_zero():
            return self
        denom = 1
        for c in self.terms.values():
            denom = lcm(denom, c.denominator)
        ints = {j: int(c * denom) for j, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        scaled = {j: Fraction(v, g) for j, v in ints.items()}
        lead = max(scaled, key=display_order_key)
        if scaled[lead] < 0:
            scaled = {j: -c for j, c in scaled.items()}
        return BiPoly(scaled)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # -- printing ---------------------------------------------------------------

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for j in sorted(self.terms, key=display_order_key, reverse=True):
            c = self.terms[j]
            mag = abs(c)
            factors: list[str] = []
            if mag != 1 or j == (0, 0):
                if mag.denominator == 1:
                    factors.append(str(mag.numerator))
                else:
                    factors.append(f"({mag.numerator}/{mag.denominator})")
            j1, j2 = j
            if j1:
                factors.append("x" if j1 == 1 else f"x^{j1}")
            if j2:
                factors.append("y" if j2 == 1 else f"y^{j2}")
            term = "*".join(factors)
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def partial(p: BiPoly, variable: str) -> BiPoly:
    """Exact partial derivative with respect to "x" or "y"."""
    if variable == "x":
        return BiPoly({(j1 - 1, j2): c * j1 for (j1, j2), c in p.terms.items() if j1 > 0})
    if variable == "y":
        return BiPoly({(j1, j2 - 1): c * j2 for (j1, j2), c in p.terms.items() if j2 > 0})
    raise ValueError("variable must be 'x' or 'y'")


def corner_index(p: BiPoly) -> int:
    """Largest i such that x^(d-i)*y^i occurs among the top-degree terms."""
    d = p.degree
    if d < 1:
        raise ValueError("polynomial must be nonconstant")
    tops = [j2 for (j1, j2) in p.terms if j1 + j2 == d]
    return max(tops)


def divides(f: BiPoly, g: BiPoly) -> bool:
    """True iff g = f * h for some polynomial h, by exact term reduction."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if g.is_zero():
        return True
    (lt1, lt2), lc = f.leading_term()
    r = g
    while not r.is_zero():
        (m1, m2), c = r.leading_term()
        if m1 < lt1 or m2 < lt2:
            return False
        q = BiPoly.monomial(m1 - lt1, m2 - lt2, c / lc)
        r = r - q * f
    return True


# -- resultants ------------------------------------------------------------

_SYLVESTER_LIMIT = 14


def _sylvester_resultant(fc: list[UniPoly], gc: list[UniPoly]) -> UniPoly:
    """Determinant of the Sylvester matrix w.r.t. y; entries live in Q[x]."""
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = UniPoly([])
    rows: list[list[UniPoly]] = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(fc)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(gc)):
            row[i + k] = c
        rows.append(row)
    return bareiss_determinant(rows, lambda a, b: a // b)


def _pseudo_remainder(fc: list[UniPoly], gc: list[UniPoly]) -> list[UniPoly]:
    """Pseudo-remainder of f by g in y: lc(g)^(deg f - deg g + 1) * f mod g."""
    m, n = len(fc) - 1, len(gc) - 1
    lead = gc[-1]
    r = list(fc)
    for i in range(m, n - 1, -1):
        top = r[i]
        r = [c * lead for c in r]
        if not top.is_zero():
            for k in range(n + 1):
                r[i - n + k] = r[i - n + k] - top * gc[k]
        r = r[:i]
    while r and r[-1].is_zero():
        r.pop()
    return r


def _euclid_resultant(fc: list[UniPoly], gc: list[UniPoly]) -> UniPoly:
    """Resultant via pseudo-remainder descent, tracking leading-coefficient powers."""
    m, n = len(fc) - 1, len(gc) - 1
    if m < n:
        res = _euclid_resultant(gc, fc)
        return -res if (m * n) % 2 else res
    if n == 0:
        # Res(f, const) = const^deg(f)
        return gc[0] ** m
    r = _pseudo_remainder(fc, gc)
    if not r:
        return UniPoly([])
    degr = len(r) - 1
    sub = _euclid_resultant(gc, r)
    sign = -1 if (m * n) % 2 else 1
    # lc(g)^(m - degr - n*(m - n + 1)) scales Res(g, r) up to Res(g, f)
    e = m - degr - n * (m - n + 1)
    lead = gc[-1]
    if e >= 0:
        out = sub * lead**e
    else:
        out = sub // lead ** (-e)
    return -out if sign < 0 else out


def resultant_eliminating_y(p: BiPoly, q: BiPoly) -> UniPoly:
    """Sylvester resultant of p and q with respect to y, as a polynomial in x."""
    if p.degree_y() < 1 or q.degree_y() < 1:
        raise ResultantDomainError("resultant requires positive y-degree")
    fc, gc = p.y_coefficients(), q.y_coefficients()
    if len(fc) + len(gc) - 2 <= _SYLVESTER_LIMIT:
        return _sylvester_resultant(fc, gc)
    return _euclid_resultant(fc, gc)


# -- ingestion sanity check ---------------------------------------------------


class IngestionError(ValueError):
    """The input curve failed the cheap necessary checks."""


def ingestion_check(f: BiPoly) -> BiPoly:
    """Necessary (not sufficient) checks for an irreducible input curve.

    Returns the primitive integer normalization.  Rejects constants and
    repeated factors (detected through the resultant with the y- or
    x-derivative vanishing identically).  Full irreducibility is a documented
    precondition and is not verified.
    """
    if f.is_zero() or f.degree < 1:
        raise IngestionError("curve must be a nonconstant polynomial")
    g = f.primitive_integer()
    fy = partial(g, "y")
    if g.degree_y() >= 1 and not fy.is_zero():
        if g.degree_y() >= 1 and fy.degree_y() >= 0:
            if fy.degree_y() >= 1:
                if resultant_eliminating_y(g, fy).is_zero():
                    raise IngestionError("curve has a repeated factor")
            else:
                # fy is y-free; a repeated factor would force gcd checks in x
                pass
    else:
        fx = partial(g, "x")
        if fx.is_zero():
            raise IngestionError("curve must be a nonconstant polynomial")
        gs = g.swap_xy()
        fxs = partial(gs, "y")
        if gs.degree_y() >= 1 and fxs.degree_y() >= 1:
            if resultant_eliminating_y(gs, fxs).is_zero():
                raise IngestionError("curve has a repeated factor")
    return g


# -- parsing -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])

    def parse_expr(self) -> BiPoly:
        sign = 1
        if self.peek() == "+":
            self.take()
        elif self.peek() == "-":
            self.take()
            sign = -1
        acc = self.parse_term() * sign
        while True:
            ch = self.peek()
            if ch == "+":
                self.take()
                acc = acc + self.parse_term()
            elif ch == "-":
                self.take()
                acc = acc - self.parse_term()
            else:
                return acc

    def parse_term(self) -> BiPoly:
        acc = self.parse_factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> BiPoly:
        base = self.parse_atom()
        if self.peek() == "^":
            self.take()
            return base ** self.natural()
        return base

    def parse_atom(self) -> BiPoly:
        ch = self.peek()
        if ch == "(":
            self.take()
            saved = self.pos
            lit = self._try_rational_literal()
            if lit is not None:
                return BiPoly.constant(lit)
            self.pos = saved
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if ch == "x":
            self.take()
            return BiPoly.var_x()
        if ch == "y":
            self.take()
            return BiPoly.var_y()
        if ch.isdigit():
            return BiPoly.constant(self.natural())
        if ch.isalpha():
            raise self.error(f"unknown variable {ch!r}; only x and y are allowed")
        raise self.error("expected a number, variable, or parenthesis")

    def _try_rational_literal(self) -> Fraction | None:
        # inside '(': optional sign, integer, '/', natural, ')'
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        if not self.peek().isdigit():
            return None
        num = self.natural()
        if self.peek() != "/":
            return None
        self.take()
        if not self.peek().isdigit():
            return None
        den = self.natural()
        if self.peek() != ")":
            return None
        self.take()
        if den == 0:
            raise self.error("zero denominator")
        return Fraction(sign * num, den)


def parse(text: str) -> BiPoly:
    """Parse polynomial text: rationals `a` or `(a/b)`, variables x and y,
    operators + - *, exponent ^ with natural exponents, and parentheses."""
    parser = _Parser(text)
    result = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        raise parser.error("trailing characters")
    return result
