"""Cover-curve extraction from monomial matrices, greedy covering, and the
exact bound evaluators that certify the covering step.

Thresholds compare C(D,2)-th powers in rational arithmetic, so no irrational
root is ever taken on a decision path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple, Optional, Sequence

from .exactlinalg import (
    integer_determinant,
    integer_kth_root_ceiling,
    row_echelon_pivots,
    ryser_permanent,
)
from .monomials import MonomialSet, non_divisibility_guard
from .poly2 import BiPoly, ExponentPair

PERMANENT_LIMIT_ENV = "LATCURVE_PERMANENT_LIMIT"
_DEFAULT_PERMANENT_LIMIT = 10


class LatticePoint(NamedTuple):
    x: int
    y: int


class BoundMatrixTooLarge(ValueError):
    """The permanent evaluator refuses matrices beyond the configured size."""


@dataclass(frozen=True)
class DerivativeBoundSpec:
    """Certified decay data: |f^(i)(x)/i!| <= X * delta^i for 0 <= i < D."""

    X: Fraction
    delta: Fraction
    N: Fraction

    def __post_init__(self) -> None:
        if self.X <= 0:
            raise ValueError("X must be positive")
        if self.N <= 0:
            raise ValueError("N must be positive")
        if self.delta * self.N < 1:
            raise ValueError("delta * N must be at least 1")


@dataclass
class CoverCertificate:
    """Cover curves plus the run assignment of every input point."""

    curves: list[BiPoly]
    assignment: dict[LatticePoint, int]
    parameters: dict = field(default_factory=dict)

    def runs(self) -> list[list[LatticePoint]]:
        by_curve: list[list[LatticePoint]] = [[] for _ in self.curves]
        for pt, idx in self.assignment.items():
            by_curve[idx].append(pt)
        for run in by_curve:
            run.sort()
        return by_curve


def monomial_matrix(points: Sequence[LatticePoint], mset: MonomialSet) -> list[list[int]]:
    """Row per point, column per monomial in canonical member order."""
    pts = [LatticePoint(*p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    return [[p.x**j1 * p.y**j2 for (j1, j2) in mset.members] for p in pts]


def extract_cover_curve(
    points: Sequence[LatticePoint], mset: MonomialSet
) -> Optional[BiPoly]:
    """A nonzero integer curve in the span vanishing on all points, or None.

    Exists exactly when the monomial matrix has rank below D; the curve is
    the bordered-minor expansion of the first maximal nonsingular minor
    (rows in input order, columns in canonical order), normalized to
    primitive integer coefficients with positive leading coefficient.
    """
    if mset.D < 2:
        raise ValueError("monomial set must have at least two members")
    matrix = monomial_matrix(points, mset)
    rank, pivot_rows, pivot_cols = row_echelon_pivots(matrix) if points else (0, [], [])
    if rank >= mset.D:
        return None
    extra = next(c for c in range(mset.D) if c not in pivot_cols)
    cols = sorted(pivot_cols + [extra])
    base_rows = [[matrix[r][c] for c in cols] for r in pivot_rows]
    terms: dict[ExponentPair, int] = {}
    for pos, c in enumerate(cols):
        minor = [[row[k] for k in range(len(cols)) if k != pos] for row in base_rows]
        det = integer_determinant(minor) if minor else 1
        if det:
            terms[mset.members[c]] = -det if pos % 2 else det
    curve = BiPoly({j: Fraction(v) for j, v in terms.items()})
    return curve.primitive_integer()


def _power_form(interval_length: Fraction, spec: DerivativeBoundSpec, mset: MonomialSet) -> Fraction:
    """(4*delta*|I|)^C(D,2) * (2N)^p * (D*X)^q, all in exact rationals."""
    b = comb(mset.D, 2)
    base = 4 * spec.delta * Fraction(interval_length)
    return base**b * (2 * spec.N) ** mset.p * (mset.D * spec.X) ** mset.q


def segment_coverable(
    interval_length: Fraction | int, spec: DerivativeBoundSpec, mset: MonomialSet
) -> bool:
    """Single-curve test: the power-form product must be strictly below 1."""
    if Fraction(interval_length) < 0:
        raise ValueError("interval length must be nonnegative")
    if mset.D < 2:
        raise ValueError("monomial set must have at least two members")
    return _power_form(Fraction(interval_length), spec, mset) < 1


def curve_budget(
    interval_length: Fraction | int, spec: DerivativeBoundSpec, mset: MonomialSet
) -> int:
    """Integer upper bound for the number of cover curves a segment needs.

    Equals ceil of the C(D,2)-th root of the power-form product, plus one;
    the root is taken by comparing integer powers only.
    """
    length = Fraction(interval_length)
    if length < 0:
        raise ValueError("interval length must be nonnegative")
    if mset.D < 2:
        raise ValueError("monomial set must have at least two members")
    v = _power_form(length, spec, mset)
    if v == 0:
        return 1
    return integer_kth_root_ceiling(v, comb(mset.D, 2)) + 1


def greedy_cover(
    points: Sequence[LatticePoint],
    mset: MonomialSet,
    curve: Optional[BiPoly] = None,
    parameters: Optional[dict] = None,
) -> CoverCertificate:
    """Cover points (strictly increasing x) by maximal consecutive runs.

    Each run is grown while a single curve in the span still vanishes on it;
    when `curve` is given, every emitted cover curve is checked against it
    for divisibility.
    """
    pts = [LatticePoint(*p) for p in points]
    for a, b in zip(pts, pts[1:]):
        if a.x >= b.x:
            raise ValueError("points must be sorted with strictly increasing x")
    curves: list[BiPoly] = []
    assignment: dict[LatticePoint, int] = {}
    start = 0
    while start < len(pts):
        end = start + 1
        cover = extract_cover_curve(pts[start:end], mset)
        if cover is None:
            raise ValueError("monomial set cannot cover even a single point")
        while end < len(pts):
            candidate = extract_cover_curve(pts[start : end + 1], mset)
            if candidate is None:
                break
            cover, end = candidate, end + 1
        if curve is not None:
            non_divisibility_guard(curve, cover)
        idx = len(curves)
        curves.append(cover)
        for p in pts[start:end]:
            assignment[p] = idx
        start = end
    return CoverCertificate(curves, assignment, dict(parameters or {}))


def fj_derivative_bound(
    j: ExponentPair, i: int, spec: DerivativeBoundSpec
) -> Fraction:
    """Decay bound (2N)^j1 * (i X)^j2 * delta^(i-1) for x^j1 f^j2 at level i."""
    if i < 1:
        raise ValueError("derivative level i must be >= 1")
    j1, j2 = j
    return (2 * spec.N) ** j1 * (i * spec.X) ** j2 * spec.delta ** (i - 1)


def _permanent_limit() -> int:
    raw = os.environ.get(PERMANENT_LIMIT_ENV)
    if raw is None:
        return _DEFAULT_PERMANENT_LIMIT
    try:
        return int(raw)
    except ValueError:
        return _DEFAULT_PERMANENT_LIMIT


def interpolation_determinant_bound(
    xs: Sequence[Fraction | int], bounds: Sequence[Sequence[Fraction | int]]
) -> Fraction:
    """Node-spread times permanent: the exact evaluation-determinant bound.

    prod_{i>j} |x_i - x_j| multiplied by the permanent of the entry-wise
    derivative bounds; the permanent uses Ryser's method and refuses sizes
    beyond the configured cap.
    """
    n = len(xs)
    if n == 0:
        raise ValueError("need at least one node")
    if len(bounds) != n or any(len(row) != n for row in bounds):
        raise ValueError("bound matrix must be n x n")
    if any(Fraction(e) < 0 for row in bounds for e in row):
        raise ValueError("bounds must be nonnegative")
    if n > _permanent_limit():
        raise BoundMatrixTooLarge("bound matrix too large")
    spread = Fraction(1)
    vals = [Fraction(v) for v in xs]
    for i in range(n):
        for j in range(i):
            spread *= abs(vals[i] - vals[j])
    if spread == 0:
        return Fraction(0)
    return spread * ryser_permanent(bounds)
