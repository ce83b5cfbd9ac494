"""Exact linear algebra over the rationals and integers.

Fraction-free (Bareiss) determinants, exact rank and echelon pivots,
Ryser permanents and integer k-th roots.  Everything here is pure and
deterministic; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def matrix_rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Exact rank of a rectangular matrix over the rationals."""
    if not rows:
        raise ValueError("matrix must be nonempty")
    m = [[Fraction(e) for e in row] for row in rows]
    ncols = len(m[0])
    if any(len(row) != ncols for row in m):
        raise ValueError("ragged matrix")
    rank = 0
    col = 0
    while rank < len(m) and col < ncols:
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                f = m[r][col] / pr[col]
                m[r] = [a - f * b for a, b in zip(m[r], pr)]
        rank += 1
        col += 1
    return rank


def row_echelon_pivots(
    rows: Sequence[Sequence[Fraction | int]],
) -> tuple[int, list[int], list[int]]:
    """Echelonize scanning rows in input order, pivot columns left to right.

    Returns (rank, pivot_row_indices, pivot_column_indices).  The selected
    rows form the lexicographically first maximal independent row set, and
    for those rows the pivot columns are the leftmost choice.
    """
    if not rows:
        raise ValueError("matrix must be nonempty")
    ncols = len(rows[0])
    pivots: list[tuple[int, list[Fraction]]] = []  # (col, reduced row)
    pivot_rows: list[int] = []
    for ri, row in enumerate(rows):
        v = [Fraction(e) for e in row]
        for col, pv in pivots:
            if v[col] != 0:
                f = v[col] / pv[col]
                v = [a - f * b for a, b in zip(v, pv)]
        lead = next((c for c in range(ncols) if v[c] != 0), None)
        if lead is not None:
            pivots.append((lead, v))
            pivot_rows.append(ri)
    cols = [c for c, _ in pivots]
    return len(pivots), pivot_rows, cols


def _int_exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r != 0:
        raise ArithmeticError("inexact integer division in fraction-free elimination")
    return q


def bareiss_determinant(rows: Sequence[Sequence[T]], exact_div: Callable[[T, T], T]) -> T:
    """Fraction-free determinant over any integral domain.

    `exact_div` must perform the (guaranteed exact) division by the previous
    pivot.  Works for ints, Fractions and univariate polynomials alike.
    """
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("square nonempty matrix required")
    a = [list(r) for r in rows]
    zero = a[0][0] - a[0][0]
    sign = 1
    prev: T | None = None
    for k in range(n - 1):
        if a[k][k] == zero:
            pivot = next((r for r in range(k + 1, n) if a[r][k] != zero), None)
            if pivot is None:
                return zero
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else exact_div(num, prev)
            a[i][k] = zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by Bareiss elimination."""
    for row in rows:
        for e in row:
            if not isinstance(e, int):
                raise TypeError("integer matrix required")
    return bareiss_determinant(rows, _int_exact_div)


def fraction_determinant(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Exact determinant over the rationals (plain division is already exact)."""
    m = [[Fraction(e) for e in row] for row in rows]
    return bareiss_determinant(m, lambda a, b: a / b)


def ryser_permanent(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Permanent by Ryser's inclusion-exclusion; exponential in the size."""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("square nonempty matrix required")
    a = [[Fraction(e) for e in row] for row in rows]
    total = Fraction(0)
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = Fraction(1)
        for i in range(n):
            s = sum(a[i][j] for j in cols)
            if s == 0:
                prod = Fraction(0)
                break
            prod *= s
        if prod:
            total += prod if (n - len(cols)) % 2 == 0 else -prod
    return total


def integer_kth_root_ceiling(v: Fraction | int, k: int) -> int:
    """Smallest natural m with m**k >= v, for v > 0 and k >= 1."""
    v = Fraction(v)
    if v <= 0:
        raise ValueError("v must be positive")
    if k < 1:
        raise ValueError("k must be >= 1")
    hi = 1
    while Fraction(hi) ** k < v:
        hi *= 2
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid) ** k >= v:
            hi = mid
        else:
            lo = mid + 1
    return hi
