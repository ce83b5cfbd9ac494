"""Exact linear algebra and univariate root machinery."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from latcurve.exactlinalg import (
    fraction_determinant,
    integer_determinant,
    integer_kth_root_ceiling,
    matrix_rank,
    row_echelon_pivots,
    ryser_permanent,
)
from latcurve.unipoly import (
    RootInterval,
    UniPoly,
    ZeroPolynomialError,
    cauchy_root_bound,
    count_real_roots,
    integer_roots,
    isolate_real_roots,
    poly_gcd,
    poly_sup_bound,
    refine_disjoint,
    refine_root,
    squarefree_part,
)


# -- independent oracles -------------------------------------------------------


def rref_nonzero_rows(rows):
    """Plain Gauss-Jordan; rank = number of surviving nonzero rows."""
    m = [[Fraction(e) for e in row] for row in rows]
    lead = 0
    for r in range(len(m)):
        if lead >= len(m[0]):
            break
        i = r
        while m[i][lead] == 0:
            i += 1
            if i == len(m):
                i = r
                lead += 1
                if lead == len(m[0]):
                    return sum(1 for row in m if any(row))
        m[i], m[r] = m[r], m[i]
        lv = m[r][lead]
        m[r] = [v / lv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][lead] != 0:
                f = m[i][lead]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        lead += 1
    return sum(1 for row in m if any(row))


def cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def naive_sturm_count(p: UniPoly, lo, hi):
    """Distinct roots in [lo, hi] via a from-scratch Sturm chain."""
    sf = squarefree_part(p)
    lo, hi = Fraction(lo), Fraction(hi)
    extra = 0
    if sf.evaluate(lo) == 0:
        extra += 1
        sf = sf // UniPoly([-lo, 1])
    if hi > lo and sf.evaluate(hi) == 0:
        extra += 1
        sf = sf // UniPoly([-hi, 1])
    chain = [sf, sf.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()

    def var(x):
        signs = [q.evaluate(x) for q in chain]
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    if sf.degree < 1:
        return extra
    return extra + var(lo) - var(hi)


# -- matrix_rank ------------------------------------------------------------------


def test_rank_examples():
    assert matrix_rank([[1, 1, 1], [1, 2, 2], [1, 3, 3]]) == 2
    assert matrix_rank([[0] * 3 for _ in range(3)]) == 0
    assert matrix_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3


def test_rank_against_rref_oracle():
    rng = random.Random(7)
    for _ in range(100):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = [
            [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols)]
            for _ in range(rows)
        ]
        assert matrix_rank(m) == rref_nonzero_rows(m)


def test_row_echelon_pivots_prefers_early_rows():
    rank, rows, cols = row_echelon_pivots([[1, 1, 1], [2, 2, 2], [1, 2, 2]])
    assert rank == 2
    assert rows == [0, 2]
    assert cols == [0, 1]


# -- determinants ------------------------------------------------------------------


def test_determinant_examples():
    assert integer_determinant([[2, 1], [1, 2]]) == 3
    assert integer_determinant([[1, 1, 1], [1, 2, 4], [1, 3, 9]]) == 2
    assert integer_determinant([[1, 2], [2, 4]]) == 0


def test_determinant_against_cofactor_oracle():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert integer_determinant(m) == cofactor_det(m)


def test_fraction_determinant_matches_integer():
    rng = random.Random(13)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert fraction_determinant(m) == integer_determinant(m)


def test_permanent_small():
    assert ryser_permanent([[1, 1], [0, 1]]) == 1
    assert ryser_permanent([[1, 2], [3, 4]]) == 10
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = [[rng.randint(0, 3) for _ in range(n)] for _ in range(n)]
        # oracle: permutation expansion
        import itertools

        expected = sum(
            __import__("math").prod(m[i][s[i]] for i in range(n))
            for s in itertools.permutations(range(n))
        )
        assert ryser_permanent(m) == expected


# -- root isolation ------------------------------------------------------------------


def test_isolate_sqrt2():
    p = UniPoly([-2, 0, 1])
    roots = isolate_real_roots(p, 0, 2)
    assert len(roots) == 1
    r = roots[0]
    assert r.lo <= Fraction(3, 2) and r.hi >= Fraction(1)  # contains sqrt(2)
    assert r.polynomial.evaluate(r.lo) * r.polynomial.evaluate(r.hi) <= 0


def test_isolate_no_real_roots():
    assert isolate_real_roots(UniPoly([1, 0, 1]), -10, 10) == []


def test_isolate_three_roots():
    # (x-1)(x-2)(x-3)
    p = UniPoly([-6, 11, -6, 1])
    roots = isolate_real_roots(p, 0, 4)
    assert len(roots) == 3
    for a, b in zip(roots, roots[1:]):
        assert a.hi <= b.lo or (a.hi == b.lo)
    assert count_real_roots(p, 0, 4) == 3


def test_isolate_rejects_zero_polynomial():
    with pytest.raises(ZeroPolynomialError):
        isolate_real_roots(UniPoly([]), 0, 1)
    with pytest.raises(ZeroPolynomialError):
        integer_roots(UniPoly([]))


def test_isolate_endpoint_roots_degenerate():
    p = UniPoly([0, 1])  # x
    roots = isolate_real_roots(p, 0, 1)
    assert len(roots) == 1 and roots[0].is_exact() and roots[0].lo == 0


def test_isolation_properties_random():
    rng = random.Random(21)
    for _ in range(60):
        deg = rng.randint(1, 6)
        coeffs = [rng.randint(-6, 6) for _ in range(deg)] + [rng.randint(1, 6)]
        p = UniPoly(coeffs)
        roots = isolate_real_roots(p, -12, 12)
        # count agrees with an independent Sturm count
        assert len(roots) == naive_sturm_count(p, -12, 12)
        for r in roots:
            if not r.is_exact():
                assert r.polynomial.evaluate(r.lo) * r.polynomial.evaluate(r.hi) < 0
            else:
                assert p.evaluate(r.lo) == 0
        for a, b in zip(roots, roots[1:]):
            assert a.hi <= b.lo


def test_refine_root():
    p = UniPoly([-2, 0, 1])
    [r] = isolate_real_roots(p, 0, 2)
    fine = refine_root(r, Fraction(1, 100))
    assert fine.width <= Fraction(1, 100)
    assert fine.polynomial.evaluate(fine.lo) * fine.polynomial.evaluate(fine.hi) <= 0
    # still contains sqrt(2)
    assert fine.lo * fine.lo <= 2 <= fine.hi * fine.hi


def test_refine_degenerate():
    p = UniPoly([-2, 1])
    r = RootInterval(Fraction(2), Fraction(2), p)
    assert refine_root(r, Fraction(1, 7)) == r


def test_refine_root_inside_wide_interval():
    p = UniPoly([-3, 1])  # root 3
    r = RootInterval(Fraction(0), Fraction(4), p)
    fine = refine_root(r, Fraction(1, 2))
    assert fine.width <= Fraction(1, 2)
    assert fine.lo <= 3 <= fine.hi


def test_refine_disjoint_merges_same_root():
    p1 = UniPoly([-2, 0, 1])  # sqrt 2
    p2 = UniPoly([2, -3, 0, 1])  # (x-1)(x^2+x-2) = has root 1, also sqrt-2-ish? use x^3-3x+2
    # use two isolations of the same polynomial root through different polys
    q = UniPoly([-4, 0, 2])  # 2x^2-4: same roots as p1
    r1 = isolate_real_roots(p1, 0, 2)[0]
    r2 = isolate_real_roots(q, 0, 2)[0]
    merged = refine_disjoint([r1, r2], Fraction(1, 4))
    assert len(merged) == 1


# -- integer roots ---------------------------------------------------------------------


def test_integer_roots_examples():
    assert integer_roots(UniPoly([-25, 0, 1])) == [-5, 5]
    assert integer_roots(UniPoly([0, 0, 1])) == [0]
    assert integer_roots(UniPoly([-2, 0, 1])) == []


def test_integer_roots_random():
    rng = random.Random(5)
    for _ in range(60):
        roots = sorted(set(rng.randint(-8, 8) for _ in range(rng.randint(1, 3))))
        p = UniPoly([1])
        for r in roots:
            p = p * UniPoly([-r, 1])
        if rng.random() < 0.5:
            p = p * UniPoly([1, 0, 1])  # irreducible quadratic factor
        found = integer_roots(p)
        assert found == roots
        for r in found:
            assert p.evaluate(r) == 0


# -- k-th roots -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "v,k,expected",
    [(8, 3, 2), (9, 2, 3), (120000, 15, 3), (1, 1, 1), (Fraction(1, 2), 3, 1)],
)
def test_kth_root_examples(v, k, expected):
    assert integer_kth_root_ceiling(v, k) == expected


@given(
    st.integers(min_value=1, max_value=10**9),
    st.integers(min_value=1, max_value=1000),
    st.integers(min_value=1, max_value=12),
)
def test_kth_root_property(num, den, k):
    v = Fraction(num, den)
    m = integer_kth_root_ceiling(v, k)
    assert Fraction(m) ** k >= v
    if m >= 1:
        assert Fraction(m - 1) ** k < v


# -- misc helpers -----------------------------------------------------------------------


def test_poly_gcd_and_squarefree():
    p = UniPoly([-1, 0, 1])  # (x-1)(x+1)
    q = UniPoly([-1, 1]) * UniPoly([-1, 1]) * UniPoly([1, 1])
    g = poly_gcd(p, q)
    assert g.degree == 2  # (x-1)(x+1)
    sf = squarefree_part(q)
    assert sf.degree == 2
    assert count_real_roots(q, -2, 2) == 2


def test_sup_bound_certifies():
    p = UniPoly([0, 0, 1])  # x^2
    b = poly_sup_bound(p, Fraction(0), Fraction(3))
    assert b >= 9
    assert b <= 12  # reasonably tight


def test_cauchy_bound_contains_roots():
    p = UniPoly([-6, 11, -6, 1])
    b = cauchy_root_bound(p)
    assert b >= 3
