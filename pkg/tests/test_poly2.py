"""Bivariate polynomial arithmetic, parsing, resultants, divisibility."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from latcurve.exactlinalg import bareiss_determinant
from latcurve.poly2 import (
    BiPoly,
    IngestionError,
    PolyParseError,
    ResultantDomainError,
    corner_index,
    divides,
    ingestion_check,
    parse,
    partial,
    resultant_eliminating_y,
)
from latcurve.unipoly import UniPoly


def rand_bipoly(rng, max_deg=3, max_terms=5, span=5):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        j1, j2 = rng.randint(0, max_deg), rng.randint(0, max_deg)
        terms[(j1, j2)] = Fraction(rng.randint(-span, span))
    return BiPoly(terms)


# -- parsing ------------------------------------------------------------------


def test_parse_examples():
    p = parse("y^2 - x^3 - 2*x - 3")
    assert p.degree == 3 and len(p.terms) == 4
    assert parse("x*y - 12").terms == {(1, 1): 1, (0, 0): -12}
    assert parse("(1/2)*x^2").terms == {(2, 0): Fraction(1, 2)}


def test_parse_parenthesized_expressions():
    assert parse("(x + y)^2") == parse("x^2 + 2*x*y + y^2")
    assert parse("(x - 1)*(x + 1)") == parse("x^2 - 1")
    assert parse("-x + 3") == parse("3 - x")
    assert parse("(-1/2)*y") .terms == {(0, 1): Fraction(-1, 2)}


def test_parse_errors_carry_position():
    with pytest.raises(PolyParseError) as exc:
        parse("x + z")
    assert exc.value.position == 4
    with pytest.raises(PolyParseError):
        parse("x +")
    with pytest.raises(PolyParseError):
        parse("x ^ y")
    with pytest.raises(PolyParseError):
        parse("2 x")


@given(st.integers(0, 4), st.integers(0, 4), st.integers(-20, 20), st.integers(1, 9))
def test_parse_print_roundtrip_single_terms(j1, j2, num, den):
    p = BiPoly({(j1, j2): Fraction(num, den)})
    assert parse(p.pretty()) == p


def test_parse_print_roundtrip_random():
    rng = random.Random(17)
    for _ in range(150):
        p = rand_bipoly(rng)
        assert parse(p.pretty()) == p


def bipoly_strategy(max_deg=3, span=6):
    term = st.tuples(
        st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)),
        st.fractions(min_value=-span, max_value=span, max_denominator=4),
    )
    return st.lists(term, min_size=0, max_size=5).map(BiPoly)


@given(bipoly_strategy(), bipoly_strategy(), bipoly_strategy())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert p + (-p) == BiPoly({})


@given(bipoly_strategy(), st.integers(-4, 4), st.integers(-4, 4))
def test_evaluate_is_ring_morphism(p, x, y):
    q = p * p + p
    assert q.evaluate(x, y) == p.evaluate(x, y) ** 2 + p.evaluate(x, y)


# -- evaluation, derivatives ------------------------------------------------------


@pytest.mark.parametrize(
    "text,x,y,val",
    [
        ("x^2 + y^2 - 25", 3, 4, 0),
        ("y^2 - x^3", 1, 2, 3),
        ("x*y - 12", 3, 4, 0),
    ],
)
def test_evaluate_examples(text, x, y, val):
    assert parse(text).evaluate(x, y) == val


def test_partial_examples():
    assert partial(parse("y^2 - x^3"), "y") == parse("2*y")
    assert partial(parse("y^2 - x^3"), "x") == parse("-3*x^2")
    assert partial(BiPoly.constant(7), "x").is_zero()


def test_partials_commute_random():
    rng = random.Random(23)
    for _ in range(100):
        p = rand_bipoly(rng, max_deg=4)
        assert partial(partial(p, "x"), "y") == partial(partial(p, "y"), "x")


# -- resultants ----------------------------------------------------------------------


def test_resultant_examples():
    c = parse("x^2 + y^2 - 25")
    assert resultant_eliminating_y(c, parse("y - 3")) == UniPoly([-16, 0, 1])
    r = resultant_eliminating_y(c, parse("x - y"))
    # 2x^2 - 25 up to a nonzero constant factor
    expected = UniPoly([-25, 0, 2])
    ratio = r.leading / expected.leading
    assert r == expected * ratio and ratio != 0
    assert resultant_eliminating_y(parse("y - x^2"), parse("y - x^2")).is_zero()


def test_resultant_requires_positive_y_degree():
    with pytest.raises(ResultantDomainError):
        resultant_eliminating_y(parse("x^2 - 1"), parse("y - 1"))
    with pytest.raises(ResultantDomainError):
        resultant_eliminating_y(parse("y - 1"), parse("x^2 - 1"))


def _sylvester_oracle(p, q):
    """Sylvester determinant assembled directly and expanded by Bareiss."""
    fc, gc = p.y_coefficients(), q.y_coefficients()
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = UniPoly([])
    rows = []
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


def test_resultant_euclidean_path_matches_sylvester():
    """The pseudo-remainder descent must reproduce the Sylvester determinant
    exactly, signs included, across degree combinations."""
    from latcurve.poly2 import _euclid_resultant

    rng = random.Random(5150)
    for _ in range(120):
        dy1, dy2 = rng.randint(1, 4), rng.randint(1, 12)

        def rand_with_ydeg(dy):
            terms = {}
            for _ in range(rng.randint(2, 5)):
                terms[(rng.randint(0, 3), rng.randint(0, dy - 1))] = Fraction(rng.randint(-4, 4))
            terms[(rng.randint(0, 2), dy)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
            return BiPoly(terms)

        p, q = rand_with_ydeg(dy1), rand_with_ydeg(dy2)
        assert _euclid_resultant(p.y_coefficients(), q.y_coefficients()) == _sylvester_oracle(p, q)


def test_resultant_vanishes_at_common_zeros():
    rng = random.Random(37)
    found = 0
    for _ in range(200):
        p = rand_bipoly(rng, max_deg=2, max_terms=4, span=3)
        q = rand_bipoly(rng, max_deg=2, max_terms=4, span=3)
        if p.degree_y() < 1 or q.degree_y() < 1:
            continue
        for x0 in range(-3, 4):
            for y0 in range(-3, 4):
                if p.evaluate(x0, y0) == 0 and q.evaluate(x0, y0) == 0:
                    res = resultant_eliminating_y(p, q)
                    assert res.evaluate(x0) == 0
                    found += 1
    assert found > 5


# -- divisibility -----------------------------------------------------------------------


def test_divides_examples():
    assert divides(parse("y - x"), parse("y^2 - x^2"))
    assert not divides(parse("y - x"), parse("y^2 + x^2"))
    assert not divides(parse("x^2 + y^2 - 25"), parse("y - 3"))


def test_divides_random_products():
    rng = random.Random(41)
    for _ in range(60):
        f = rand_bipoly(rng, max_deg=2, max_terms=3)
        h = rand_bipoly(rng, max_deg=2, max_terms=3)
        if f.is_zero():
            continue
        assert divides(f, f * h)
        g = f * h + BiPoly.constant(1)
        if not divides(f, BiPoly.constant(1)):
            assert not divides(f, g) or h.is_zero()


def test_divides_points_on_factor():
    """divides(f, g) forces g to vanish on 50 branch-constructed points of f."""
    from latcurve.branch import branch_from_point, taylor_coefficients

    f = parse("x*y - 12")
    g = f * parse("x + y - 1")
    assert divides(f, g)
    br = branch_from_point(f, 3, 4, (1, 60))
    checked = 0
    for k in range(2, 61):
        x0 = Fraction(k)
        y0 = taylor_coefficients(br, x0, 0)[0]
        assert f.evaluate(x0, y0) == 0
        assert g.evaluate(x0, y0) == 0
        checked += 1
    assert checked >= 50


# -- corner index and ingestion -----------------------------------------------------------


@pytest.mark.parametrize(
    "text,expected",
    [("x^2 + y^2 - 25", 2), ("y^2 - x^3", 0), ("x*y - 12", 1), ("x^2 - 2*y^2 - 1", 2)],
)
def test_corner_index(text, expected):
    assert corner_index(parse(text)) == expected


def test_ingestion_normalizes_and_rejects():
    g = ingestion_check(parse("(1/2)*x^2 + (1/2)*y^2 - (25/2)"))
    assert g == parse("x^2 + y^2 - 25")
    with pytest.raises(IngestionError):
        ingestion_check(BiPoly.constant(3))
    with pytest.raises(IngestionError):
        ingestion_check(parse("(y - x)^2"))  # repeated factor


def test_swap_and_specializations():
    p = parse("x^2 - 2*y^2 - 1")
    assert p.swap_xy() == parse("y^2 - 2*x^2 - 1")
    assert p.at_x(3) == UniPoly([8, 0, -2])
    assert p.at_y(2) == UniPoly([-9, 0, 1])
    coeffs = p.y_coefficients()
    assert len(coeffs) == 3 and coeffs[2] == UniPoly([-2])
