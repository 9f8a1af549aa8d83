import pytest
from hypothesis import given, settings, strategies as st

from quatrefl.poly import (IRREDUCIBLE_UNVERIFIED, IntPoly, factor_over_Z, parse_factored,
                           parse_poly, poly_divmod, render)
from quatrefl.registry import CODIM, POINCARE


@pytest.mark.parametrize("table", [POINCARE, CODIM])
def test_table_rows_factor_as_published(table):
    for name, (flat, fac) in table.items():
        p = parse_poly(flat)
        assert parse_factored(fac) == p, name
        assert factor_over_Z(p).render() == fac, name


def test_repeated_factor():
    p = parse_factored("(1+t)(1+13t)(1+13t)")
    f = factor_over_Z(p)
    assert [(render(q), m) for q, m in f] == [("1+t", 1), ("1+13t", 2)]


def test_irreducible_cubic_and_quadratic():
    # 1+46t+501t^2 has discriminant 2116-2004=112, not a square
    f = factor_over_Z(parse_poly("1+46t+501t^2"))
    assert f.irreducible and not f.flags
    assert factor_over_Z(parse_poly("1+t+t^3")).irreducible


def test_quartic_residual_is_flagged():
    f = factor_over_Z(parse_poly("1+t^4") * parse_poly("1+2t"))
    assert IRREDUCIBLE_UNVERIFIED in f.flags


def test_negative_roots_and_errors():
    assert factor_over_Z(parse_poly("1-4t^2")).render() == "(1-2t)(1+2t)"
    with pytest.raises(ValueError):
        factor_over_Z(IntPoly((2, 1)))


def test_render_parse_examples():
    assert render(IntPoly((1, -1, 0, 3))) == "1-t+3t^3"
    assert parse_poly("1 - t + 3t^3") == (1, -1, 0, 3)
    assert render(IntPoly((0,))) == "0"
    assert IntPoly((1, 2, 0, 0)).degree == 1


def test_divmod():
    q, r = poly_divmod(parse_poly("1+26t+25t^2"), IntPoly((1, 25)))
    assert q == (1, 1) and r == 0


coeffs = st.lists(st.integers(-50, 50), min_size=1, max_size=6)


@settings(max_examples=200, deadline=None)
@given(coeffs)
def test_render_parse_round_trip(c):
    p = IntPoly(c)
    assert parse_poly(render(p)) == p


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-20, 20).filter(bool), min_size=1, max_size=5))
def test_products_of_linears_factor_back(roots):
    p = IntPoly.one()
    for f in roots:
        p = p * IntPoly((1, f))
    fac = factor_over_Z(p)
    assert fac.expand() == p
    assert sorted(q[1] for q, m in fac for _ in range(m)) == sorted(roots)


@settings(max_examples=100, deadline=None)
@given(coeffs, coeffs, st.integers(-5, 5))
def test_ring_laws(a, b, x):
    p, q = IntPoly(a), IntPoly(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
