import pytest

from quatrefl import groups as G
from quatrefl import systems as S
from quatrefl.geometry import span
from quatrefl.poly import IntPoly, parse_poly
from quatrefl.registry import CODIM
from quatrefl.scalars import ONE_Q, ZERO_Q


@pytest.mark.parametrize("name,order", [("A1^3", 8), ("A1xA2", 12), ("A3", 24), ("B3", 48),
                                        ("G333", 54), ("G443", 96), ("W2Q", 32), ("W3Q", 768),
                                        ("G334", 648), ("H3", 120)])
def test_small_orders(name, order):
    assert G.reflection_group(S.get_system(name)).order == order


@pytest.mark.parametrize("name", ["Q", "S1"])
def test_exceptional_codim_by_enumeration(name):
    g = G.reflection_group(S.get_system(name))
    c = G.codim_census(g)
    assert c == parse_poly(CODIM[name][0])
    assert g.order == G.REGISTRY_ORDERS[name][0]


def test_second_prime_agrees():
    ls = S.get_system("G443")
    a = G.codim_census(G.reflection_group(ls))
    b = G.codim_census(G.reflection_group(ls, ctx=G.modp.second_context()))
    assert a == b


DELTAS = {"C2": ("full", "triv"), "C3": ("full", "triv"), "C4": ("full", "index2", "triv"),
          "C6": ("full", "index2", "triv"), "Q8": ("full", "pm1")}
FAMILIES = [(g, d, n) for g, ds in DELTAS.items() for d in ds for n in (2, 3, 4)
            if not (n == 4 and (g == "Q8" or (g in ("C4", "C6") and d == "full")))]


@pytest.mark.parametrize("gamma,delta,n", FAMILIES)
def test_family_formula_census_enumeration(gamma, delta, n):
    gg = S.gamma_group(gamma, delta)
    formula = G.family_codim_poly(gg.order, len(gg.delta), n)
    assert G.family_codim_census(gg, n) == formula
    g = G.close_group(G.family_generators(gg, n), cap=10 ** 6)
    assert G.codim_census(g) == formula


@pytest.mark.parametrize("gamma,delta", [("C3", "index2"), ("Q8", "triv")])
def test_invalid_delta_rejected(gamma, delta):
    with pytest.raises(S.SystemError_):
        S.gamma_group(gamma, delta)


def test_family_formula_errors():
    with pytest.raises(ValueError):
        G.family_codim_poly(6, 4, 3)
    with pytest.raises(ValueError):
        G.family_codim_poly(6, 2, 0)


def test_codim_multiplicative_on_products():
    a = G.codim_census(G.reflection_group(S.get_system("A2")))
    b = G.codim_census(G.reflection_group(S.coordinate_system(1, "A1")))
    ab = G.codim_census(G.reflection_group(S.get_system("A1xA2")))
    assert ab == a * b


def _fix_perp_is_spanned(ls, w):
    n = ls.n
    cols = [tuple(w[r][c] - (ONE_Q if r == c else ZERO_Q) for r in range(n)) for c in range(n)]
    im = span(cols)
    if im.rank == 0:
        return True
    inside = [l.rep for l in ls.lines if l in im]
    return bool(inside) and span(inside).rank == im.rank


@pytest.mark.parametrize("name", ["A1xA2", "A3", "G333", "W2Q"])
def test_fixed_complement_spanned_by_lines(name):
    ls = S.get_system(name)
    elems = G.close_group_exact(G.system_generators(ls))
    assert all(_fix_perp_is_spanned(ls, w) for w in elems)
    assert G.codim_census_exact(elems) == G.codim_census(G.reflection_group(ls))


def test_exact_closure_cap():
    with pytest.raises(S.CapExceeded):
        G.close_group_exact(G.system_generators(S.get_system("B3")), cap=10)


@pytest.mark.parametrize("gamma,n", [("C3", 3), ("Q8", 2)])
def test_product_decomposition(gamma, n):
    gg = S.gamma_group(gamma, "full")
    gens = G.family_generators(gg, n)
    elems = G.close_group_exact(gens)
    en = tuple(ONE_Q if r == n - 1 else ZERO_Q for r in range(n))
    for w in elems[:200]:
        x, v = G.product_decomposition(w, gg, n)
        assert G.mat_mul(x, v) == w
        assert G.apply(v, en) == en
        assert G.is_unitary(x)


def test_reflection_matrices_are_unitary_and_fix_hyperplane():
    ls = S.get_system("W2Q")
    for M in G.system_generators(ls):
        assert G.is_unitary(M)
        assert G.fixed_codim(M) == 1
