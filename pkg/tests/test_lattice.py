import numpy as np
import pytest

from quatrefl import lattice as L
from quatrefl import systems as S
from quatrefl.groups import codim_census, reflection_group
from quatrefl.poly import IntPoly, parse_poly
from quatrefl.registry import CENSUS, CODIM, FIXTURES, ORDERS

SMALL = ["A1^3", "A1xA2", "A2", "A3", "A4", "B3", "D4", "G333", "G443", "G552", "W2Q", "H3", "F4"]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_mu_and_e(lat, name):
    fl = lat(name)
    mu, e = FIXTURES[name]
    assert fl.flat(fl.rank, 0).mobius == mu
    assert fl.flat(fl.rank, 0).elliptic == e


def test_G334_census(lat):
    c = L.census(lat("G334"))
    for lab, n in CENSUS["G334"][3].items():
        assert c[3][lab] == n


@pytest.mark.parametrize("name", SMALL)
def test_deletion_restriction_matches_mobius(name):
    ls = S.get_system(name)
    assert L.poincare_deletion_restriction(ls) == L.poincare(L.mobius_all(L.build_lattice(ls)))


def _random_subsystems(count=50, seed=20240601):
    rng = np.random.default_rng(seed)
    pool = [S.get_system(n) for n in ("Q", "S1", "U", "W3Q", "G443", "H3")]
    out = []
    while len(out) < count:
        ls = pool[rng.integers(len(pool))]
        k = int(rng.integers(2, 4))
        idx = rng.choice(ls.n_lines, size=k, replace=False)
        try:
            sub = S.reflection_closure(ls.vectors[idx], cap=25)
        except S.CapExceeded:
            continue
        out.append(sub)
    return out


def test_deletion_restriction_on_random_closed_subsystems():
    subs = _random_subsystems()
    assert len(subs) == 50
    for sub in subs:
        assert S.is_star_closed(sub)
        fl = L.mobius_all(L.build_lattice(sub))
        assert L.poincare_deletion_restriction(sub) == L.poincare(fl), sub.n_lines


def test_deletion_restriction_cap():
    with pytest.raises(S.CapExceeded):
        L.poincare_deletion_restriction(S.get_system("S1"))


@pytest.mark.parametrize("name", SMALL + ["Q", "S1", "G334", "W3Q"])
def test_mobius_positive_and_p_at_minus_one(lat, name):
    fl = lat(name)
    sign_ok = all((m > 0).all() for m in fl.mobius)
    assert sign_ok
    assert L.poincare(fl)(-1) == 0


@pytest.mark.parametrize("name,label", [
    ("A3", "A3"), ("B3", "B3"), ("G333", "G(3,3,3)"), ("G443", "G(4,4,3)"), ("W3Q", "W3(Q,pm1)"),
    ("H3", "H3"), ("D4", "D4"), ("F4", "F4"), ("A4", "A4"), ("G334", "G(3,3,4)"),
    ("Q", "Q"), ("S1", "S1"), ("A1xA2", "A2xA1"),
])
def test_top_fingerprints(lat, name, label):
    fl = lat(name)
    assert fl.flat(fl.rank, 0).fingerprint == label


def test_rank1_and_rank2_labels(lat):
    fl = lat("G552")
    assert fl.labels[1] == ["C5"] * 5 or set(fl.labels[1]) <= {"A1", "C5"}
    assert fl.labels[2] == ["G(5,5,2)"]
    assert lat("A3").labels[1] == ["A1"] * 6


def test_synthetic_label_is_stable():
    key = (3, 7, (("A2", 2),))
    a = L.synthetic_label(key)
    assert a == L.synthetic_label(key) and a.startswith("X3.7.")
    ls = S.direct_sum(S.get_system("A2"), S.get_system("A2"), S.coordinate_system(1, "A1"))
    fl = L.analyze(ls)
    assert fl.labels[fl.rank][0].startswith("X5.7.")


@pytest.mark.parametrize("name", ["W2Q", "G552", "A2"])
def test_rank2_closed_form(lat, name):
    fl = lat(name)
    ls = fl.system
    order = reflection_group(ls).order
    p, c = L.rank2_closed_form(ls.n_lines, ls.n_reflections(), order)
    assert p == L.poincare(fl)
    assert c == L.codim_poly_via_lattice(fl)


def test_rank2_closed_form_rejects_empty():
    with pytest.raises(ValueError):
        L.rank2_closed_form(0, 0, 1)


@pytest.mark.parametrize("name", ["Q", "S1", "S2", "G333", "G334", "G443", "W2Q", "W3Q", "W4Q"])
def test_lattice_codim_matches_enumeration(lat, name):
    fl = lat(name)
    enum = codim_census(reflection_group(fl.system, cap=10 ** 6))
    assert L.codim_poly_via_lattice(fl) == enum
    if name in CODIM:
        assert enum == parse_poly(CODIM[name][0])


def test_registry_orders_match_enumeration(lat):
    for name, order in ORDERS.items():
        assert lat(name).orders[-1][0] == order


@pytest.mark.parametrize("name", ["S1", "U", "G333", "G334"])
def test_gs_lambda_divisible_by_six(lat, name):
    fl = lat(name)
    ls = fl.system
    assert L.is_three_system(ls)
    stars = list(L.three_stars(fl))
    assert stars
    for star in stars:
        gs = L.gs_decomposition(ls, star)
        sz = gs.sizes()
        assert sz["Lambda"] % 6 == 0
        assert sz["Gamma_a"] == sz["Gamma_b"] == sz["Gamma_c"]
        assert sum(sz.values()) + 3 == ls.n_lines


def test_gs_rejects_bad_input():
    ls = S.get_system("A3")
    with pytest.raises(S.SystemError_):
        L.gs_decomposition(ls, (0, 1, 5))
    with pytest.raises(S.SystemError_):
        L.gs_decomposition(S.get_system("B3"), (0, 1, 2))


def _perp_flat_labels(fl, d):
    P = L.perp_masks(fl, fl.masks[d])
    out = []
    for m in P:
        hit = fl.find(np.flatnonzero(m))
        out.append(None if hit is None else (hit.rank, hit.index))
    return out


def test_Q_line_complements_are_G422(lat):
    fl = lat("Q")
    images = _perp_flat_labels(fl, 1)
    assert all(h is not None and h[0] == 2 for h in images)
    assert {fl.labels[2][i] for _, i in images} == {"G(4,2,2)"}
    g422 = {i for i, lab in enumerate(fl.labels[2]) if lab == "G(4,2,2)"}
    assert {i for _, i in images} == g422 and len(g422) == 63


@pytest.mark.parametrize("src,dst", [("G(3,3,3)", "A2"), ("A1^3", "A1xA1")])
def test_U_complement_duality(lat, src, dst):
    fl = lat("U")
    rows3 = [i for i, lab in enumerate(fl.labels[3]) if lab == src]
    rows2 = {i for i, lab in enumerate(fl.labels[2]) if lab == dst}
    P = L.perp_masks(fl, fl.masks[3][rows3])
    images = []
    for m in P:
        hit = fl.find(np.flatnonzero(m))
        assert hit is not None and hit.rank == 2
        images.append(hit.index)
    assert set(images) == rows2 and len(images) == len(rows2)
    back = L.perp_masks(fl, fl.masks[2][sorted(rows2)])
    assert {fl.find(np.flatnonzero(m)).index for m in back} == set(rows3)


def test_threads_are_deterministic():
    ls = S.get_system("S1")
    a = L.build_lattice(ls, threads=1)
    b = L.build_lattice(ls, threads=2)
    assert a.counts() == b.counts()
    for x, y in zip(a.masks, b.masks):
        assert np.array_equal(x, y)


def test_empty_system():
    ls = S.from_int("empty", np.zeros((0, 2, 16), dtype=np.int64))
    fl = L.analyze(ls)
    assert fl.counts() == [1]
    assert L.poincare(fl) == 1
    assert L.codim_poly_via_lattice(fl) == 1


def test_flat_views(lat):
    fl = lat("A3")
    top = fl.flat(3, 0)
    assert top.lines == list(range(6))
    assert top.subspace.rank == 3
    x = fl.find([0])
    assert x.rank == 1 and x.parabolic_order == 2
    assert len(list(fl.flats(2))) == 7


def test_U_named_star_decomposition():
    from quatrefl.scalars import Quat
    ls = S.get_system("U")
    z, o, m = Quat(0), Quat(1), Quat(-1)
    star = [(o, m, z, z, z), (o, z, m, z, z), (z, o, m, z, z)]
    gs = L.gs_decomposition(ls, star)
    assert gs.sizes() == {"Delta": 9, "Lambda": 72, "Gamma_a": 27, "Gamma_b": 27, "Gamma_c": 27}
    assert ls.index_of((z, z, z, z, o)) in gs.delta
    for v in [(o, o, z, z, z), (z, z, o, o, z), (z, z, o, m, z)]:
        assert ls.index_of(v) in gs.gamma_a
