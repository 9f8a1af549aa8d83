import json

import numpy as np
import pytest

from quatrefl import intrep as ir
from quatrefl import systems as S
from quatrefl.groups import conj_transpose, apply_int, is_unitary
from quatrefl.scalars import Quat

EXPECTED_LINE_CENSUS = {
    "Q": {"RIGHT": 6, "PI_3": 32, "PI_4": 24},
    "S1": {"RIGHT": 3, "PI_3": 32},
    "U": {"RIGHT": 36, "PI_3": 128},
}


@pytest.mark.parametrize("name,count", sorted(S.EXPECTED_COUNTS.items()))
def test_exceptional_counts_closure_angles(name, count):
    ls = S.exceptional_lines(name)
    assert ls.n_lines == count
    assert S.is_star_closed(ls)
    assert S.angles_in_catalog(ls)


@pytest.mark.parametrize("name", sorted(EXPECTED_LINE_CENSUS))
def test_angle_census_from_a_line(name):
    ls = S.exceptional_lines(name)
    assert S.angle_census(ls, 0) == EXPECTED_LINE_CENSUS[name]


def test_R_seed_regression():
    ls = S.lines_R()
    assert ls.n_lines == 315
    i0 = ls.index_of((Quat(2), Quat(0), Quat(0)))
    assert S.angle_census(ls, i0) == S.R_CENSUS
    seed = ir.canon(ir.vectors_to_int([S.R_SEED]))
    assert ir.keys(seed)[0] in ls._index


def test_R_seed_is_first_hit_of_search():
    found = S.find_R_seed("T", limit=1)
    assert len(found) == 1
    a = ir.keys(ir.canon(ir.vectors_to_int(found)))
    b = ir.keys(ir.canon(ir.vectors_to_int([S.R_SEED])))
    assert a == b


def test_R_seed_search_over_Q8_units_is_empty():
    assert S.find_R_seed("Q8", limit=1) == []


def test_U_realizations_agree():
    M = S.u_change_of_basis()
    assert is_unitary(M)
    cyc = S.from_vectors("Ucyc", S.cyclic_U_vectors())
    U = S.lines_U()
    assert cyc.n_lines == 165
    img = ir.canon(apply_int(M, cyc.vectors))
    assert set(ir.keys(img)) == set(U._index)


def test_T_conventions_agree():
    a, b = S.lines_T("pxp"), S.lines_T("pip")
    assert set(a._index) == set(b._index)


@pytest.mark.parametrize("gamma,delta,n,count", [
    ("C2", "full", 3, 9), ("C2", "triv", 3, 6), ("C3", "triv", 3, 9), ("C3", "full", 3, 12),
    ("C4", "triv", 3, 12), ("Q8", "pm1", 3, 27), ("Q8", "pm1", 4, 52), ("I", "full", 2, 122),
    ("D3", "full", 2, 14), ("C6", "index2", 2, 8),
])
def test_family_line_counts(gamma, delta, n, count):
    ls = S.family_lines(S.gamma_group(gamma, delta), n)
    assert ls.n_lines == count
    assert S.is_closed_under_own_reflections(ls)


@pytest.mark.parametrize("spec,order", [("C5", 5), ("D2", 8), ("Q8", 8), ("D5", 20), ("T", 24),
                                        ("O", 48), ("I", 120)])
def test_gamma_orders(spec, order):
    assert S.gamma_group(spec).order == order
    S.gamma_group(spec).check()


def test_index_subgroups():
    assert len(S.gamma_group("C6", "index2").delta) == 3
    assert len(S.gamma_group("T", "index3").delta) == 8
    with pytest.raises(S.SystemError_):
        S.gamma_group("C5", "index2")


def test_family_units_on_coordinate_lines():
    ls = S.family_lines(S.gamma_group("C3", "full"), 2)
    assert ls.n_reflections() == 3 + 2 * 2


def test_spec_resolution_and_errors():
    assert S.get_system("family:Q8:pm1:2").n_lines == 10
    assert S.get_system("family:D2:pm1:2").n_lines == 10
    for bad in ("nope", "family:C3:full", "family:X9:full:3"):
        with pytest.raises(S.SystemError_):
            S.get_system(bad)


def test_json_round_trip():
    ls = S.get_system("family:C3:full:2")
    doc = json.loads(json.dumps(ls.to_json()))
    back = S.LineSystem.from_json(doc)
    assert back.content_hash() == ls.content_hash()
    assert doc["field_basis"] == ["1", "sqrt2", "sqrt5", "sqrt10"]


def test_reflection_closure_cap():
    U = S.exceptional_lines("U")
    assert S.reflection_closure(U.vectors[:3]).n_lines == 6
    with pytest.raises(S.CapExceeded):
        S.reflection_closure(U.vectors[:40], cap=50)
