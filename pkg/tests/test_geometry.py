from fractions import Fraction

import pytest

from quatrefl.geometry import (GeometryError, Line, angle_class, AngleClass, contains, herm_form,
                               norm2, orth_complement, reflect, span, unit_vector, vec)
from quatrefl.scalars import FieldElem, Quat, I, J, K, TAU


def test_line_normalizes_first_entry():
    l = Line.of(vec(0, I, J))
    assert l.rep[0] == Quat(0) and l.rep[1] == Quat(1)
    assert Line.of(vec(2, 2 * I)) == Line.of(vec(1, I))


def test_zero_vector_rejected():
    with pytest.raises(GeometryError):
        Line.of(vec(0, 0))


def test_cauchy_schwarz_equality_only_for_one_line():
    u = vec(1, I, 0)
    v = vec(J, K, 0)       # u * j
    w = vec(1, 0, J)
    assert herm_form(u, v).reduced_norm() == norm2(u) * norm2(v)
    assert herm_form(u, w).reduced_norm() < norm2(u) * norm2(w)


def test_reflection_is_an_involution_fixing_the_hyperplane():
    l = Line.of(vec(1, -1, 0))
    x = vec(I, J, K)
    assert reflect(l, reflect(l, x)) == x
    assert reflect(l, l.rep) == tuple(-y for y in l.rep)
    h = vec(1, 1, 5)
    assert reflect(l, h) == h


def test_unit_reflection_multiplies_line():
    h = Fraction(1, 2)
    w = Quat(-h, h, h, h)
    l = Line.of(vec(1, 0))
    assert reflect(l, l.rep, w) == tuple(x * w for x in l.rep)


def test_angle_classes():
    assert angle_class(Line.of(vec(1, 0)), Line.of(vec(0, 1))) is AngleClass.RIGHT
    assert angle_class(Line.of(vec(1, -1, 0)), Line.of(vec(0, 1, -1))) is AngleClass.PI_3
    assert angle_class(Line.of(vec(1, 0)), Line.of(vec(1, 1))) is AngleClass.PI_4
    # H3 lines e1 and (tau^-1, 1, tau)/2 meet at pi/5 or 2pi/5
    c = angle_class(Line.of(vec(0, 0, 1)), Line.of(vec(TAU - 1, 1, TAU)))
    assert c in (AngleClass.PI_5, AngleClass.TWO_PI_5)
    assert angle_class(Line.of(vec(1, 0)), Line.of(vec(2, 1))) == "OUTSIDE"


def test_span_and_complement():
    s = span([vec(1, 1, 0), vec(I, I, 0)])
    assert s.rank == 1
    t = span([vec(1, -1, 0), vec(0, 1, -1)])
    c = orth_complement(t)
    assert c.rank == 1
    assert contains(c, Line.of(vec(1, 1, 1)))
    assert orth_complement(orth_complement(t)).basis == t.basis
    assert span([unit_vector(3, 0), unit_vector(3, 1), vec(I, J, 0)]).rank == 2


def test_dimension_mismatch():
    with pytest.raises(GeometryError):
        herm_form(vec(1), vec(1, 0))
