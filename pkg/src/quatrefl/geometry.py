"""Linear algebra in right H-vector spaces over F.

Vectors are tuples of Quat.  Scalars act on the right, so a line is
{v h : h in H} and a subspace is closed under v -> v h.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .scalars import FieldElem, Quat, ONE_Q, ZERO_Q, field_sign, quat_inv

Vector = tuple  # tuple[Quat, ...]


class GeometryError(ValueError):
    pass


def vec(*entries) -> Vector:
    return tuple(Quat.coerce(e) for e in entries)


def herm_form(u: Sequence[Quat], v: Sequence[Quat]) -> Quat:
    if len(u) != len(v):
        raise GeometryError(f"dimension mismatch {len(u)} != {len(v)}")
    out = ZERO_Q
    for a, b in zip(u, v):
        if a and b:
            out = out + a.conjugate() * b
    return out


def norm2(v: Sequence[Quat]) -> FieldElem:
    return herm_form(v, v).real


def scale_right(v: Sequence[Quat], h) -> Vector:
    return tuple(x * h for x in v)


def vsub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vadd(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def is_zero(v) -> bool:
    return all(x.is_zero() for x in v)


def _first_nonzero(v) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return -1


@dataclass(frozen=True)
class Line:
    """A one-dimensional right subspace; rep has first nonzero entry 1."""

    rep: Vector

    @classmethod
    def of(cls, v) -> "Line":
        v = tuple(Quat.coerce(x) for x in v)
        k = _first_nonzero(v)
        if k < 0:
            raise GeometryError("zero vector does not span a line")
        inv = quat_inv(v[k])
        return cls(tuple(x * inv for x in v))

    @property
    def dim(self) -> int:
        return len(self.rep)


class AngleClass(Enum):
    RIGHT = (0, 0)
    PI_3 = (1, 4)
    PI_4 = (1, 2)
    PI_5 = (3, 8)        # (3 + sqrt5)/8
    TWO_PI_5 = (-3, 8)   # (3 - sqrt5)/8

    @property
    def cos2(self) -> FieldElem:
        if self is AngleClass.PI_5:
            return FieldElem(Fraction(3, 8), 0, Fraction(1, 8))
        if self is AngleClass.TWO_PI_5:
            return FieldElem(Fraction(3, 8), 0, Fraction(-1, 8))
        a, b = self.value
        return FieldElem(Fraction(a, b) if b else 0)


OUTSIDE = "OUTSIDE"


def cos2(u, v) -> FieldElem:
    g = herm_form(u, v)
    return g.reduced_norm() / (norm2(u) * norm2(v))


def angle_class(l1: Line, l2: Line):
    """Angle class of two distinct lines, or OUTSIDE."""
    if l1 == l2:
        raise GeometryError("identical lines have no angle")
    c = cos2(l1.rep, l2.rep)
    for ac in AngleClass:
        if c == ac.cos2:
            return ac
    return OUTSIDE


def reflect(l: Line, v: Sequence[Quat], zeta: Quat | None = None) -> Vector:
    """Reflection in l applied to v.

    Default is the order-2 reflection v - a (2/(a,a)) (a,v).  With a unit
    zeta the map is v + a (zeta - 1) (a,v)/(a,a), which multiplies l by zeta.
    """
    a = l.rep
    if len(a) != len(v):
        raise GeometryError("dimension mismatch")
    n = norm2(a)
    c = herm_form(a, v)
    if zeta is None:
        coef = c * (FieldElem(2) / n)
        return tuple(x - y * coef for x, y in zip(v, a))
    coef = (zeta - 1) * c / n
    return tuple(x + y * coef for x, y in zip(v, a))


# echelon forms -----------------------------------------------------------

def _rref_right(rows):
    """Reduced row echelon form using right-scalar row operations."""
    rows = [list(r) for r in rows if not is_zero(r)]
    if not rows:
        return [], []
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = quat_inv(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - y * f for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]], pivots


def _rref_left(rows):
    """Reduced row echelon form using left-scalar row operations."""
    rows = [list(r) for r in rows if not is_zero(r)]
    if not rows:
        return [], []
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = quat_inv(rows[r][c])
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]], pivots


@dataclass(frozen=True)
class Subspace:
    """Right subspace of H^n held as a canonical reduced echelon basis."""

    basis: tuple
    n: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self):
        return tuple(_first_nonzero(b) for b in self.basis)

    def __contains__(self, item) -> bool:
        if isinstance(item, Line):
            return contains(self, item)
        return contains_vector(self, item)


def span(vectors) -> Subspace:
    vectors = [tuple(Quat.coerce(x) for x in v) for v in vectors]
    if not vectors:
        raise GeometryError("span of an empty list needs an explicit dimension")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise GeometryError("dimension mismatch")
    basis, _ = _rref_right(vectors)
    return Subspace(tuple(basis), n)


def zero_subspace(n: int) -> Subspace:
    return Subspace((), n)


def reduce_vector(s: Subspace, v) -> Vector:
    v = tuple(v)
    for b in s.basis:
        c = _first_nonzero(b)
        if v[c]:
            f = v[c]
            v = tuple(x - y * f for x, y in zip(v, b))
    return v


def contains_vector(s: Subspace, v) -> bool:
    if len(v) != s.n:
        raise GeometryError("dimension mismatch")
    return is_zero(reduce_vector(s, v))


def contains(s: Subspace, l: Line) -> bool:
    return contains_vector(s, l.rep)


def orth_complement(s: Subspace, n: int | None = None) -> Subspace:
    """The subspace of x with (b, x) = 0 for every basis vector b."""
    if n is None:
        n = s.n
    if s.rank > n:
        raise GeometryError("rank exceeds dimension")
    if s.rank == 0:
        return Subspace(tuple(tuple(ONE_Q if i == j else ZERO_Q for i in range(n)) for j in range(n)), n)
    # equations sum conj(b_i) x_i = 0, solved with left row operations
    eqs = [tuple(x.conjugate() for x in b) for b in s.basis]
    rows, piv = _rref_left(eqs)
    free = [c for c in range(n) if c not in piv]
    sols = []
    for f in free:
        x = [ZERO_Q] * n
        x[f] = ONE_Q
        for r, p in zip(rows, piv):
            x[p] = -r[f]
        sols.append(tuple(x))
    if not sols:
        return zero_subspace(n)
    return span(sols)


def join(s: Subspace, v) -> Subspace:
    return span(list(s.basis) + [tuple(v)])


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE_Q if j == i else ZERO_Q for j in range(n))
