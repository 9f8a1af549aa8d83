"""Exact arithmetic in F = Q(sqrt2, sqrt5) and the quaternion algebra over it.

A field element is a + b*sqrt2 + c*sqrt5 + d*sqrt10 with rational a, b, c, d.
Quaternions carry four field coefficients (w, x, y, z) for w + xi + yj + zk.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

Number = Union[int, Fraction]

# index of the product of basis elements e_a * e_b and the rational factor
# basis order: 1, sqrt2, sqrt5, sqrt10
_FMUL = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, 2), (1, 2): (3, 1), (1, 3): (2, 2),
    (2, 0): (2, 1), (2, 1): (3, 1), (2, 2): (0, 5), (2, 3): (1, 5),
    (3, 0): (3, 1), (3, 1): (2, 2), (3, 2): (1, 5), (3, 3): (0, 10),
}


class FieldElem:
    """Immutable element of Q(sqrt2, sqrt5)."""

    __slots__ = ("c", "_h")

    def __init__(self, a: Number = 0, b: Number = 0, c: Number = 0, d: Number = 0):
        self.c = (Fraction(a), Fraction(b), Fraction(c), Fraction(d))
        self._h = None

    @classmethod
    def _raw(cls, coeffs) -> "FieldElem":
        obj = cls.__new__(cls)
        obj.c = tuple(coeffs)
        obj._h = None
        return obj

    @classmethod
    def coerce(cls, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldElem")

    # ring structure
    def __add__(self, o):
        o = _fe(o)
        if o is NotImplemented:
            return o
        return FieldElem._raw(tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem._raw(tuple(-x for x in self.c))

    def __sub__(self, o):
        o = _fe(o)
        if o is NotImplemented:
            return o
        return FieldElem._raw(tuple(x - y for x, y in zip(self.c, o.c)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return FieldElem._raw(tuple(x * o for x in self.c))
        if isinstance(o, Quat):
            return NotImplemented
        o = _fe(o)
        if o is NotImplemented:
            return o
        out = [Fraction(0)] * 4
        for a, x in enumerate(self.c):
            if not x:
                continue
            for b, y in enumerate(o.c):
                if y:
                    k, f = _FMUL[a, b]
                    out[k] += f * x * y
        return FieldElem._raw(tuple(out))

    __rmul__ = __mul__

    def conj2(self) -> "FieldElem":
        a, b, c, d = self.c
        return FieldElem._raw((a, -b, c, -d))

    def conj5(self) -> "FieldElem":
        a, b, c, d = self.c
        return FieldElem._raw((a, b, -c, -d))

    def norm(self) -> Fraction:
        """Absolute norm down to Q (product of the four Galois conjugates)."""
        s = self.conj2()
        t = self.conj5()
        u = s.conj5()
        n = self * s * t * u
        assert not any(n.c[1:])
        return n.c[0]

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        s = self.conj2()
        t = self.conj5()
        rest = s * t * s.conj5()
        n = (self * rest).c[0]
        return rest * (1 / n)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return FieldElem._raw(tuple(x / o for x in self.c))
        return self * _fe(o).inverse()

    def __rtruediv__(self, o):
        return _fe(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = FieldElem(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.c[0] == o and not any(self.c[1:])
        if isinstance(o, FieldElem):
            return self.c == o.c
        if isinstance(o, Quat):
            return o == self
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.c) if any(self.c[1:]) else hash(self.c[0])
        return self._h

    def __float__(self):
        a, b, c, d = self.c
        return float(a) + float(b) * 2 ** 0.5 + float(c) * 5 ** 0.5 + float(d) * 10 ** 0.5

    def __repr__(self):
        return f"FieldElem({self})"

    def __str__(self):
        names = ("", "√2", "√5", "√10")
        parts = []
        for x, nm in zip(self.c, names):
            if not x:
                continue
            if nm and abs(x) == 1:
                s = ("-" if x < 0 else "") + nm
            else:
                s = f"{x}{nm}" if not nm or x.denominator == 1 else f"({x}){nm}"
            parts.append(s)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def sign(self) -> int:
        return field_sign(self)

    def __lt__(self, o):
        return field_sign(self - o) < 0

    def __gt__(self, o):
        return field_sign(self - o) > 0

    def __le__(self, o):
        return field_sign(self - o) <= 0

    def __ge__(self, o):
        return field_sign(self - o) >= 0


def _fe(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElem(x)
    return NotImplemented


def _sqrt_bounds(m: int, bits: int):
    s = isqrt(m << (2 * bits))
    den = 1 << bits
    return Fraction(s, den), Fraction(s + 1, den)


def field_sign(x: FieldElem) -> int:
    """Sign of x under the real embedding with positive square roots.

    Exact zero test first, then interval enclosures of sqrt2, sqrt5, sqrt10
    are tightened until the enclosure of x excludes 0.
    """
    if x.is_zero():
        return 0
    a, b, c, d = x.c
    bits = 16
    while True:
        lo, hi = a, a
        for coef, m in ((b, 2), (c, 5), (d, 10)):
            if not coef:
                continue
            sl, sh = _sqrt_bounds(m, bits)
            u, v = coef * sl, coef * sh
            lo += min(u, v)
            hi += max(u, v)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
        if bits > 1 << 16:  # pragma: no cover - nonzero elements separate long before
            raise ArithmeticError("sign refinement did not terminate")


ZERO = FieldElem(0)
ONE = FieldElem(1)
SQRT2 = FieldElem(0, 1)
SQRT5 = FieldElem(0, 0, 1)
SQRT10 = FieldElem(0, 0, 0, 1)
TAU = FieldElem(Fraction(1, 2), 0, Fraction(1, 2))
TAU_INV = TAU - 1


class Quat:
    """Immutable quaternion w + xi + yj + zk over F."""

    __slots__ = ("q", "_h")

    def __init__(self, w=0, x=0, y=0, z=0):
        self.q = (FieldElem.coerce(w), FieldElem.coerce(x), FieldElem.coerce(y), FieldElem.coerce(z))
        self._h = None

    @classmethod
    def _raw(cls, coords) -> "Quat":
        obj = cls.__new__(cls)
        obj.q = tuple(coords)
        obj._h = None
        return obj

    @classmethod
    def coerce(cls, x) -> "Quat":
        if isinstance(x, Quat):
            return x
        return cls(FieldElem.coerce(x))

    @property
    def real(self) -> FieldElem:
        return self.q[0]

    def __add__(self, o):
        o = _qt(o)
        if o is NotImplemented:
            return o
        return Quat._raw(tuple(x + y for x, y in zip(self.q, o.q)))

    __radd__ = __add__

    def __neg__(self):
        return Quat._raw(tuple(-x for x in self.q))

    def __sub__(self, o):
        o = _qt(o)
        if o is NotImplemented:
            return o
        return Quat._raw(tuple(x - y for x, y in zip(self.q, o.q)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, FieldElem)):
            return Quat._raw(tuple(x * o for x in self.q))
        o = _qt(o)
        if o is NotImplemented:
            return o
        return quat_mul(self, o)

    def __rmul__(self, o):
        # scalars are central
        if isinstance(o, (int, Fraction, FieldElem)):
            return Quat._raw(tuple(x * o for x in self.q))
        return NotImplemented

    def conjugate(self) -> "Quat":
        w, x, y, z = self.q
        return Quat._raw((w, -x, -y, -z))

    def reduced_norm(self) -> FieldElem:
        out = ZERO
        for x in self.q:
            out = out + x * x
        return out

    def inverse(self) -> "Quat":
        return quat_inv(self)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction, FieldElem)):
            inv = FieldElem.coerce(o).inverse()
            return Quat._raw(tuple(x * inv for x in self.q))
        return self * quat_inv(_qt(o))

    def __pow__(self, k: int):
        if k < 0:
            return quat_inv(self) ** (-k)
        out, base = ONE_Q, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.q)

    def is_real(self) -> bool:
        return all(x.is_zero() for x in self.q[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, FieldElem)):
            return self.is_real() and self.q[0] == o
        if isinstance(o, Quat):
            return self.q == o.q
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.q[0]) if self.is_real() else hash(self.q)
        return self._h

    def rationals(self) -> tuple:
        """The 16 rational coordinates, quaternion-major."""
        return tuple(c for x in self.q for c in x.c)

    def __repr__(self):
        return f"Quat({self})"

    def __str__(self):
        names = ("", "i", "j", "k")
        parts = []
        for x, nm in zip(self.q, names):
            if x.is_zero():
                continue
            s = str(x)
            if nm:
                if s == "1":
                    s = nm
                elif s == "-1":
                    s = "-" + nm
                elif "+" in s[1:] or "-" in s[1:] or "/" in s:
                    s = f"({s}){nm}"
                else:
                    s = s + nm
            parts.append(s)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def _qt(x):
    if isinstance(x, Quat):
        return x
    if isinstance(x, (int, Fraction, FieldElem)):
        return Quat(x)
    return NotImplemented


def quat_mul(a: Quat, b: Quat) -> Quat:
    a0, a1, a2, a3 = a.q
    b0, b1, b2, b3 = b.q
    return Quat._raw((
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ))


def quat_inv(a: Quat) -> Quat:
    n = a.reduced_norm()
    if n.is_zero():
        raise ZeroDivisionError("inverse of zero quaternion")
    inv = n.inverse()
    return Quat._raw(tuple(x * inv for x in a.conjugate().q))


ZERO_Q = Quat(0)
ONE_Q = Quat(1)
I = Quat(0, 1)
J = Quat(0, 0, 1)
K = Quat(0, 0, 0, 1)


def quat(*coords) -> Quat:
    """Shorthand constructor accepting ints, Fractions or FieldElems."""
    return Quat(*coords)


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def quat_from_rationals(vals: Iterable) -> Quat:
    vals = [Fraction(v) for v in vals]
    if len(vals) != 16:
        raise ValueError("need 16 rationals")
    return Quat._raw(tuple(FieldElem._raw(tuple(vals[4 * m:4 * m + 4])) for m in range(4)))
