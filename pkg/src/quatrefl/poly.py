"""Dense integer polynomials in t and factorization for constant-term-one inputs."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from sympy import divisors

IRREDUCIBLE_UNVERIFIED = "IRREDUCIBLE_UNVERIFIED"


class IntPoly:
    """Integer polynomial; coeffs[k] is the coefficient of t^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(0,)):
        c = [int(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        self.coeffs = tuple(c)

    @classmethod
    def linear(cls, f: int) -> "IntPoly":
        return cls((1, f))

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, o):
        if isinstance(o, IntPoly):
            return self.coeffs == o.coeffs
        if isinstance(o, (list, tuple)):
            return self == IntPoly(o)
        if isinstance(o, int):
            return self.coeffs == (o,)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, o):
        o = _poly(o)
        n = max(len(self), len(o))
        return IntPoly([self[k] + o[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, o):
        return self + (-_poly(o))

    def __mul__(self, o):
        return poly_mul(self, _poly(o))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        return poly_eval(self, x)

    def shift(self, k: int) -> "IntPoly":
        """Multiply by t^k."""
        return IntPoly((0,) * k + self.coeffs)

    def to_json(self) -> list:
        return list(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return render(self)


def _poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    return IntPoly(x)


def poly_mul(p: IntPoly, q: IntPoly) -> IntPoly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return IntPoly(out)


def poly_eval(p: IntPoly, x):
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_divmod(p: IntPoly, d: IntPoly):
    """Division by a polynomial with leading coefficient dividing exactly, else None."""
    num = list(p.coeffs)
    dd = d.coeffs
    if len(num) < len(dd):
        return IntPoly((0,)), p
    q = [0] * (len(num) - len(dd) + 1)
    lead = dd[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(dd) - 1]
        if c % lead:
            return None
        q[k] = c // lead
        for j, b in enumerate(dd):
            num[k + j] -= q[k] * b
    return IntPoly(q), IntPoly(num[:len(dd) - 1] or [0])


def product(polys) -> IntPoly:
    out = IntPoly.one()
    for p in polys:
        out = out * p
    return out


def term(c: int, k: int) -> str:
    if k == 0:
        return str(c)
    base = "t" if k == 1 else f"t^{k}"
    if c == 1:
        return base
    if c == -1:
        return "-" + base
    return f"{c}{base}"


def render(p: IntPoly) -> str:
    parts = [term(c, k) for k, c in enumerate(p.coeffs) if c]
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        out += s if s.startswith("-") else "+" + s
    return out


@dataclass
class Factorization:
    factors: list  # list of (IntPoly, multiplicity)
    flags: list

    def expand(self) -> IntPoly:
        out = IntPoly.one()
        for f, m in self.factors:
            out = out * f ** m
        return out

    def render(self) -> str:
        if len(self.factors) == 1 and self.factors[0][1] == 1:
            return render(self.factors[0][0])
        return "".join(f"({render(f)})" * m for f, m in self.factors)

    @property
    def irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def factor_over_Z(p: IntPoly) -> Factorization:
    """Factor a polynomial with constant term 1 into irreducibles over Z[t].

    Linear factors 1 + f t need f to divide the leading coefficient; each
    candidate is tried by exact division, with multiplicity.  A quadratic
    residual is irreducible iff its discriminant is not a square; a cubic
    residual without linear factors is irreducible.  Larger residuals are
    returned with the IRREDUCIBLE_UNVERIFIED flag.
    """
    if p[0] != 1:
        raise ValueError("factor_over_Z expects constant term 1")
    if p.degree > 8:
        raise ValueError("degree above 8 is not supported")
    rest = p
    found = []
    flags = []
    if rest.degree >= 1:
        lead = abs(rest.coeffs[-1])
        cands = []
        for f in divisors(lead):
            cands += [f, -f]
        for f in sorted(cands, key=lambda x: (abs(x), x < 0)):
            lin = IntPoly((1, f))
            mult = 0
            while rest.degree >= 1:
                qr = poly_divmod(rest, lin)
                if qr is None or qr[1] != 0:
                    break
                rest = qr[0]
                mult += 1
            if mult:
                found.append((lin, mult))
    if rest.degree >= 1:
        if rest.degree == 2:
            c, b, a = rest.coeffs
            if _is_square(b * b - 4 * a * c):  # pragma: no cover - linear search would have split it
                raise ArithmeticError("quadratic with square discriminant survived")
        elif rest.degree >= 4:
            flags.append(IRREDUCIBLE_UNVERIFIED)
        found.append((rest, 1))
    elif rest != 1:
        raise ArithmeticError("non-unit residual")  # pragma: no cover
    found.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return Factorization(found, flags)


def parse_poly(s: str) -> IntPoly:
    """Parse text like '1+63t+987t^2'."""
    s = s.replace(" ", "").replace("-", "+-")
    coeffs = {}
    for tok in s.split("+"):
        if not tok:
            continue
        if "t" in tok:
            c, _, e = tok.partition("t")
            c = {"": 1, "-": -1}.get(c, None) if c in ("", "-") else int(c)
            e = int(e[1:]) if e.startswith("^") else 1
        else:
            c, e = int(tok), 0
        coeffs[e] = coeffs.get(e, 0) + c
    deg = max(coeffs) if coeffs else 0
    return IntPoly([coeffs.get(k, 0) for k in range(deg + 1)])


def parse_factored(s: str) -> IntPoly:
    """Parse '(1+t)(1+25t)' or a plain polynomial."""
    s = s.strip()
    if not s.startswith("("):
        return parse_poly(s)
    out = IntPoly.one()
    for chunk in s[1:-1].split(")("):
        out = out * parse_poly(chunk)
    return out
