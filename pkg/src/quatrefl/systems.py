"""Line systems: the infinite family W_n(Gamma, Delta) and the exceptional systems."""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb

import numpy as np

from . import intrep as ir
from .geometry import Line
from .scalars import (FieldElem, Quat, ONE_Q, ZERO_Q, I, J, K, SQRT2, TAU, TAU_INV,
                      quat_inv)


class SystemError_(ValueError):
    pass


class CapExceeded(RuntimeError):
    """A closure grew past its cap."""


# ----------------------------------------------------------------- Gamma groups

HALF = Fraction(1, 2)
OMEGA = Quat(-HALF, HALF, HALF, HALF)
INV_SQRT2 = SQRT2 * HALF
G10 = Quat(TAU * HALF, TAU_INV * HALF, HALF, 0)  # order 10, built from tau


def close_quats(gens, cap: int = 1000) -> list:
    """All products of the generators, BFS order starting from 1."""
    elems = [ONE_Q]
    seen = {ONE_Q}
    frontier = [ONE_Q]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                if b not in seen:
                    seen.add(b)
                    elems.append(b)
                    nxt.append(b)
                    if len(elems) > cap:
                        raise CapExceeded(f"quaternion group exceeds {cap}")
        frontier = nxt
    return elems


def _cyclic_gen(m: int) -> Quat:
    table = {
        1: ONE_Q, 2: Quat(-1), 3: OMEGA, 4: I, 6: -OMEGA,
        8: Quat(INV_SQRT2, INV_SQRT2), 10: G10, 5: G10 * G10,
    }
    if m not in table:
        raise SystemError_(f"cyclic group C{m} is not available over Q(sqrt2, sqrt5)")
    return table[m]


def _group_gens(name: str):
    name = name.strip()
    if name in ("Q8", "Q"):
        name = "D2"
    if name.startswith("C") and name[1:].isdigit():
        return [_cyclic_gen(int(name[1:]))]
    if name.startswith("D") and name[1:].isdigit():
        m = int(name[1:])
        gens = {
            2: [I, J],
            3: [Quat(HALF, HALF, HALF, HALF), Quat(0, INV_SQRT2, -INV_SQRT2, 0)],
            4: [Quat(INV_SQRT2, INV_SQRT2), J],
            5: [G10, K],
        }
        if m not in gens:
            raise SystemError_(f"binary dihedral group D{m} is not available")
        return gens[m]
    if name == "T":
        return [I, J, OMEGA]
    if name == "O":
        return [I, J, OMEGA, Quat(INV_SQRT2, INV_SQRT2)]
    if name == "I":
        return [OMEGA, G10]
    raise SystemError_(f"unknown gamma group {name!r}")


EXPECTED_ORDER = {"T": 24, "O": 48, "I": 120}


@dataclass
class GammaGroup:
    name: str
    elements: list
    delta: list  # indices into elements

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def delta_elements(self) -> list:
        return [self.elements[i] for i in self.delta]

    @cached_property
    def table(self) -> np.ndarray:
        """Multiplication table: table[a, b] = index of elements[a] * elements[b]."""
        return mult_table(self.elements)

    def inverse_index(self) -> np.ndarray:
        e = self.elements.index(ONE_Q)
        return np.argmax(self.table == e, axis=1)

    def check(self):
        for a in self.elements:
            if a.reduced_norm() != 1:
                raise SystemError_("non-unit element")
        tab = self.table  # raises if not closed
        inv = self.inverse_index()
        d = np.zeros(len(self.elements), dtype=bool)
        d[self.delta] = True
        # g h g^-1 h^-1 in Delta for all g, h
        gh = tab
        ginv_hinv = tab[inv][:, inv]
        comm = tab[gh, ginv_hinv]
        if not d[comm].all():
            raise SystemError_("Gamma/Delta is not abelian")
        conj = tab[tab[:, self.delta], inv[:, None]]
        if not d[conj].all():
            raise SystemError_("Delta is not normal")
        return True


def mult_table(elems) -> np.ndarray:
    """Index table of a finite set of quaternions closed under products."""
    den = 1
    for q in elems:
        for x in q.q:
            for c in x.c:
                den = den * c.denominator // np.gcd(den, c.denominator)
    arr = np.array([[int(c * den) for x in q.q for c in x.c] for q in elems], dtype=np.int64)
    m = len(elems)
    prod = ir.qmul(arr[:, None, :], arr[None, :, :])
    if (prod % den).any():
        raise SystemError_("set is not closed under products")
    prod = (prod // den).reshape(m * m, 16)
    index = {k: i for i, k in enumerate(ir.keys(arr[:, None, :]))}
    out = np.empty(m * m, dtype=np.int64)
    for t, k in enumerate(ir.keys(prod[:, None, :])):
        j = index.get(k)
        if j is None:
            raise SystemError_("set is not closed under products")
        out[t] = j
    return out.reshape(m, m)


def _subgroup_from(elems, gens):
    sub = close_quats(gens) if gens else [ONE_Q]
    return [elems.index(x) for x in sub]


@lru_cache(maxsize=None)
def gamma_group(spec: str, delta: str = "full") -> GammaGroup:
    """Build Gamma from a name (C<m>, D<m>, Q8, T, O, I) and a Delta choice.

    Delta: 'full' (Delta = Gamma), 'pm1', 'triv', or 'index<k>'.
    """
    gens = _group_gens(spec)
    elems = close_quats(gens)
    name = spec
    exp = EXPECTED_ORDER.get(spec)
    if exp and len(elems) != exp:
        raise SystemError_(f"{spec} closed to order {len(elems)}, expected {exp}")
    if delta == "full":
        idx = list(range(len(elems)))
    elif delta == "triv":
        idx = [elems.index(ONE_Q)]
    elif delta == "pm1":
        if Quat(-1) not in elems:
            raise SystemError_(f"-1 is not in {spec}")
        idx = _subgroup_from(elems, [Quat(-1)])
    elif delta.startswith("index") and delta[5:].isdigit():
        k = int(delta[5:])
        idx = _index_subgroup(elems, k)
    else:
        raise SystemError_(f"unknown delta {delta!r}")
    g = GammaGroup(f"{name}:{delta}", elems, sorted(idx))
    g.check()
    return g


def _sub_closure(tab, gens) -> frozenset:
    out = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = int(tab[a, g])
                if b not in out:
                    out.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(out)


def _index_subgroup(elems, k):
    m = len(elems)
    if k < 1 or m % k:
        raise SystemError_(f"no subgroup of index {k} in a group of order {m}")
    target = m // k
    tab = mult_table(elems)
    e = elems.index(ONE_Q)
    if e != 0:  # pragma: no cover - close_quats starts from 1
        raise SystemError_("identity must come first")
    inv = np.argmax(tab == 0, axis=1)
    # Delta must contain the commutator subgroup
    comm = sorted({int(tab[tab[a, b], tab[inv[a], inv[b]]]) for a in range(m) for b in range(m)})
    base = _sub_closure(tab, comm)
    if len(base) == target:
        return sorted(base)
    for extra in itertools.chain(itertools.combinations(range(m), 1), itertools.combinations(range(m), 2)):
        sub = _sub_closure(tab, list(base) + list(extra))
        if len(sub) == target:
            return sorted(sub)
    raise SystemError_(f"no admissible subgroup of index {k}")


# ----------------------------------------------------------------- line systems

@dataclass
class LineSystem:
    """A finite set of lines in H^n with canonical integral representatives.

    units maps a line index to the reflection multipliers the group uses on
    that line; lines absent from the map carry the order-2 reflection (-1).
    """

    name: str
    n: int
    vectors: np.ndarray  # (N, n, 16) canonical integral
    units: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index = {k: i for i, k in enumerate(ir.keys(self.vectors))}
        if len(self._index) != len(self.vectors):
            raise SystemError_("duplicate lines")

    @property
    def n_lines(self) -> int:
        return int(self.vectors.shape[0])

    def __len__(self):
        return self.n_lines

    @cached_property
    def lines(self) -> list:
        return [Line.of(ir.int_to_vector(v)) for v in self.vectors]

    def index_of(self, v) -> int:
        """Index of the line through an exact or integral vector, or -1."""
        arr = v if isinstance(v, np.ndarray) else ir.vector_to_int(tuple(Quat.coerce(x) for x in v))
        c = ir.canon(arr[None])
        return self._index.get(ir.keys(c)[0], -1)

    def unit_list(self, i: int) -> list:
        return self.units.get(i, [Quat(-1)])

    def n_reflections(self) -> int:
        return sum(len(self.unit_list(i)) for i in range(self.n_lines))

    @cached_property
    def angle_matrix(self) -> np.ndarray:
        return ir.angle_codes(self.vectors)

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(np.ascontiguousarray(ir._to64(self.vectors)).tobytes())
        for i in sorted(self.units):
            h.update(repr((i, [u.rationals() for u in self.units[i]])).encode())
        return h.hexdigest()[:16]

    def subsystem(self, idx, name=None) -> "LineSystem":
        idx = list(idx)
        pos = {j: k for k, j in enumerate(idx)}
        units = {pos[j]: u for j, u in self.units.items() if j in pos}
        return LineSystem(name or f"{self.name}[sub]", self.n, self.vectors[idx], units)

    # interchange -------------------------------------------------------
    def to_json(self) -> dict:
        lines = []
        for l in self.lines:
            lines.append([[[_rat(c) for c in x.c] for x in q.q] for q in l.rep])
        out = {
            "name": self.name,
            "dimension": self.n,
            "field_basis": ["1", "sqrt2", "sqrt5", "sqrt10"],
            "lines": lines,
        }
        if self.units:
            out["units"] = {str(i): [[[_rat(c) for c in x.c] for x in u.q] for u in us]
                            for i, us in sorted(self.units.items())}
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "LineSystem":
        vecs = []
        for row in doc["lines"]:
            vecs.append(tuple(Quat(*(FieldElem(*(Fraction(c) for c in comp)) for comp in q)) for q in row))
        units = {}
        for i, us in doc.get("units", {}).items():
            units[int(i)] = [Quat(*(FieldElem(*(Fraction(c) for c in comp)) for comp in u)) for u in us]
        return from_vectors(doc["name"], vecs, units=units, n=doc["dimension"])


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _dedup(arr):
    """Canonicalize and drop repeated lines, keeping first occurrences."""
    c = ir.canon(arr)
    seen = {}
    keep = []
    for i, k in enumerate(ir.keys(c)):
        if k not in seen:
            seen[k] = i
            keep.append(i)
    return c[keep], keep


def from_vectors(name: str, vecs, units=None, n=None, dedup=True) -> LineSystem:
    vecs = [tuple(Quat.coerce(x) for x in v) for v in vecs]
    if not vecs:
        return LineSystem(name, n or 0, np.zeros((0, n or 0, 16), dtype=np.int64))
    arr = ir.vectors_to_int(vecs)
    if dedup:
        arr, keep = _dedup(arr)
        if units:
            back = {j: k for k, j in enumerate(keep)}
            units = {back[i]: u for i, u in units.items() if i in back}
    else:
        arr = ir.canon(arr)
    return LineSystem(name, len(vecs[0]), arr, units or {})


def from_int(name: str, arr, units=None) -> LineSystem:
    arr, _ = _dedup(np.asarray(arr))
    return LineSystem(name, arr.shape[1], arr, units or {})


# ----------------------------------------------------------------- closure

def _closure(lines, reflectors=None, cap=10 ** 5):
    """Close a canonical integral array under reflections.

    With reflectors=None the growing set reflects itself (star closure);
    otherwise only the fixed reflector array acts (an orbit).
    """
    total, _ = _dedup(lines)
    keys = set(ir.keys(total))
    fresh = total
    while len(fresh):
        if reflectors is None:
            # new lines reflect everything; old reflectors act on new lines
            old = total[: len(total) - len(fresh)]
            imgs = [ir.reflect_batch(fresh, total).reshape(-1, total.shape[1], 16)]
            if len(old):
                imgs.append(ir.reflect_batch(old, fresh).reshape(-1, total.shape[1], 16))
        else:
            imgs = [ir.reflect_batch(reflectors, fresh).reshape(-1, total.shape[1], 16)]
        new_rows = []
        for img in imgs:
            img = ir.canon(img)
            for row, k in zip(img, ir.keys(img)):
                if k not in keys:
                    keys.add(k)
                    new_rows.append(row)
        if len(keys) > cap:
            raise CapExceeded(f"closure exceeded {cap} lines")
        fresh = np.stack(new_rows) if new_rows else total[:0]
        total = np.concatenate([total, fresh]) if new_rows else total
    return total


def reflection_closure(seed, cap: int = 10 ** 4, name: str = "closure") -> LineSystem:
    """Least star-closed superset of the seed lines, or CapExceeded."""
    if isinstance(seed, LineSystem):
        arr = seed.vectors
    elif isinstance(seed, np.ndarray):
        arr = seed
    else:
        arr = ir.vectors_to_int([l.rep if isinstance(l, Line) else l for l in seed])
    if len(arr) == 0:
        raise SystemError_("empty seed")
    return LineSystem(name, arr.shape[1], _closure(arr, None, cap))


def orbit_lines(seed, reflectors, cap: int = 10 ** 4):
    """Orbit of seed lines under the group generated by the given reflections."""
    seed = ir.vectors_to_int(seed) if not isinstance(seed, np.ndarray) else seed
    refl = reflectors if isinstance(reflectors, np.ndarray) else ir.vectors_to_int(reflectors)
    return _closure(seed, refl, cap)


def is_star_closed(ls: LineSystem) -> bool:
    img = ir.canon(ir.reflect_batch(ls.vectors, ls.vectors).reshape(-1, ls.n, 16))
    return all(k in ls._index for k in ir.keys(img))


def is_closed_under_own_reflections(ls: LineSystem) -> bool:
    """Stability under every reflection the system carries (order 2 or not)."""
    from .groups import reflection_matrix, apply_int
    for i in range(ls.n_lines):
        if i not in ls.units:
            img = ir.canon(ir.reflect_lines(ls.vectors[i], ls.vectors))
            if any(k not in ls._index for k in ir.keys(img)):
                return False
            continue
        for z in ls.units[i]:
            R = reflection_matrix(ls.lines[i], z)
            img = ir.canon(apply_int(R, ls.vectors))
            if any(k not in ls._index for k in ir.keys(img)):
                return False
    return True


def angle_census(ls: LineSystem, i: int) -> dict:
    row = ls.angle_matrix[i]
    out = {}
    for k, name in enumerate(ir.ANGLE_ORDER):
        c = int((row == k).sum())
        if c:
            out[name] = c
    bad = int((row == ir.OUTSIDE).sum())
    if bad:
        out["OUTSIDE"] = bad
    return out


def angles_in_catalog(ls: LineSystem) -> bool:
    A = ls.angle_matrix
    off = ~np.eye(len(A), dtype=bool)
    return bool((A[off] >= 0).all() and (A[off] != ir.SAME).all())


# ----------------------------------------------------------------- families

def family_lines(gamma: GammaGroup, n: int, name: str | None = None) -> LineSystem:
    if n < 1:
        raise SystemError_("rank must be positive")
    vecs = []
    units = {}
    nontriv_delta = len(gamma.delta) > 1
    if nontriv_delta:
        ds = [d for d in gamma.delta_elements if d != ONE_Q]
        for m in range(n):
            units[len(vecs)] = ds
            vecs.append(tuple(ONE_Q if r == m else ZERO_Q for r in range(n)))
    for p in range(n):
        for q in range(p + 1, n):
            for g in gamma.elements:
                v = [ZERO_Q] * n
                v[p] = ONE_Q
                v[q] = -g
                vecs.append(tuple(v))
    ls = from_vectors(name or f"W{n}({gamma.name})", vecs, units=units, n=n)
    expected = comb(n, 2) * gamma.order + (n if nontriv_delta else 0)
    if ls.n_lines != expected:
        raise SystemError_(f"family produced {ls.n_lines} lines, expected {expected}")
    ls.meta.update(gamma=gamma.name, m=gamma.order, p=len(gamma.delta), family=True)
    return ls


def parse_family(spec: str):
    parts = spec.split(":")
    if len(parts) != 4 or parts[0] != "family":
        raise SystemError_(f"bad family spec {spec!r}")
    _, g, d, n = parts
    return gamma_group(g, d), int(n)


# ----------------------------------------------------------------- exceptional

def _q(*c):
    return Quat(*c)


def _monomial_images(v, units, det_ok):
    """Images of v under monomial matrices with entries in units."""
    n = len(v)
    out = []
    for perm in itertools.permutations(range(n)):
        for ds in itertools.product(units, repeat=n):
            prod = ONE_Q
            for d in ds:
                prod = prod * d
            if not det_ok(prod):
                continue
            out.append(tuple(ds[r] * v[perm[r]] for r in range(n)))
    return out


def _roots_G422_3():
    vecs = [tuple(ONE_Q if r == m else ZERO_Q for r in range(3)) for m in range(3)]
    c4 = [ONE_Q, I, Quat(-1), -I]
    for p, q in ((0, 1), (0, 2), (1, 2)):
        for g in c4:
            v = [ZERO_Q] * 3
            v[p] = ONE_Q
            v[q] = g
            vecs.append(tuple(v))
    return vecs


ALPHA_Q = Quat(HALF, -HALF, -HALF, FieldElem(0, 0, -HALF))


def lines_Q() -> LineSystem:
    roots = _roots_G422_3()
    c4 = [ONE_Q, I, Quat(-1), -I]
    v = (ONE_Q, ONE_Q, ALPHA_Q)
    orb = _monomial_images(v, c4, lambda d: d in (ONE_Q, Quat(-1)))
    return from_vectors("Q", roots + orb)


def lines_S1() -> LineSystem:
    vecs = []
    for a, b in itertools.combinations(range(4), 2):
        for s in (1, -1):
            v = [ZERO_Q] * 4
            v[a] = ONE_Q
            v[b] = Quat(s)
            vecs.append(tuple(v))
    units = [ONE_Q, I, J, K]
    for perm in itertools.permutations(units):
        for signs in itertools.product((1, -1), repeat=4):
            if signs.count(-1) % 2 == 0:
                vecs.append(tuple(e * s for e, s in zip(perm, signs)))
    return from_vectors("S1", vecs)


def _f4_lines():
    vecs = []
    for m in range(4):
        vecs.append(tuple(ONE_Q if r == m else ZERO_Q for r in range(4)))
    for a, b in itertools.combinations(range(4), 2):
        for s in (1, -1):
            v = [ZERO_Q] * 4
            v[a] = ONE_Q
            v[b] = Quat(s)
            vecs.append(tuple(v))
    for signs in itertools.product((1, -1), repeat=3):
        vecs.append((ONE_Q,) + tuple(Quat(s) for s in signs))
    return vecs


def lines_S2() -> LineSystem:
    f4 = ir.canon(ir.vectors_to_int(_f4_lines()))
    orb = orbit_lines([(ONE_Q, I, J, K)], f4)
    return from_int("S2", np.concatenate([f4, orb]))


def lines_S3() -> LineSystem:
    w4 = family_lines(gamma_group("Q8", "pm1"), 4)
    g = gamma_group("Q8", "full")
    # diagonal images of (1,1,1,1) with entry product in {+-1}; permutations fix it
    tab = g.table
    pm = {g.elements.index(ONE_Q), g.elements.index(Quat(-1))}
    orb = []
    for ds in itertools.product(range(8), repeat=4):
        if int(tab[tab[tab[ds[0], ds[1]], ds[2]], ds[3]]) in pm:
            orb.append(tuple(g.elements[d] for d in ds))
    return from_int("S3", np.concatenate([w4.vectors, ir.canon(ir.vectors_to_int(orb))]))


def _even_perms(n):
    for p in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])
        if inv % 2 == 0:
            yield p


def _h4_lines():
    vecs = []
    for m in range(4):
        vecs.append(tuple(ONE_Q if r == m else ZERO_Q for r in range(4)))
    for signs in itertools.product((1, -1), repeat=3):
        vecs.append((ONE_Q,) + tuple(Quat(s) for s in signs))
    base = (Quat(TAU_INV), ONE_Q, Quat(TAU), ZERO_Q)
    for p in _even_perms(4):
        for signs in itertools.product((1, -1), repeat=4):
            vecs.append(tuple(base[p[r]] * signs[r] for r in range(4)))
    return vecs


def lines_T(convention: str = "pxp") -> LineSystem:
    icos = gamma_group("I", "full").elements
    vecs = _h4_lines()
    for p in icos:
        pi = quat_inv(p)
        for s in (1, -1):
            if convention == "pxp":
                conjd = [p * (u * s) * pi for u in (I, J, K)]
            else:
                conjd = [pi * (u * s) * p for u in (I, J, K)]
            vecs.append((ONE_Q,) + tuple(conjd))
    return from_vectors("T", vecs)


def _d4_lines(n=4):
    vecs = []
    for a, b in itertools.combinations(range(4), 2):
        for s in (1, -1):
            v = [ZERO_Q] * n
            v[a] = ONE_Q
            v[b] = Quat(s)
            vecs.append(tuple(v))
    return vecs


OMEGA2 = OMEGA * OMEGA


def u_seeds():
    s2 = Quat(SQRT2)
    return [
        (ONE_Q, I, J, K, ZERO_Q),
        (ONE_Q, ONE_Q, ONE_Q, OMEGA - OMEGA2, s2),
        (ONE_Q, ONE_Q, ONE_Q, I - J - K, I * s2),
        (ONE_Q, ONE_Q, ONE_Q, -I + J - K, J * s2),
        (ONE_Q, ONE_Q, ONE_Q, -I - J + K, K * s2),
    ]


def lines_U() -> LineSystem:
    d4 = ir.canon(ir.vectors_to_int(_d4_lines(5)))
    e5 = ir.canon(ir.vectors_to_int([(ZERO_Q,) * 4 + (ONE_Q,)]))
    orb = orbit_lines(u_seeds(), d4)
    return from_int("U", np.concatenate([d4, e5, orb]))


def cyclic_U_vectors():
    """The cyclic realization: coordinate lines plus four seeds with cyclic shifts and signs."""
    def c(g, x):
        return g * x * quat_inv(g)
    seeds = [
        (ZERO_Q, ONE_Q, OMEGA, OMEGA, ONE_Q),
        (ZERO_Q, ONE_Q, c(I, OMEGA), c(K, OMEGA), I),
        (ZERO_Q, ONE_Q, c(J, OMEGA), c(I, OMEGA), J),
        (ZERO_Q, ONE_Q, c(K, OMEGA), c(J, OMEGA), K),
    ]
    vecs = [tuple(ONE_Q if r == m else ZERO_Q for r in range(5)) for m in range(5)]
    for s in seeds:
        for shift in range(5):
            rot = s[shift:] + s[:shift]
            for signs in itertools.product((1, -1), repeat=5):
                vecs.append(tuple(x * sg for x, sg in zip(rot, signs)))
    return vecs


def u_change_of_basis():
    r = INV_SQRT2
    w2 = OMEGA2 * r
    z = ZERO_Q
    return (
        (Quat(r), -w2, z, z, z),
        (Quat(-r), -w2, z, z, z),
        (z, z, -w2, Quat(r), z),
        (z, z, w2, Quat(r), z),
        (z, z, z, z, -OMEGA2),
    )


# R: seeded closure -------------------------------------------------------

R_CENSUS = {"RIGHT": 10, "PI_3": 160, "PI_4": 80, "PI_5": 32, "TWO_PI_5": 32}


def _w3q_lines():
    return family_lines(gamma_group("Q8", "pm1"), 3).vectors


def _r_candidates(units):
    """Lines (x, y, z) with entry norms a permutation of (1, tau, 1/tau), x real."""
    mags = [Quat(1), Quat(TAU), Quat(TAU_INV)]
    for perm in itertools.permutations(range(3)):
        for u2 in units:
            for u3 in units:
                base = [mags[p] for p in perm]
                yield (base[0], base[1] * u2, base[2] * u3)


def accept_R(clo) -> bool:
    if len(clo) != 315:
        return False
    ls = LineSystem("R", 3, clo)
    i0 = ls.index_of((Quat(2), ZERO_Q, ZERO_Q))
    return i0 >= 0 and angle_census(ls, i0) == R_CENSUS and angles_in_catalog(ls)


def find_R_seed(units_name: str = "T", cap: int = 400, limit: int | None = 1):
    """Search tau-type lines whose closure with the W3(Q,+-1) lines is the 315-line system.

    Returns the accepted candidates (at most limit of them) in search order.
    """
    w3 = _w3q_lines()
    units = gamma_group(units_name, "full").elements
    tried = set()
    found = []
    for cand in _r_candidates(units):
        arr = ir.canon(ir.vectors_to_int([cand]))
        k = ir.keys(arr)[0]
        if k in tried:
            continue
        tried.add(k)
        codes = ir.angle_codes(arr, w3)
        if (codes < 0).any() or (codes == ir.SAME).any():
            continue
        try:
            clo = _closure(np.concatenate([w3, arr]), None, cap)
        except CapExceeded:
            continue
        if accept_R(clo):
            found.append(cand)
            if limit and len(found) >= limit:
                break
    return found


# First seed accepted by find_R_seed("T"): (1, tau*omega, -(1+i+j+k)/(2 tau)).
R_SEED = (ONE_Q, OMEGA * TAU, Quat(HALF, HALF, HALF, HALF) * (-TAU_INV))


def lines_R() -> LineSystem:
    seed = ir.canon(ir.vectors_to_int([R_SEED]))
    clo = _closure(np.concatenate([_w3q_lines(), seed]), None, 400)
    if not accept_R(clo):
        raise SystemError_("R seed no longer closes to the 315-line system")
    return LineSystem("R", 3, clo)


EXCEPTIONAL = {
    "Q": lines_Q, "R": lines_R, "S1": lines_S1, "S2": lines_S2,
    "S3": lines_S3, "T": lines_T, "U": lines_U,
}
EXPECTED_COUNTS = {"Q": 63, "R": 315, "S1": 36, "S2": 72, "S3": 180, "T": 180, "U": 165}

_CACHE: dict = {}


def exceptional_lines(name: str) -> LineSystem:
    if name not in EXCEPTIONAL:
        raise SystemError_(f"unknown exceptional system {name!r}")
    if name not in _CACHE:
        ls = EXCEPTIONAL[name]()
        if ls.n_lines != EXPECTED_COUNTS[name]:
            raise SystemError_(f"{name}: {ls.n_lines} lines, expected {EXPECTED_COUNTS[name]}")
        ls.meta["exceptional"] = True
        _CACHE[name] = ls
    return _CACHE[name]


def get_system(spec: str) -> LineSystem:
    """Resolve a system spec: exceptional name or family:<gamma>:<delta>:<n>."""
    spec = spec.strip()
    if spec in EXCEPTIONAL:
        return exceptional_lines(spec)
    if spec.startswith("family:"):
        g, n = parse_family(spec)
        return family_lines(g, n, name=spec)
    if spec in NAMED:
        return NAMED[spec]()
    raise SystemError_(f"unknown system {spec!r}")


# small named systems used as fixtures ------------------------------------

def coordinate_system(n: int, name="A1^n") -> LineSystem:
    return from_vectors(name, [tuple(ONE_Q if r == m else ZERO_Q for r in range(n)) for m in range(n)])


def type_A(n: int) -> LineSystem:
    """A_n in H^(n+1): lines e_p - e_q."""
    vecs = []
    for p, q in itertools.combinations(range(n + 1), 2):
        v = [ZERO_Q] * (n + 1)
        v[p] = ONE_Q
        v[q] = Quat(-1)
        vecs.append(tuple(v))
    return from_vectors(f"A{n}", vecs)


def direct_sum(*systems, name=None) -> LineSystem:
    n = sum(s.n for s in systems)
    blocks = []
    units = {}
    off = 0
    base = 0
    for s in systems:
        arr = np.zeros((s.n_lines, n, 16), dtype=s.vectors.dtype)
        arr[:, off:off + s.n] = s.vectors
        blocks.append(arr)
        for i, u in s.units.items():
            units[base + i] = u
        off += s.n
        base += s.n_lines
    return from_int(name or "x".join(s.name for s in systems), np.concatenate(blocks), units)


NAMED = {
    "A1^3": lambda: coordinate_system(3, "A1^3"),
    "A1xA2": lambda: direct_sum(coordinate_system(1, "A1"), type_A(2), name="A1xA2"),
    "A2": lambda: type_A(2),
    "A3": lambda: type_A(3),
    "A4": lambda: type_A(4),
    "B3": lambda: family_lines(gamma_group("C2", "full"), 3, name="B3"),
    "D4": lambda: family_lines(gamma_group("C2", "triv"), 4, name="D4"),
    "G333": lambda: family_lines(gamma_group("C3", "triv"), 3, name="G333"),
    "G443": lambda: family_lines(gamma_group("C4", "triv"), 3, name="G443"),
    "G334": lambda: family_lines(gamma_group("C3", "triv"), 4, name="G334"),
    "G552": lambda: family_lines(gamma_group("C5", "triv"), 2, name="G552"),
    "W2Q": lambda: family_lines(gamma_group("Q8", "pm1"), 2, name="W2Q"),
    "W3Q": lambda: family_lines(gamma_group("Q8", "pm1"), 3, name="W3Q"),
    "W4Q": lambda: family_lines(gamma_group("Q8", "pm1"), 4, name="W4Q"),
    "H3": lambda: from_vectors("H3", _h3_vectors()),
    "H4": lambda: from_vectors("H4", _h4_lines()),
    "F4": lambda: from_vectors("F4", _f4_lines()),
}


def _h3_vectors():
    vecs = [tuple(ONE_Q if r == m else ZERO_Q for r in range(3)) for m in range(3)]
    base = (Quat(TAU_INV), ONE_Q, Quat(TAU))
    for shift in range(3):
        b = base[shift:] + base[:shift]
        for signs in itertools.product((1, -1), repeat=3):
            vecs.append(tuple(x * s for x, s in zip(b, signs)))
    return vecs
