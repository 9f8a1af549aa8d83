"""Finite quaternionic matrix groups: closure, fixed spaces, codimension censuses."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from collections import Counter

import numpy as np
from sympy.utilities.iterables import partitions

from . import intrep as ir
from . import modp
from .geometry import Line, _rref_left, norm2
from .poly import IntPoly, product
from .scalars import Quat, ONE_Q, ZERO_Q, quat_inv
from .systems import CapExceeded, GammaGroup, LineSystem

DEFAULT_CAP = 10 ** 5

# group orders not obtained by enumeration
REGISTRY_ORDERS = {
    "Q": (12096, "order table: |W(Q)| = 12096"),
    "R": (1209600, "order table: |W(R)| = 1209600"),
    "S1": (6912, "derived: c_{S1}(1) from the codimension table"),
    "S2": (82944, "derived: c_{S2}(1) from the codimension table"),
    "S3": (3317760, "order table: |W(S3)| = 3317760"),
    "T": (2592000, "order table: |W(T)| = 2592000"),
    "U": (27371520, "order table: |W(U)| = 27371520"),
}


# ------------------------------------------------------------ exact matrices

def identity(n: int):
    return tuple(tuple(ONE_Q if r == c else ZERO_Q for c in range(n)) for r in range(n))


def mat_mul(A, B):
    n = len(A)
    m = len(B[0])
    out = []
    for r in range(n):
        row = []
        for c in range(m):
            acc = ZERO_Q
            for k in range(len(B)):
                if A[r][k] and B[k][c]:
                    acc = acc + A[r][k] * B[k][c]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def conj_transpose(A):
    return tuple(tuple(A[c][r].conjugate() for c in range(len(A))) for r in range(len(A[0])))


def is_unitary(A) -> bool:
    return mat_mul(conj_transpose(A), A) == identity(len(A))


def apply(A, v):
    return tuple(sum((A[r][c] * v[c] for c in range(len(v))), ZERO_Q) for r in range(len(A)))


def reflection_matrix(l: Line, zeta: Quat | None = None):
    """Matrix of v -> v + a (zeta - 1)(a, v)/(a, a); zeta defaults to -1."""
    z = Quat(-1) if zeta is None else zeta
    a = l.rep
    n = len(a)
    inv_n = norm2(a).inverse()
    zm = (z - 1) * inv_n
    return tuple(
        tuple((ONE_Q if r == c else ZERO_Q) + a[r] * zm * a[c].conjugate() for c in range(n))
        for r in range(n)
    )


def apply_int(A, X):
    """Apply an exact matrix to integral vectors (M, n, 16); output is a scaled image."""
    n = len(A)
    ints = []
    den = 1
    for r in range(n):
        for c in range(n):
            arr, d = ir.quat_to_int(A[r][c])
            ints.append((arr, d))
            den = den * d // np.gcd(den, d)
    R = np.zeros((n, n, 16), dtype=object)
    for idx, (arr, d) in enumerate(ints):
        R[idx // n, idx % n] = [a * (den // d) for a in arr]
    R = ir._shrink(R)
    # Y[m, r] = sum_c R[r, c] * X[m, c]
    out = None
    for c in range(n):
        term = ir.qmul(R[None, :, c, :], X[:, c, None, :])
        out = term if out is None else out + term
    return out


def fixed_codim(M) -> int:
    """H-codimension of the fixed space of an exact matrix (rank of M - I)."""
    n = len(M)
    rows = [tuple(M[r][c] - (ONE_Q if r == c else ZERO_Q) for c in range(n)) for r in range(n)]
    basis, _ = _rref_left(rows)
    return len(basis)


# ------------------------------------------------------------ closure mod p

@dataclass
class GroupEnum:
    elements: np.ndarray  # (G, 2n, 2n) mod p
    generators: list
    ctx: modp.ModP
    n: int

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def __len__(self):
        return self.order


def _key(a) -> bytes:
    return a.astype(np.int32).tobytes()


def _closure_modp(gens, p, cap):
    m = gens[0].shape[0]
    eye = np.eye(m, dtype=np.int64)
    seen = {_key(eye)}
    elems = [eye]
    frontier = eye[None]
    G = np.stack(gens)
    while len(frontier):
        prods = np.matmul(frontier[:, None], G[None]) % p
        prods = prods.reshape(-1, m, m)
        fresh = []
        for a in prods:
            k = _key(a)
            if k not in seen:
                seen.add(k)
                fresh.append(a)
        if len(seen) > cap:
            raise CapExceeded(f"group order exceeds {cap}")
        elems.extend(fresh)
        frontier = np.stack(fresh) if fresh else np.zeros((0, m, m), dtype=np.int64)
    return np.stack(elems), seen


def close_group(gens, cap: int = DEFAULT_CAP, ctx: modp.ModP | None = None, greedy: bool = True) -> GroupEnum:
    """Enumerate the group generated by exact unitary matrices, reduced mod p.

    With greedy=True only generators not already in the running group are
    kept, which keeps the breadth-first frontier products cheap.
    """
    ctx = ctx or modp.context()
    if not gens:
        raise ValueError("no generators")
    n = len(gens[0])
    mats = [ctx.matrix(g) for g in gens]
    if not greedy:
        elems, _ = _closure_modp(mats, ctx.p, cap)
        return GroupEnum(elems, list(gens), ctx, n)
    used = []
    used_exact = []
    seen = set()
    elems = None
    for g, gm in zip(gens, mats):
        if _key(gm) in seen:
            continue
        used.append(gm)
        used_exact.append(g)
        elems, seen = _closure_modp(used, ctx.p, cap)
    return GroupEnum(elems, used_exact, ctx, n)


def system_generators(ls: LineSystem, idx=None) -> list:
    """Exact reflection matrices for the lines of ls (all units per line)."""
    idx = range(ls.n_lines) if idx is None else idx
    out = []
    for i in idx:
        for z in ls.unit_list(i):
            out.append(reflection_matrix(ls.lines[i], z))
    return out


def reflection_group(ls: LineSystem, idx=None, cap: int = DEFAULT_CAP, ctx=None) -> GroupEnum:
    return close_group(system_generators(ls, idx), cap=cap, ctx=ctx)


def fixed_dims_modp(g: GroupEnum) -> np.ndarray:
    """F_p-dimension of each element's fixed space via cyclic trace averages.

    dim fix(w) = (1/ord w) * sum_{k < ord w} tr(w^k); the value is an integer
    at most 2n < p, so reducing mod p loses nothing.
    """
    p = g.ctx.p
    E = g.elements
    G, m, _ = E.shape
    eye = np.eye(m, dtype=np.int64)
    acc = np.full(G, m, dtype=np.int64)
    order = np.zeros(G, dtype=np.int64)
    live = np.arange(G)
    P = E.copy()
    k = 1
    while len(live):
        cur = P[live]
        is_id = (cur == eye).all(axis=(1, 2))
        order[live[is_id]] = k
        keep = ~is_id
        live = live[keep]
        cur = cur[keep]
        acc[live] = (acc[live] + np.trace(cur, axis1=1, axis2=2)) % p
        P[live] = np.matmul(cur, E[live]) % p
        k += 1
        if k > 10 ** 4:  # pragma: no cover
            raise RuntimeError("element order runaway")
    inv = np.array([pow(int(o), -1, p) for o in order], dtype=np.int64)
    dims = acc % p * inv % p
    return dims


def codim_census(g: GroupEnum) -> IntPoly:
    """c_W(t): count elements by H-codimension of their fixed space."""
    dims = fixed_dims_modp(g)
    m = 2 * g.n
    if ((m - dims) % 2).any() or (dims > m).any():
        raise ArithmeticError("fixed-space dimension not even; bad reduction")
    codims = (m - dims) // 2
    cnt = Counter(codims.tolist())
    return IntPoly([cnt.get(d, 0) for d in range(g.n + 1)])


def codim_census_exact(elements) -> IntPoly:
    cnt = Counter(fixed_codim(w) for w in elements)
    return IntPoly([cnt.get(d, 0) for d in range(max(cnt) + 1)])


def close_group_exact(gens, cap: int = 5000) -> list:
    """Exact closure with Quat matrices (slow; small groups only)."""
    n = len(gens[0])
    e = identity(n)
    seen = {e}
    out = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mat_mul(a, g)
                if b not in seen:
                    seen.add(b)
                    out.append(b)
                    nxt.append(b)
                    if len(out) > cap:
                        raise CapExceeded(f"group order exceeds {cap}")
        frontier = nxt
    return out


# ------------------------------------------------------------ families

def family_codim_poly(m: int, p: int, n: int) -> IntPoly:
    """prod_{k=1}^{n-1} (1 + (k m - 1) t) * (1 + (n p - 1) t)."""
    if p < 1 or m % p:
        raise ValueError("|Delta| must divide |Gamma|")
    if n < 1:
        raise ValueError("rank must be positive")
    return product([IntPoly((1, k * m - 1)) for k in range(1, n)] + [IntPoly((1, n * p - 1))])


def family_poincare_poly(m: int, n: int) -> IntPoly:
    """(1 + t) prod_{k=1}^{n-1} (1 + (1 + k m) t), valid when Delta != 1."""
    return product([IntPoly((1, 1))] + [IntPoly((1, 1 + k * m)) for k in range(1, n)])


def nonidentity_products(m: int, kmax: int):
    """a(k), b(k): sequences of k non-identity elements with product g != 1, resp. = 1."""
    a = {0: 0, 1: 1}
    b = {0: 1, 1: 0}
    for k in range(2, kmax + 1):
        b[k] = (m - 1) * a[k - 1]
        a[k] = b[k - 1] + (m - 2) * a[k - 1]
    return a, b


def _cycle_class_size(lam: dict, n: int) -> int:
    den = 1
    for part, mult in lam.items():
        den *= part ** mult * factorial(mult)
    return factorial(n) // den


def family_codim_census(gamma: GammaGroup | None = None, n: int = 1, m: int | None = None,
                        p: int | None = None) -> IntPoly:
    """Codimension census of W_n(Gamma, Delta) by summing over cycle types.

    The number of elements with d-dimensional fixed space is
    sum_lambda c_lambda C(l, d) m^(n - l) sum_{delta in Delta} f(delta, l - d).
    """
    if gamma is not None:
        m, p = gamma.order, len(gamma.delta)
    a, b = nonidentity_products(m, n)
    counts = [0] * (n + 1)  # indexed by fixed dimension
    for lam in partitions(n):
        lam = dict(lam)
        ell = sum(lam.values())
        c = _cycle_class_size(lam, n)
        for d in range(ell + 1):
            k = ell - d
            # Delta holds the identity once and p - 1 other elements
            f = b[k] + (p - 1) * a[k]
            counts[d] += c * comb(ell, d) * m ** (n - ell) * f
    return IntPoly([counts[n - e] for e in range(n + 1)])


def family_generators(gamma: GammaGroup, n: int) -> list:
    """Monomial generators of W_n(Gamma, Delta): reflections in e_p - e_q g and diag(delta)."""
    from .systems import family_lines
    ls = family_lines(gamma, n)
    return system_generators(ls)


def product_decomposition(w, gamma: GammaGroup, n: int):
    """Split w in W_n(Gamma) as x v with v fixing e_n and x from the standard transversal."""
    col = [w[r][n - 1] for r in range(n)]
    nz = [r for r in range(n) if col[r]]
    if len(nz) != 1 or col[nz[0]] not in set(gamma.elements):
        raise ValueError("matrix is not in the monomial group")
    mrow = nz[0]
    g = col[mrow]
    if mrow == n - 1:
        x = tuple(tuple((g if r == n - 1 else ONE_Q) if r == c else ZERO_Q for c in range(n))
                  for r in range(n))
    else:
        # x = D (m n) D^{-1} with D = diag(1, ..., g^{-1}) maps e_n to e_m g
        gi = quat_inv(g)
        D = tuple(tuple((gi if r == n - 1 else ONE_Q) if r == c else ZERO_Q for c in range(n))
                  for r in range(n))
        Di = tuple(tuple((g if r == n - 1 else ONE_Q) if r == c else ZERO_Q for c in range(n))
                   for r in range(n))
        P = [[ZERO_Q] * n for _ in range(n)]
        for r in range(n):
            t = {mrow: n - 1, n - 1: mrow}.get(r, r)
            P[r][t] = ONE_Q
        x = mat_mul(mat_mul(D, tuple(tuple(r) for r in P)), Di)
    v = mat_mul(_monomial_inverse(x), w)
    return x, v


def _monomial_inverse(x):
    return conj_transpose(x)
