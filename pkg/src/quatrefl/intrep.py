"""Bulk exact arithmetic on integral coordinate arrays.

A quaternion over F is stored as 16 integers, index 4*q + f with q the
quaternion unit (1, i, j, k) and f the field basis element (1, sqrt2,
sqrt5, sqrt10).  A vector in H^n is an array of shape (n, 16) and a batch
of vectors has shape (N, n, 16).  Lines are represented by a canonical
primitive integral vector, so equality of lines is equality of arrays.

Everything stays exact: int64 is used when a cheap magnitude bound says it
is safe, otherwise the computation falls back to Python integers (object
arrays).  Small products go through float64 BLAS when the bound is below
2**53, which is exact as well.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .scalars import FieldElem, Quat

_LIM64 = 2 ** 62
_LIM53 = 2 ** 52

# quaternion table: (a, b) -> (c, sign)
_QT = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
    (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
    (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
}
_FT = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, 2), (1, 2): (3, 1), (1, 3): (2, 2),
    (2, 0): (2, 1), (2, 1): (3, 1), (2, 2): (0, 5), (2, 3): (1, 5),
    (3, 0): (3, 1), (3, 1): (2, 2), (3, 2): (1, 5), (3, 3): (0, 10),
}

# structure tensor T[a, b, c]: e_a * e_b = sum_c T[a,b,c] e_c
T = np.zeros((16, 16, 16), dtype=np.int64)
for (qa, qb), (qc, s) in _QT.items():
    for (fa, fb), (fc, m) in _FT.items():
        T[4 * qa + fa, 4 * qb + fb, 4 * qc + fc] = s * m
T_MAX = 10
_TM = np.ascontiguousarray(T.reshape(256, 16))
_TM_F = _TM.astype(np.float64)
# T rearranged as [b, (a, c)] for right contraction
_TB = np.ascontiguousarray(T.transpose(1, 0, 2).reshape(16, 256))

CONJ = np.array([1] * 4 + [-1] * 12, dtype=np.int64)
# Galois automorphisms on the 16 coordinates
_s2 = np.array([1, -1, 1, -1], dtype=np.int64)
_s5 = np.array([1, 1, -1, -1], dtype=np.int64)
SIG2 = np.tile(_s2, 4)
SIG5 = np.tile(_s5, 4)
SIG10 = SIG2 * SIG5
REAL_IDX = np.arange(4)  # coordinates of the real part


def _maxabs(a) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return int(max(abs(int(x)) for x in a.flat))
    return int(np.abs(a).max())


def as_obj(a):
    return a.astype(object) if a.dtype != object else a


def _shrink(a):
    """Return an int64 copy when the values fit, otherwise keep objects."""
    if a.dtype == object and (a.size == 0 or _maxabs(a) < _LIM64):
        return a.astype(np.int64)
    return a


def exact_matmul(A, B, inner: int | None = None):
    """Exact integer matrix product for 2-d arrays."""
    if inner is None:
        inner = A.shape[-1]
    bound = _maxabs(A) * _maxabs(B) * max(inner, 1)
    if A.dtype != object and B.dtype != object:
        if bound < _LIM53:
            return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
        if bound < _LIM64:
            return A @ B
    return _shrink(as_obj(A) @ as_obj(B))


def qmul(A, B):
    """Entrywise quaternion product of broadcastable (..., 16) arrays."""
    A, B = np.broadcast_arrays(A, B)
    shape = A.shape
    a = A.reshape(-1, 16)
    b = B.reshape(-1, 16)
    ma, mb = _maxabs(a), _maxabs(b)
    if a.dtype != object and b.dtype != object and ma * mb < _LIM64 // 256:
        # all 256 coordinate products, then one product with the structure matrix;
        # each output coordinate collects 16 of them with factors up to 10
        P = (a[:, :, None] * b[:, None, :]).reshape(-1, 256)
        if ma * mb * T_MAX * 16 < _LIM53:
            out = np.rint(P.astype(np.float64) @ _TM_F).astype(np.int64)
        elif ma * mb * T_MAX * 16 < _LIM64:
            out = P @ _TM
        else:
            out = _shrink(as_obj(P) @ as_obj(_TM))
    else:
        a, b = as_obj(a), as_obj(b)
        P = (a[:, :, None] * b[:, None, :]).reshape(-1, 256)
        out = _shrink(P @ as_obj(_TM))
    return out.reshape(shape)


# field multiplication structure: [a, b, c]
FT = np.zeros((4, 4, 4), dtype=np.int64)
for (fa, fb), (fc, m) in _FT.items():
    FT[fa, fb, fc] = m
_FTM = FT.reshape(16, 4)
_FTM_F = _FTM.astype(np.float64)


def fscale(Y, f):
    """Multiply quaternion arrays Y (..., 16) by real field elements f (..., 4)."""
    Y, f = np.broadcast_arrays(Y, np.broadcast_to(f[..., None, :], f.shape[:-1] + (4, 4)).reshape(f.shape[:-1] + (16,)))
    shape = Y.shape
    y = Y.reshape(-1, 4, 4)  # (rows, quat comp, field comp)
    ff = f.reshape(-1, 16)[:, :4]
    my, mf = _maxabs(y), _maxabs(ff)
    P = y[:, :, :, None] * ff[:, None, None, :] if y.dtype != object and my * mf < _LIM64 // 64 \
        else as_obj(y)[:, :, :, None] * as_obj(ff)[:, None, None, :]
    P = P.reshape(-1, 4, 16)
    if P.dtype != object and my * mf * 40 < _LIM53:
        out = np.rint(P.astype(np.float64) @ _FTM_F).astype(np.int64)
    elif P.dtype != object and my * mf * 40 < _LIM64:
        out = P @ _FTM
    else:
        out = _shrink(as_obj(P) @ as_obj(_FTM))
    return out.reshape(shape)


def conj(A):
    return A * CONJ


def realpart(A):
    """Real-field part: (..., 16) -> (..., 4)."""
    return A[..., :4]


def field_to_quat(F):
    """Embed (..., 4) field elements as (..., 16) real quaternions."""
    out = np.zeros(F.shape[:-1] + (16,), dtype=F.dtype)
    out[..., :4] = F
    return out


def fmul(F, G):
    """Product of (..., 4) field element arrays."""
    return realpart(qmul(field_to_quat(F), field_to_quat(G)))


def herm(U, V):
    """Hermitian form sum conj(u_i) v_i over the last-but-one axis."""
    return qmul(conj(U), V).sum(axis=-2)


def gram(X, Y=None):
    """All pairwise Hermitian forms: (N,n,16),(M,n,16) -> (N,M,16)."""
    if Y is None:
        Y = X
    N, n, _ = X.shape
    M = Y.shape[0]
    # contract conj(x)_ia T[a,b,c] y_ib
    cx = conj(X).reshape(N, n * 16)
    yt = exact_matmul(Y.reshape(M * n, 16), _TB, inner=16)  # [m,i | a,c]
    yt = yt.reshape(M, n * 16, 16).transpose(1, 0, 2).reshape(n * 16, M * 16)
    out = exact_matmul(cx, yt, inner=n * 16)
    return out.reshape(N, M, 16)


def norms(X):
    """(v, v) for a batch (N, n, 16), returned as (N, 4) field elements."""
    return realpart(herm(X, X))


def galois_norm_cofactor(F):
    """For field elements F (..., 4) return sig2(F)*sig5(F)*sig10(F)."""
    a = F * _s2
    b = F * _s5
    c = F * (_s2 * _s5)
    return fmul(fmul(a, b), c)


def _row_gcd(X):
    flat = X.reshape(X.shape[0], -1)
    if flat.dtype == object:
        return np.array([_gcd_list(r) for r in flat], dtype=object)
    return np.gcd.reduce(flat, axis=1)


def _gcd_list(r):
    g = 0
    for x in r:
        g = gcd(g, int(x))
        if g == 1:
            break
    return g


def first_nonzero(X):
    """Index of the first nonzero coordinate of each vector in (N, n, 16)."""
    nz = (X != 0).any(axis=-1)
    return nz.argmax(axis=1)


def prim(X):
    """Divide each vector (N, n, 16) by the gcd of its coordinates."""
    d = _row_gcd(X)
    if X.dtype == object:
        d = np.array([x if x else 1 for x in d], dtype=object)
        return _shrink(X // d[:, None, None])
    d = np.where(d == 0, 1, d)
    return X // d[:, None, None]


def canon(X):
    """Canonical primitive integral representatives of the lines of X.

    Right-multiply by the conjugate of the first nonzero entry so that it is
    real, then by Galois conjugates (sqrt2 first, then sqrt5) until it is a
    rational integer; contents are divided out between steps and the lead
    is made positive at the end.
    """
    X = np.asarray(X)
    if X.shape[0] == 0:
        return X.astype(np.int64)
    X = prim(X)
    idx = first_nonzero(X)
    rows = np.arange(X.shape[0])
    q = X[rows, idx]  # (N,16)
    Y = prim(qmul(X, conj(q)[:, None, :]))
    f = realpart(Y[rows, idx])
    if (f[:, 1:] != 0).any():
        Y = prim(fscale(Y, (f * _s2)[:, None, :]))
        f = realpart(Y[rows, idx])
        if (f[:, 1:] != 0).any():
            Y = prim(fscale(Y, (f * _s5)[:, None, :]))
    lead = Y[rows, idx, 0]
    if Y.dtype == object:
        sgn = np.array([1 if int(x) > 0 else -1 for x in lead], dtype=object)
        return _shrink(Y * sgn[:, None, None])
    sgn = np.where(lead > 0, 1, -1)
    return Y * sgn[:, None, None]


def canon_basis(X):
    """Make each vector primitive up to a positive rational; keeps the span."""
    d = _row_gcd(X)
    if X.dtype == object:
        return _shrink(X // d[:, None, None])
    return X // d[:, None, None]


def keys(X):
    """Hashable keys (bytes) for canonical int64 arrays, one per vector."""
    X = np.ascontiguousarray(_to64(X))
    return [r.tobytes() for r in X.reshape(X.shape[0], int(np.prod(X.shape[1:])))]


def _to64(X):
    if X.dtype == object:
        if _maxabs(X) >= 2 ** 63:
            raise OverflowError("coordinates exceed 64 bits")
        return X.astype(np.int64)
    return X


# conversions ---------------------------------------------------------------

def quat_to_int(q: Quat):
    """Return (int16 array, denominator) with q = arr / den."""
    vals = [Fraction(c) for x in q.q for c in x.c]  # (q, f) order
    den = lcm(*[v.denominator for v in vals]) if vals else 1
    return [int(v * den) for v in vals], den


def vector_to_int(v) -> np.ndarray:
    """Scale an exact Quat vector to an integral (n, 16) array on the same line."""
    vals = [Fraction(c) for q in v for x in q.q for c in x.c]
    den = 1
    for x in vals:
        den = lcm(den, x.denominator)
    arr = [int(x * den) for x in vals]
    big = max((abs(a) for a in arr), default=0) >= 2 ** 62
    out = np.array(arr, dtype=object if big else np.int64).reshape(len(v), 16)
    return out


def vectors_to_int(vs) -> np.ndarray:
    rows = [vector_to_int(v) for v in vs]
    if not rows:
        return np.zeros((0, 0, 16), dtype=np.int64)
    if any(r.dtype == object for r in rows):
        return np.stack([as_obj(r) for r in rows])
    return np.stack(rows)


def int_to_quat(a, den=1) -> Quat:
    a = [Fraction(int(x), den) for x in a]
    return Quat(*(FieldElem(*a[4 * m:4 * m + 4]) for m in range(4)))


def int_to_vector(row) -> tuple:
    return tuple(int_to_quat(e) for e in row)


def field_from_int(a) -> FieldElem:
    return FieldElem(*(int(x) for x in a[:4]))


# angle classification ------------------------------------------------------

# 8*cos^2 for each class as a field element (a, b, c, d)
ANGLE_CODES = {
    "RIGHT": (0, 0, 0, 0),
    "PI_3": (2, 0, 0, 0),
    "PI_4": (4, 0, 0, 0),
    "PI_5": (3, 0, 1, 0),
    "TWO_PI_5": (3, 0, -1, 0),
    "SAME": (8, 0, 0, 0),
}
ANGLE_ORDER = ["RIGHT", "PI_3", "PI_4", "PI_5", "TWO_PI_5"]
OUTSIDE = -1
SAME = 5


def angle_codes(X, Y=None):
    """Angle class indices (into ANGLE_ORDER) for all pairs, SAME=5, OUTSIDE=-1."""
    if Y is None:
        Y = X
    G = gram(X, Y)  # (N,M,16)
    absq = realpart(qmul(G, conj(G)))  # |g|^2 as (N,M,4)
    nx = norms(X)
    ny = norms(Y)
    prod = fmul(nx[:, None, :], ny[None, :, :])  # (N,M,4)
    lhs = 8 * absq
    out = np.full(G.shape[:2], OUTSIDE, dtype=np.int8)
    for k, name in enumerate(ANGLE_ORDER + ["SAME"]):
        c = np.array(ANGLE_CODES[name], dtype=np.int64)
        rhs = fmul(prod, np.broadcast_to(c, prod.shape))
        hit = (lhs == rhs).all(axis=-1)
        out[hit] = k
    return out


def reflect_lines(alpha, X):
    """Lines r_alpha(x) for each x in X, as scaled vectors N*x - 2 alpha (alpha, x)."""
    N = norms(alpha[None])[0]
    ax = herm(np.broadcast_to(alpha, X.shape), X)  # (M,16)
    t = qmul(np.broadcast_to(alpha, X.shape), ax[:, None, :])
    return qmul(X, field_to_quat(N)) - 2 * t


def reflect_batch(A, X, max_rows: int = 60000):
    """Images r_a(x) for every reflector a in A and x in X: (R, M, n, 16).

    Uses the scaled form N_a x - 2 a (a, x); the line is what matters.
    """
    R, n, _ = A.shape
    M = X.shape[0]
    per = max(1, max_rows // max(M * n, 1))
    out = []
    for s in range(0, R, per):
        a = A[s:s + per]
        Na = norms(a)  # (r, 4)
        G = gram(a, X)  # (r, M, 16)
        t = qmul(a[:, None, :, :], G[:, :, None, :])  # (r, M, n, 16)
        sx = qmul(X[None, :, :, :], field_to_quat(Na)[:, None, None, :])
        out.append(sx - 2 * t)
    return np.concatenate(out) if out else np.zeros((0, M, n, 16), dtype=np.int64)
