"""Reduction of H_F-matrices modulo a split prime.

For a prime p with p mod 40 in {1, 9, 31, 39} both 2 and 5 are squares
mod p, and H splits: i -> [[0,-1],[1,0]], j -> [[a,b],[b,-a]] with
a^2 + b^2 = -1.  An n x n quaternion matrix becomes a 2n x 2n matrix over
F_p.  Reduction is injective on a finite group whose entries are integral
away from 2 and 5 (the kernel of reduction in GL over a p-adic ring with
p > 2 is torsion free), which is what makes group closure mod p exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import nextprime
from sympy.ntheory import sqrt_mod

from .scalars import FieldElem, Quat

DEFAULT_START = 2 ** 28 - 2 ** 20


@dataclass(frozen=True)
class ModP:
    p: int
    s2: int
    s5: int
    basis: np.ndarray  # (16, 2, 2): images of e_{4q+f}

    def field(self, x: FieldElem) -> int:
        a, b, c, d = x.c
        p = self.p
        vals = (1, self.s2, self.s5, self.s2 * self.s5 % p)
        out = 0
        for coef, v in zip((a, b, c, d), vals):
            if coef:
                out += _frac_mod(coef, p) * v
        return out % p

    def quat(self, q: Quat) -> np.ndarray:
        coords = np.array([_frac_mod(c, self.p) for x in q.q for c in x.c], dtype=np.int64)
        return np.einsum("c,cab->ab", coords, self.basis) % self.p

    def int_coords(self, A) -> np.ndarray:
        """(..., 16) integer coordinates -> (..., 2, 2) matrices mod p."""
        A = np.asarray(A)
        if A.dtype == object:
            A = np.vectorize(lambda x: int(x) % self.p, otypes=[np.int64])(A)
        else:
            A = A % self.p
        flat = A.reshape(-1, 16)
        out = (flat @ self.basis.reshape(16, 4)) % self.p
        return out.reshape(A.shape[:-1] + (2, 2))

    def matrix(self, M) -> np.ndarray:
        """n x n Quat matrix -> 2n x 2n matrix mod p."""
        n = len(M)
        out = np.zeros((2 * n, 2 * n), dtype=np.int64)
        for r in range(n):
            for c in range(n):
                if M[r][c]:
                    out[2 * r:2 * r + 2, 2 * c:2 * c + 2] = self.quat(M[r][c])
        return out

    def vector(self, v) -> np.ndarray:
        """Vector in H^n -> 2n x 2 block column."""
        return np.concatenate([self.quat(x) for x in v], axis=0)


def _frac_mod(x, p: int) -> int:
    x = Fraction(x)
    return x.numerator % p * pow(x.denominator % p, -1, p) % p


def _ok(p: int) -> bool:
    return p % 40 in (1, 9, 31, 39)


@lru_cache(maxsize=8)
def context(start: int = DEFAULT_START) -> ModP:
    """First suitable prime after start, with its splitting data."""
    p = nextprime(start)
    while not _ok(p):
        p = nextprime(p)
    s2 = int(sqrt_mod(2, p))
    s5 = int(sqrt_mod(5, p))
    a = b = None
    for bb in range(p):
        r = sqrt_mod((-1 - bb * bb) % p, p)
        if r is not None:
            a, b = int(r), bb
            break
    one = np.eye(2, dtype=np.int64)
    qi = np.array([[0, -1], [1, 0]], dtype=np.int64) % p
    qj = np.array([[a, b], [b, -a]], dtype=np.int64) % p
    qk = (qi @ qj) % p
    fvals = (1, s2, s5, s2 * s5 % p)
    basis = np.zeros((16, 2, 2), dtype=np.int64)
    for q, m in enumerate((one, qi, qj, qk)):
        for f, v in enumerate(fvals):
            basis[4 * q + f] = (m * v) % p
    return ModP(p, s2, s5, basis)


def second_context() -> ModP:
    return context(DEFAULT_START + 2 ** 22)


def batch_matmul(A, B, p: int):
    """(..., m, m) @ (..., m, m) mod p with int64 safety for p < 2**29."""
    return np.matmul(A, B) % p


def rank_mod(M, p: int) -> int:
    """Rank of an integer matrix mod p by Gaussian elimination."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if A[i, c]:
                piv = i
                break
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
        if r == rows:
            break
    return r
