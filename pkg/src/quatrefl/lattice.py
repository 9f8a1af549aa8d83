"""Flat lattices of line systems: enumeration, Moebius values, Poincare and codimension polynomials.

A flat X of rank d is stored by its line mask.  While building, each flat
also carries an integral basis C of its orthogonal complement.  For a line
l outside X the vector ((c_i, l))_i is the image of l in H^n / X; two lines
give the same cover X + l exactly when their images span the same line, so
the upper covers of X are the classes of canonical images.
"""
from __future__ import annotations

import hashlib
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from . import intrep as ir
from .geometry import Subspace, span
from .poly import IntPoly
from .systems import LineSystem, SystemError_, CapExceeded

# rows of images handed to canon at once; bounds the 256-wide product buffers
CHUNK_ROWS = 40000
DELRES_CAP = 25


# ----------------------------------------------------------- fingerprints

def _k2(**angles):
    return tuple(sorted(angles.items()))


# rank 2: (#lines, angle multiset over unordered pairs)
RANK2_TYPES = {
    (2, _k2(RIGHT=1)): "A1xA1",
    (3, _k2(PI_3=3)): "A2",
    (4, _k2(RIGHT=2, PI_4=4)): "B2",
    (5, _k2(PI_5=5, TWO_PI_5=5)): "G(5,5,2)",
    (6, _k2(RIGHT=3, PI_4=12)): "G(4,2,2)",
    (10, _k2(RIGHT=5, PI_4=40)): "W2(Q,pm1)",
}


def _kn(**subs):
    return tuple(sorted(subs.items()))


_T = {"AA": "A1xA1", "A2": "A2", "B2": "B2", "G552": "G(5,5,2)", "W2": "W2(Q,pm1)"}


def _sub(**kw):
    return _kn(**{_T[k]: v for k, v in kw.items()})


# rank >= 3: (rank, #lines, census of rank-2 subflats)
HIGHER_TYPES = {
    (3, 3, _sub(AA=3)): "A1^3",
    (3, 4, _sub(A2=1, AA=3)): "A2xA1",
    (3, 6, _sub(AA=3, A2=4)): "A3",
    (3, 9, _sub(AA=6, B2=3, A2=4)): "B3",
    (3, 9, _sub(A2=12)): "G(3,3,3)",
    (3, 12, _sub(B2=3, A2=16)): "G(4,4,3)",
    (3, 27, _sub(W2=3, A2=64, AA=24)): "W3(Q,pm1)",
    (3, 15, _sub(AA=15, A2=10, G552=6)): "H3",
    (3, 6, _sub(G552=1, AA=5)): "G(5,5,2)xA1",
    (3, 15, _sub(G552=3, A2=25)): "G(5,5,3)",
    (4, 36, _sub(AA=54, A2=192)): "S1",
    (4, 18, _sub(AA=27, A2=42)): "G(3,3,4)",
    (4, 10, _sub(AA=15, A2=10)): "A4",
    (4, 10, _sub(A2=12, AA=9)): "G(3,3,3)xA1",
    (4, 7, _sub(AA=9, A2=4)): "A3xA1",
    (4, 6, _sub(A2=2, AA=9)): "A2xA2",
    (4, 4, _sub(AA=6)): "A1^4",
    (4, 5, _sub(A2=1, AA=7)): "A2xA1xA1",
    (4, 52, _sub(W2=6, A2=256, AA=192)): "W4(Q,pm1)",
    (4, 12, _sub(AA=18, A2=16)): "D4",
    (4, 24, _sub(AA=72, A2=32, B2=18)): "F4",
    # whole exceptional systems
    (3, 63, _kn(**{"A2": 336, "G(4,2,2)": 63})): "Q",
    (3, 315, _sub(A2=8400, G552=1008, W2=315)): "R",
    (4, 72, _sub(AA=216, A2=672, B2=54)): "S2",
    (4, 180, _sub(AA=2160, A2=3840, W2=54)): "S3",
    (4, 180, _sub(AA=1350, A2=4200, G552=216)): "T",
    (5, 165, _sub(AA=2970, A2=3520)): "U",
}


def synthetic_label(key) -> str:
    """Stable name for a fingerprint key missing from the registry."""
    h = hashlib.sha1(repr(key).encode()).hexdigest()[:6]
    return f"X{key[0]}.{key[1]}.{h}"


def rank2_key(ls: LineSystem, idx) -> tuple:
    idx = np.asarray(idx)
    A = ls.angle_matrix[np.ix_(idx, idx)]
    iu = np.triu_indices(len(idx), 1)
    cnt = Counter(int(c) for c in A[iu])
    names = ir.ANGLE_ORDER
    return (len(idx), tuple(sorted((names[c] if c >= 0 else "OUTSIDE", m) for c, m in cnt.items())))


def rank1_label(ls: LineSystem, i: int) -> str:
    us = ls.unit_list(i)
    if len(us) == 1 and us[0] == -1:
        return "A1"
    return f"C{len(us) + 1}"


# --------------------------------------------------------------- lattice

@dataclass
class Flat:
    """Read-only view of one flat."""

    lattice: "FlatLattice"
    rank: int
    index: int

    @property
    def line_mask(self) -> np.ndarray:
        return self.lattice.masks[self.rank][self.index]

    @property
    def lines(self) -> list:
        return np.flatnonzero(self.line_mask).tolist()

    @property
    def mobius(self) -> int:
        return int(self.lattice.mobius[self.rank][self.index])

    @property
    def parabolic_order(self) -> int:
        return int(self.lattice.orders[self.rank][self.index])

    @property
    def elliptic(self) -> int:
        return int(self.lattice.elliptic[self.rank][self.index])

    @property
    def fingerprint(self) -> str:
        return self.lattice.labels[self.rank][self.index]

    @property
    def subspace(self) -> Subspace:
        ls = self.lattice.system
        if self.rank == 0:
            from .geometry import zero_subspace
            return zero_subspace(ls.n)
        return span([ls.lines[i].rep for i in self.lines])


@dataclass
class FlatLattice:
    system: LineSystem
    masks: list                      # rank -> (F_d, N) bool
    covers: list                     # rank d >= 1 -> csr (F_d, F_{d-1})
    mobius: list = field(default_factory=list)
    orders: list = field(default_factory=list)
    elliptic: list = field(default_factory=list)
    labels: list = field(default_factory=list)
    perp_labels: list = field(default_factory=list)
    _inc: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.masks) - 1

    def counts(self) -> list:
        return [len(m) for m in self.masks]

    def __len__(self):
        return sum(self.counts())

    def flat(self, d: int, i: int) -> Flat:
        return Flat(self, d, i)

    def flats(self, d: int | None = None):
        ranks = range(self.rank + 1) if d is None else [d]
        for r in ranks:
            for i in range(len(self.masks[r])):
                yield Flat(self, r, i)

    @cached_property
    def mask_index(self) -> dict:
        out = {}
        for d, M in enumerate(self.masks):
            for i, k in enumerate(_packed_keys(M)):
                out[k] = (d, i)
        return out

    def find(self, line_idx) -> Flat | None:
        m = np.zeros(self.system.n_lines, dtype=bool)
        m[list(line_idx)] = True
        hit = self.mask_index.get(_packed_keys(m[None])[0])
        return Flat(self, *hit) if hit else None

    def incidence(self, d: int, r: int):
        """Sparse boolean containment (F_d, F_r) for r < d."""
        if (d, r) in self._inc:
            return self._inc[(d, r)]
        Fd, Fr = len(self.masks[d]), len(self.masks[r])
        if r == 0:
            out = sparse.csr_matrix(np.ones((Fd, 1), dtype=np.int64))
        elif r == 1:
            out = sparse.csr_matrix(self.masks[d].astype(np.int64))
        elif r == d - 1:
            out = self.covers[d]
        else:
            prod = self.covers[d] @ self.incidence(d - 1, r)
            out = (prod > 0).astype(np.int64).tocsr()
        if out.shape != (Fd, Fr):  # pragma: no cover
            raise AssertionError("incidence shape")
        self._inc[(d, r)] = out
        return out


def _packed_keys(M) -> list:
    P = np.ascontiguousarray(np.packbits(M, axis=1))
    return [r.tobytes() for r in P]


def _identity_complement(n: int) -> np.ndarray:
    C = np.zeros((1, n, n, 16), dtype=np.int64)
    for i in range(n):
        C[0, i, i, 0] = 1
    return C


def _expand(V, C, masks):
    """Upper covers of a batch of flats.

    Rows are the (flat, outside line) pairs.  Returns the parent flat of each
    cover, the cover index of each row, the line of each row and one
    canonical image per cover.
    """
    B, k, n, _ = C.shape
    N = V.shape[0]
    G = ir.gram(C.reshape(B * k, n, 16), V)  # (B*k, N, 16)
    img = G.reshape(B, k, N, 16).transpose(0, 2, 1, 3)
    fb, li = np.nonzero(~masks)
    rows = ir._to64(ir.canon(np.ascontiguousarray(img[fb, li])))
    key = np.ascontiguousarray(np.concatenate([fb[:, None].astype(np.int64), rows.reshape(len(rows), -1)], axis=1))
    kv = key.view(np.dtype((np.void, key.dtype.itemsize * key.shape[1]))).ravel()
    _, first, inv = np.unique(kv, return_index=True, return_inverse=True)
    return fb[first], inv.ravel(), li, rows[first]


def _expand_job(args):
    return _expand(*args)


def _new_complements(C, a):
    """Basis of Y^perp inside X^perp for Y = X + l, given l's image a (k quats)."""
    G, k, n, _ = C.shape
    nz = (a != 0).any(axis=-1)
    q = nz.argmax(axis=1)
    g = np.arange(G)
    aq = a[g, q]  # (G,16)
    Nq = ir.realpart(ir.qmul(ir.conj(aq), aq))  # (G,4)
    t1 = ir.fscale(C, np.broadcast_to(Nq[:, None, None, :], (G, k, n, 4)))
    s = ir.qmul(np.broadcast_to(aq[:, None, :], a.shape), ir.conj(a))  # (G,k,16)
    Cq = C[g, q]  # (G,n,16)
    t2 = ir.qmul(np.broadcast_to(Cq[:, None], C.shape), np.broadcast_to(s[:, :, None, :], C.shape))
    X = t1 - t2
    keep = np.ones((G, k), dtype=bool)
    keep[g, q] = False
    X = X[keep].reshape(G * (k - 1), n, 16)
    return ir._to64(ir.canon(X)).reshape(G, k - 1, n, 16)


def _log(progress, msg):
    if progress:
        print(msg, file=sys.stderr, flush=True)


def build_lattice(ls: LineSystem, progress: bool = False, threads: int = 1) -> FlatLattice:
    """All flats of ls, layer by layer, with cover relations.

    Layers are sorted by their line tuples so the result does not depend
    on the order of discovery or on the number of worker processes.
    """
    N, n = ls.n_lines, ls.n
    V = ir._to64(ls.vectors)
    masks = [np.zeros((1, N), dtype=bool)]
    covers = [None]
    comp = _identity_complement(n)
    pool = ProcessPoolExecutor(threads) if threads > 1 else None
    try:
        d = 0
        while True:
            M = masks[d]
            full = M.all(axis=1)
            if full.any():
                if len(M) != 1:
                    raise SystemError_("a proper flat contains every line")
                break
            k = n - d
            if k == 1:
                # a hyperplane: everything outside lies in the whole space
                masks.append(np.ones((1, N), dtype=bool))
                covers.append(sparse.csr_matrix(np.ones((1, len(M)), dtype=np.int64)))
                _log(progress, f"rank {d + 1}: 1 flats")
                d += 1
                continue
            per = max(1, CHUNK_ROWS // (N * k))
            jobs = [(V, comp[s:s + per], M[s:s + per]) for s in range(0, len(M), per)]
            results = pool.map(_expand_job, jobs) if pool else map(_expand_job, jobs)
            index: dict = {}
            new_masks = []
            new_imgs = []
            new_parent = []
            edges_c, edges_p = [], []
            for (s, (parent, inv, li, reps)) in zip(range(0, len(M), per), results):
                parent = parent + s
                Y = M[parent].copy()
                Y[inv, li] = True
                for g, key in enumerate(_packed_keys(Y)):
                    j = index.get(key)
                    if j is None:
                        j = len(new_masks)
                        index[key] = j
                        new_masks.append(Y[g])
                        new_imgs.append(reps[g])
                        new_parent.append(parent[g])
                    edges_c.append(j)
                    edges_p.append(parent[g])
            Mn = np.array(new_masks)
            order = sorted(range(len(Mn)), key=lambda i: tuple(np.flatnonzero(Mn[i])))
            pos = np.empty(len(order), dtype=np.int64)
            pos[order] = np.arange(len(order))
            Mn = Mn[order]
            cov = sparse.csr_matrix((np.ones(len(edges_c), dtype=np.int64),
                                     (pos[np.array(edges_c)], np.array(edges_p))),
                                    shape=(len(Mn), len(M)))
            if k - 1 >= 2:
                par = np.array(new_parent)[order]
                imgs = np.array(new_imgs)[order]
                comp = np.concatenate([_new_complements(comp[par[s:s + 2000]], imgs[s:s + 2000])
                                       for s in range(0, len(par), 2000)])
            else:
                comp = None
            masks.append(Mn)
            covers.append(cov)
            _log(progress, f"rank {d + 1}: {len(Mn)} flats")
            d += 1
    finally:
        if pool:
            pool.shutdown()
    return FlatLattice(ls, masks, covers)


# ---------------------------------------------------------------- Moebius

def mobius_all(fl: FlatLattice) -> FlatLattice:
    """mu(X) = sum over Y < X of (-1)^(dim X - dim Y - 1) mu(Y), mu(0) = 1."""
    mu = [np.ones(1, dtype=np.int64)]
    for d in range(1, fl.rank + 1):
        acc = np.zeros(len(fl.masks[d]), dtype=np.int64)
        for r in range(d):
            sign = -1 if (d - r - 1) % 2 else 1
            acc += sign * (fl.incidence(d, r) @ mu[r])
        mu.append(acc)
    fl.mobius = mu
    return fl


def poincare(fl: FlatLattice) -> IntPoly:
    if not fl.mobius:
        mobius_all(fl)
    return IntPoly([int(m.sum()) for m in fl.mobius])


def _restrict(V, i):
    """Lines of the restriction to the hyperplane of V[i], as projections."""
    a = V[i]
    rest = np.delete(V, i, axis=0)
    if not len(rest):
        return rest
    Na = ir.norms(a[None])[0]
    g = ir.gram(a[None], rest)[0]  # (M,16)
    P = ir.fscale(rest, np.broadcast_to(Na, rest.shape[:2] + (4,))) - ir.qmul(
        np.broadcast_to(a, rest.shape), g[:, None, :])
    keep = (P != 0).any(axis=(1, 2))
    P = ir._to64(ir.canon(P[keep]))
    out, seen = [], set()
    for row, k in zip(P, ir.keys(P)):
        if k not in seen:
            seen.add(k)
            out.append(row)
    return np.array(out).reshape(len(out), *V.shape[1:])


def poincare_deletion_restriction(ls, cap: int = DELRES_CAP) -> IntPoly:
    """p_A = p_(A minus H0) + t p_(A restricted to H0), H0 the last hyperplane."""
    V = ls.vectors if isinstance(ls, LineSystem) else np.asarray(ls)
    if len(V) > cap:
        raise CapExceeded(f"deletion-restriction limited to {cap} lines, got {len(V)}")
    memo: dict = {}

    def rec(V):
        if len(V) == 0:
            return IntPoly.one()
        if len(V) == 1:
            return IntPoly((1, 1))
        key = frozenset(ir.keys(V))
        if key in memo:
            return memo[key]
        out = rec(V[:-1]) + rec(_restrict(V, len(V) - 1)).shift(1)
        memo[key] = out
        return out

    return rec(ir._to64(V))


# ----------------------------------------------------------- fingerprints

def assign_fingerprints(fl: FlatLattice) -> FlatLattice:
    ls = fl.system
    labels = [["0"]]
    if fl.rank >= 1:
        labels.append([rank1_label(ls, int(np.flatnonzero(m)[0])) for m in fl.masks[1]])
    if fl.rank >= 2:
        labels.append([_lookup(rank2_key(ls, np.flatnonzero(m)), RANK2_TYPES) for m in fl.masks[2]])
    for d in range(3, fl.rank + 1):
        names = sorted(set(labels[2]))
        onehot = np.zeros((len(labels[2]), len(names)), dtype=np.int64)
        col = {x: j for j, x in enumerate(names)}
        for i, x in enumerate(labels[2]):
            onehot[i, col[x]] = 1
        cnt = np.asarray(fl.incidence(d, 2) @ onehot)
        nl = fl.masks[d].sum(axis=1)
        out = []
        cache = {}
        for row, m in zip(cnt, nl):
            key = (d, int(m), tuple(sorted((names[j], int(c)) for j, c in enumerate(row) if c)))
            if key not in cache:
                cache[key] = _lookup(key, HIGHER_TYPES)
            out.append(cache[key])
        labels.append(out)
    fl.labels = labels
    return fl


def _lookup(key, table) -> str:
    return table.get(key) or synthetic_label(key if len(key) == 3 else (2,) + key)


def fingerprint(fl: FlatLattice, x: Flat) -> str:
    if not fl.labels:
        assign_fingerprints(fl)
    return fl.labels[x.rank][x.index]


def perp_masks(fl: FlatLattice, M) -> np.ndarray:
    """Lines perpendicular to every line of each flat in M."""
    A = fl.system.angle_matrix
    notperp = (A != ir.ANGLE_ORDER.index("RIGHT")).astype(np.int64)
    return (M.astype(np.int64) @ notperp) == 0


def assign_perp_labels(fl: FlatLattice) -> FlatLattice:
    """Label of the flat spanned by the lines perpendicular to each flat."""
    if not fl.labels:
        assign_fingerprints(fl)
    out = []
    for d in range(fl.rank + 1):
        if d < 2 or d == fl.rank:
            out.append([""] * len(fl.masks[d]))
            continue
        P = perp_masks(fl, fl.masks[d])
        row = []
        for k, m in zip(_packed_keys(P), P):
            if not m.any():
                row.append("no-perp")
                continue
            hit = fl.mask_index.get(k)
            if hit is None:  # pragma: no cover - perpendicular lines always close up
                raise AssertionError("perpendicular lines do not form a flat")
            row.append("perp-" + fl.labels[hit[0]][hit[1]])
        out.append(row)
    fl.perp_labels = out
    return fl


def _split(labels, tags):
    """Append a tag to each label whose class carries more than one tag."""
    by = {}
    for lab, tg in zip(labels, tags):
        by.setdefault(lab, set()).add(tg)
    return [f"{lab}({tg})" if len(by[lab]) > 1 else lab for lab, tg in zip(labels, tags)]


def refined_labels(fl: FlatLattice, depth: int = 1) -> list:
    """Fingerprints split by perpendicular type.

    depth 1 splits a class by the type of the flat spanned by the lines
    perpendicular to it.  depth 2 further splits a class still uniform at
    depth 1 by the split rank-2 subflats it contains.
    """
    if not fl.perp_labels:
        assign_perp_labels(fl)
    out = [_split(fl.labels[d], fl.perp_labels[d]) for d in range(fl.rank + 1)]
    if depth < 2 or fl.rank < 3:
        return out
    sub = out[2]
    names = sorted(set(sub) - set(fl.labels[2]))
    if not names:
        return out
    col = {x: j for j, x in enumerate(names)}
    onehot = np.zeros((len(sub), len(names)), dtype=np.int64)
    for i, x in enumerate(sub):
        if x in col:
            onehot[i, col[x]] = 1
    for d in range(3, fl.rank):
        cnt = np.asarray(fl.incidence(d, 2) @ onehot)
        tags = [" ".join(f"{c} {names[j]}" for j, c in enumerate(row) if c) or "none" for row in cnt]
        refined = []
        by = {}
        for lab, tg in zip(out[d], tags):
            by.setdefault(lab, set()).add(tg)
        for lab, tg in zip(out[d], tags):
            refined.append(f"{lab}[{tg}]" if len(by[lab]) > 1 else lab)
        out[d] = refined
    return out


def census(fl: FlatLattice, depth: int = 2) -> dict:
    """rank -> label -> count, with label classes split by perpendicular type."""
    labs = refined_labels(fl, depth)
    return {d: dict(sorted(Counter(labs[d]).items())) for d in range(fl.rank + 1)}


# ------------------------------------------------------ parabolic orders

def _closure_order(ls: LineSystem, idx, cap) -> int:
    from .groups import reflection_group
    return reflection_group(ls, idx, cap=cap).order


def parabolic_order(fl: FlatLattice, x: Flat, cap: int = 10 ** 5) -> int:
    """Order of the group generated by the reflections in the lines of x."""
    if x.rank == 0:
        return 1
    return _closure_order(fl.system, x.lines, cap)


def _unit_signature(ls: LineSystem, idx) -> tuple:
    return tuple(sorted(Counter(len(ls.unit_list(i)) for i in idx).items()))


def parabolic_orders(fl: FlatLattice, full_order: int | None = None, cap: int = 10 ** 5,
                     progress: bool = False) -> list:
    """Orders of all parabolics, memoized by fingerprint.

    Each memo entry is computed on two flats (first and last of its class);
    if they disagree the class falls back to one closure per flat.
    """
    if not fl.labels:
        assign_fingerprints(fl)
    ls = fl.system
    orders = [np.ones(1, dtype=np.int64)]
    for d in range(1, fl.rank + 1):
        F = len(fl.masks[d])
        if d == fl.rank:
            if full_order is None:
                full_order = _closure_order(ls, range(ls.n_lines), cap)
            orders.append(np.full(F, full_order, dtype=np.int64))
            break
        classes: dict = {}
        for i in range(F):
            idx = np.flatnonzero(fl.masks[d][i])
            classes.setdefault((fl.labels[d][i], _unit_signature(ls, idx)), []).append(i)
        vals = np.zeros(F, dtype=np.int64)
        for key, members in sorted(classes.items()):
            a = _closure_order(ls, np.flatnonzero(fl.masks[d][members[0]]), cap)
            b = _closure_order(ls, np.flatnonzero(fl.masks[d][members[-1]]), cap) if len(members) > 1 else a
            if a == b:
                vals[members] = a
            else:
                _log(progress, f"order memo dropped for {key[0]}")
                for i in members:
                    vals[i] = _closure_order(ls, np.flatnonzero(fl.masks[d][i]), cap)
        orders.append(vals)
    fl.orders = orders
    return orders


def elliptic_all(fl: FlatLattice, full_order: int | None = None, cap: int = 10 ** 5) -> FlatLattice:
    """e(X) = |W_X| - sum over Y < X of e(Y), with e(0) = 1."""
    if not fl.orders:
        parabolic_orders(fl, full_order, cap)
    e = [np.ones(1, dtype=np.int64)]
    for d in range(1, fl.rank + 1):
        acc = fl.orders[d].copy()
        for r in range(d):
            acc -= fl.incidence(d, r) @ e[r]
        e.append(acc)
    fl.elliptic = e
    return fl


def codim_poly_via_lattice(fl: FlatLattice) -> IntPoly:
    if not fl.elliptic:
        elliptic_all(fl)
    return IntPoly([int(x.sum()) for x in fl.elliptic])


def rank2_closed_form(n_lines: int, n_reflections: int, order: int):
    """(p_W, c_W) of a rank-2 group from N*, N and |W|."""
    if n_lines < 1:
        raise ValueError("need at least one line")
    p = IntPoly((1, 1)) * IntPoly((1, n_lines - 1))
    c = IntPoly((1, n_reflections, order - n_reflections - 1))
    return p, c


def analyze(ls: LineSystem, full_order: int | None = None, progress: bool = False,
            threads: int = 1, cap: int = 10 ** 5) -> FlatLattice:
    """Build the lattice and fill Moebius values, fingerprints, orders and e."""
    fl = build_lattice(ls, progress=progress, threads=threads)
    mobius_all(fl)
    assign_fingerprints(fl)
    parabolic_orders(fl, full_order, cap, progress)
    elliptic_all(fl)
    return fl


# ------------------------------------------------------------- GS split

@dataclass(frozen=True)
class GSDecomposition:
    delta: tuple
    lam: tuple
    gamma_a: tuple
    gamma_b: tuple
    gamma_c: tuple

    def sizes(self) -> dict:
        return {"Delta": len(self.delta), "Lambda": len(self.lam), "Gamma_a": len(self.gamma_a),
                "Gamma_b": len(self.gamma_b), "Gamma_c": len(self.gamma_c)}


def is_three_system(ls: LineSystem) -> bool:
    A = ls.angle_matrix
    ok = {ir.ANGLE_ORDER.index("RIGHT"), ir.ANGLE_ORDER.index("PI_3"), ir.SAME}
    return set(np.unique(A).tolist()) <= ok


def gs_decomposition(ls: LineSystem, star) -> GSDecomposition:
    """Split the other lines by how many of the star lines they are perpendicular to."""
    if not is_three_system(ls):
        raise SystemError_("not a 3-system")
    a, b, c = (s if isinstance(s, (int, np.integer)) else ls.index_of(s) for s in star)
    if min(a, b, c) < 0:
        raise SystemError_("star line not in the system")
    A = ls.angle_matrix
    pi3 = ir.ANGLE_ORDER.index("PI_3")
    if len({a, b, c}) < 3 or not (A[a, b] == A[a, c] == A[b, c] == pi3):
        raise SystemError_("not a 3-star")
    if span([ls.lines[i].rep for i in (a, b, c)]).rank != 2:
        raise SystemError_("not a 3-star")
    R = ir.ANGLE_ORDER.index("RIGHT")
    out = {k: [] for k in ("d", "l", "a", "b", "c")}
    for i in range(ls.n_lines):
        if i in (a, b, c):
            continue
        p = (A[i, a] == R, A[i, b] == R, A[i, c] == R)
        s = sum(p)
        if s == 3:
            out["d"].append(i)
        elif s == 0:
            out["l"].append(i)
        elif s == 1:
            out["abc"[p.index(True)]].append(i)
        else:  # pragma: no cover - two perpendiculars force the third
            raise AssertionError("line perpendicular to exactly two star lines")
    return GSDecomposition(*(tuple(out[k]) for k in ("d", "l", "a", "b", "c")))


def three_stars(fl: FlatLattice):
    """Every A2 flat with its three lines."""
    if not fl.labels:
        assign_fingerprints(fl)
    for i, lab in enumerate(fl.labels[2] if fl.rank >= 2 else []):
        if lab == "A2":
            yield tuple(np.flatnonzero(fl.masks[2][i]).tolist())
