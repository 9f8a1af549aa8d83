"""On-disk cache of analyzed lattices (gzip JSON keyed by name and content hash)."""
from __future__ import annotations

import gzip
import json
import os
from pathlib import Path

import numpy as np
from scipy import sparse

from .lattice import FlatLattice
from .systems import LineSystem

CACHE_VERSION = 1
ENV_VAR = "QUATREFL_CACHE"


def cache_dir() -> Path:
    d = os.environ.get(ENV_VAR)
    return Path(d) if d else Path.home() / ".cache" / "quatrefl"


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name)


def cache_path(ls: LineSystem, directory: Path | None = None) -> Path:
    return (directory or cache_dir()) / f"{_safe(ls.name)}-{ls.content_hash()}.json.gz"


def lattice_to_json(fl: FlatLattice) -> dict:
    ls = fl.system
    doc = {
        "version": CACHE_VERSION,
        "system": ls.name,
        "hash": ls.content_hash(),
        "n_lines": ls.n_lines,
        "masks": [[r.tobytes().hex() for r in np.packbits(M, axis=1)] for M in fl.masks],
        "covers": [None] + [[c.tocoo().row.tolist(), c.tocoo().col.tolist()] for c in fl.covers[1:]],
        "mobius": [m.tolist() for m in fl.mobius],
        "orders": [o.tolist() for o in fl.orders],
        "elliptic": [e.tolist() for e in fl.elliptic],
        "labels": fl.labels,
    }
    return doc


def lattice_from_json(doc: dict, ls: LineSystem) -> FlatLattice:
    if doc.get("version") != CACHE_VERSION:
        raise ValueError("cache version mismatch")
    if doc.get("hash") != ls.content_hash():
        raise ValueError("cache hash does not match the line system")
    N = ls.n_lines
    masks = []
    for rows in doc["masks"]:
        if rows:
            P = np.array([np.frombuffer(bytes.fromhex(r), dtype=np.uint8) for r in rows])
            masks.append(np.unpackbits(P, axis=1, count=N).astype(bool))
        else:
            masks.append(np.zeros((0, N), dtype=bool))
    covers = [None]
    for d in range(1, len(masks)):
        r, c = doc["covers"][d]
        covers.append(sparse.csr_matrix((np.ones(len(r), dtype=np.int64), (r, c)),
                                        shape=(len(masks[d]), len(masks[d - 1]))))
    fl = FlatLattice(ls, masks, covers)
    fl.mobius = [np.array(m, dtype=np.int64) for m in doc["mobius"]]
    fl.orders = [np.array(o, dtype=np.int64) for o in doc["orders"]]
    fl.elliptic = [np.array(e, dtype=np.int64) for e in doc["elliptic"]]
    fl.labels = doc["labels"]
    return fl


def load(ls: LineSystem, directory: Path | None = None) -> FlatLattice | None:
    p = cache_path(ls, directory)
    if not p.exists():
        return None
    try:
        with gzip.open(p, "rt") as fh:
            return lattice_from_json(json.load(fh), ls)
    except (ValueError, KeyError, OSError, json.JSONDecodeError):
        return None


def store(fl: FlatLattice, directory: Path | None = None) -> Path:
    p = cache_path(fl.system, directory)
    p.parent.mkdir(parents=True, exist_ok=True)
    tmp = p.with_suffix(".tmp")
    with gzip.open(tmp, "wt") as fh:
        json.dump(lattice_to_json(fl), fh)
    tmp.replace(p)
    return p
