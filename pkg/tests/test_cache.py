import gzip
import json

import numpy as np
import pytest

from quatrefl import cache
from quatrefl import lattice as L
from quatrefl.systems import get_system
from quatrefl.verify import analyzed_lattice


def _same(a, b):
    assert a.counts() == b.counts()
    for d in range(a.rank + 1):
        assert np.array_equal(a.masks[d], b.masks[d])
        assert np.array_equal(a.mobius[d], b.mobius[d])
        assert np.array_equal(a.orders[d], b.orders[d])
        assert np.array_equal(a.elliptic[d], b.elliptic[d])
    assert a.labels == b.labels
    assert L.census(a) == L.census(b)


@pytest.mark.parametrize("spec", ["G334", "S1"])
def test_cache_is_transparent(tmp_path, monkeypatch, spec):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    miss = analyzed_lattice(spec)
    assert cache.cache_path(miss.system).exists()
    hit = analyzed_lattice(spec)
    _same(miss, hit)
    fresh = analyzed_lattice(spec, use_cache=False)
    _same(fresh, hit)
    assert L.poincare(hit) == L.poincare(fresh)


def test_rejects_other_hash_and_version(tmp_path):
    fl = L.analyze(get_system("A3"))
    doc = cache.lattice_to_json(fl)
    with pytest.raises(ValueError):
        cache.lattice_from_json(doc, get_system("B3"))
    bad = dict(doc, version=cache.CACHE_VERSION + 1)
    with pytest.raises(ValueError):
        cache.lattice_from_json(bad, fl.system)


def test_corrupt_file_is_a_miss(tmp_path):
    ls = get_system("A3")
    p = cache.store(L.analyze(ls), tmp_path)
    with gzip.open(p, "wt") as fh:
        json.dump({"version": -1}, fh)
    assert cache.load(ls, tmp_path) is None
    p.write_bytes(b"not gzip")
    assert cache.load(ls, tmp_path) is None


def test_no_cache_writes_nothing(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    analyzed_lattice("A3", use_cache=False)
    assert not any(tmp_path.iterdir())
