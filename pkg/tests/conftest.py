import os

import pytest

from quatrefl import lattice as L
from quatrefl.groups import REGISTRY_ORDERS
from quatrefl.systems import get_system

_LATTICES = {}
ACCEPTANCE_LINES = []


def analyzed(spec):
    """Session-wide analyzed lattice; computed from scratch, never read from disk."""
    if spec not in _LATTICES:
        order = REGISTRY_ORDERS.get(spec, (None,))[0]
        _LATTICES[spec] = L.analyze(get_system(spec), full_order=order)
    return _LATTICES[spec]


@pytest.fixture(scope="session")
def lat():
    return analyzed


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("QUATREFL_CACHE", str(tmp_path_factory.getbasetemp() / "cache"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
