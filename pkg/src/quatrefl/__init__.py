"""Exact computations with quaternionic reflection arrangements over Q(sqrt2, sqrt5)."""
from .poly import IntPoly, factor_over_Z
from .systems import LineSystem, get_system
from .lattice import (FlatLattice, analyze, build_lattice, census, codim_poly_via_lattice,
                      elliptic_all, gs_decomposition, mobius_all, poincare,
                      poincare_deletion_restriction)

__version__ = "0.1.0"

__all__ = [
    "IntPoly", "factor_over_Z", "LineSystem", "get_system", "FlatLattice", "analyze",
    "build_lattice", "census", "codim_poly_via_lattice", "elliptic_all", "gs_decomposition",
    "mobius_all", "poincare", "poincare_deletion_restriction",
]
