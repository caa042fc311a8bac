"""Exact lattices between (sqrt2 A_{p-1})^d and its dual, built from codes, and their cyclic orbifolds."""
from .codes import CodeC, CodeD, enumerate_codes, to_lattice
from .lattice import Lattice, build_N, build_Nd, dual_lattice, parity_report
from .orbifold import build_report, irr_census, qdim_CD
from .sigma import coxeter_sigma, spectral

__all__ = [
    "CodeC", "CodeD", "Lattice", "build_N", "build_Nd", "build_report", "coxeter_sigma",
    "dual_lattice", "enumerate_codes", "irr_census", "parity_report", "qdim_CD", "spectral",
    "to_lattice",
]
__version__ = "0.1.0"
