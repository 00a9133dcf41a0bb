"""Exact numeric substrate: rationals, matrices, lattices, polynomials."""

from .lattice import (
    hermite_normal_form,
    integer_kernel,
    invariant_factors,
    is_unimodular_extension,
    lattice_basis,
    saturate,
    smith_normal_form,
    torsion_factors,
)
from .linalg import to_fraction
from .poly import MultiPoly
from .sturm import isolate_roots, sturm_count

__all__ = [
    "MultiPoly",
    "hermite_normal_form",
    "integer_kernel",
    "invariant_factors",
    "is_unimodular_extension",
    "isolate_roots",
    "lattice_basis",
    "saturate",
    "smith_normal_form",
    "sturm_count",
    "to_fraction",
    "torsion_factors",
]
