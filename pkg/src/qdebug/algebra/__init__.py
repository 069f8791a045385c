"""Exact linear algebra over the Gaussian rationals Q(i)."""

from .gaussian import ZERO, ONE, I, GaussianRational, as_gaussian
from .polynomial import Polynomial, cyclotomic, poly_divides
from .matrix import Matrix, Vector, charpoly, inner, kron, mat_adjoint, mat_mul, rref, vector
from .unitary import NotUnitaryError, ScaledUnitary, orbit
from .subspace import Subspace, complement_projector, kernel_basis, subspace_intersect

__all__ = [
    "ZERO",
    "ONE",
    "I",
    "GaussianRational",
    "as_gaussian",
    "Polynomial",
    "cyclotomic",
    "poly_divides",
    "Matrix",
    "Vector",
    "charpoly",
    "inner",
    "kron",
    "mat_adjoint",
    "mat_mul",
    "rref",
    "vector",
    "NotUnitaryError",
    "ScaledUnitary",
    "orbit",
    "Subspace",
    "complement_projector",
    "kernel_basis",
    "subspace_intersect",
]
