"""Exact-arithmetic certification of solution relative magnitudes.

Computes the relative magnitude omega of null vectors of integer matrices,
certifies the per-instance bound omega <= (norm - 1)^rank, and solves
unit-coefficient constraint systems with full determinant-bound verification.
All arithmetic is exact (Python ints and fractions.Fraction); nothing is
ever rounded.
"""

from relmag.matrices import (
    IntegerMatrix,
    MatrixError,
    NonSquareError,
    SingularMatrixError,
    cramer_solve,
    determinant,
    infinity_norm,
    nullspace_basis,
    rank,
)
from relmag.circuits import Circuit, enumerate_circuits, elementary_basis, is_elementary, min_support_size
from relmag.magnitude import MagnitudeCertificate, classify_small_norm, omega_matrix_upper, omega_vector
from relmag.systems import System, parse_system, reduce_system, chain_decompose, solve_and_certify
from relmag.generators import extremal_matrix, extremal_dsl

__all__ = [
    "IntegerMatrix",
    "MatrixError",
    "NonSquareError",
    "SingularMatrixError",
    "cramer_solve",
    "determinant",
    "infinity_norm",
    "nullspace_basis",
    "rank",
    "Circuit",
    "enumerate_circuits",
    "elementary_basis",
    "is_elementary",
    "min_support_size",
    "MagnitudeCertificate",
    "classify_small_norm",
    "omega_matrix_upper",
    "omega_vector",
    "System",
    "parse_system",
    "reduce_system",
    "chain_decompose",
    "solve_and_certify",
    "extremal_matrix",
    "extremal_dsl",
]
