"""
Linear algebra kernels for whtrim.

Dense eigenvalues and norms, Kronecker products and Perron eigenpairs.
"""

from whtrim.linalg.core import (
    DEFAULT_KRON_BUDGET,
    MAX_DENSE_EIGEN_DIM,
    AnyMatrix,
    LinalgError,
    Matrix,
    NoConvergence,
    SizeBudgetExceeded,
    SparseMatrix,
    as_dense,
    kronecker,
)
from whtrim.linalg.eigen import (
    DEFAULT_NORM_MAX_ITERATIONS,
    DEFAULT_NORM_TOLERANCE,
    eigenvalues,
    hessenberg,
    irreducible_blocks,
    operator_norm2,
    spectral_radius,
)
from whtrim.linalg.perron import (
    DEFAULT_POWER_MAX_ITERATIONS,
    DEFAULT_POWER_TOLERANCE,
    perron_pair,
    power_iteration,
)

__all__ = [
    "DEFAULT_KRON_BUDGET",
    "DEFAULT_NORM_MAX_ITERATIONS",
    "DEFAULT_NORM_TOLERANCE",
    "DEFAULT_POWER_MAX_ITERATIONS",
    "DEFAULT_POWER_TOLERANCE",
    "MAX_DENSE_EIGEN_DIM",
    "AnyMatrix",
    "LinalgError",
    "Matrix",
    "NoConvergence",
    "SizeBudgetExceeded",
    "SparseMatrix",
    "as_dense",
    "eigenvalues",
    "hessenberg",
    "irreducible_blocks",
    "kronecker",
    "operator_norm2",
    "perron_pair",
    "power_iteration",
    "spectral_radius",
]
