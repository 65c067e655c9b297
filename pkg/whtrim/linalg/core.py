"""
Shared linear algebra types, errors and the Kronecker product.

Dense matrices are float64 numpy arrays; 0/1 adjacency matrices are
scipy.sparse CSR matrices.
"""

from typing import Union

import numpy as np
import scipy.sparse as sp

Matrix = np.ndarray
SparseMatrix = sp.csr_matrix
AnyMatrix = Union[np.ndarray, sp.spmatrix]

DEFAULT_KRON_BUDGET = 20_000
MAX_DENSE_EIGEN_DIM = 2_000


class LinalgError(Exception):
    """Base exception for linear algebra kernels."""

    pass


class NoConvergence(LinalgError):
    """Raised when an iterative kernel hits its iteration cap."""

    pass


class SizeBudgetExceeded(LinalgError):
    """Raised when an operation would exceed its dimension budget."""

    def __init__(self, required: int, budget: int, what: str = "dimension"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} {required} exceeds budget {budget}")


def as_dense(a: AnyMatrix) -> np.ndarray:
    """Dense float64 copy of a dense or sparse matrix."""
    if sp.issparse(a):
        return np.asarray(a.toarray(), dtype=np.float64)
    return np.array(a, dtype=np.float64)


def check_square(a: AnyMatrix) -> int:
    """Return the dimension of a square matrix."""
    if len(a.shape) != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {a.shape}")
    return int(a.shape[0])


def kronecker(a: AnyMatrix, b: AnyMatrix, budget: int = DEFAULT_KRON_BUDGET) -> AnyMatrix:
    """
    Kronecker product a (x) b.

    A sparse left factor gives a CSR result, otherwise the result is dense.

    Raises:
        SizeBudgetExceeded: If either dimension of the product exceeds ``budget``
    """
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > budget:
        raise SizeBudgetExceeded(max(rows, cols), budget, "Kronecker dimension")
    if sp.issparse(a):
        return sp.kron(a, sp.csr_matrix(b), format="csr")
    return np.kron(np.asarray(a, dtype=np.float64), as_dense(b))
