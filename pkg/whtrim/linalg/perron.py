"""
Perron eigenpairs of non-negative sparse matrices by power iteration.
"""

import logging
from typing import Tuple

import numpy as np
import scipy.sparse as sp

from whtrim.linalg.core import AnyMatrix, NoConvergence, check_square

logger = logging.getLogger(__name__)

DEFAULT_POWER_TOLERANCE = 1e-10
DEFAULT_POWER_MAX_ITERATIONS = 1_000_000


def power_iteration(
    a: AnyMatrix,
    tolerance: float = DEFAULT_POWER_TOLERANCE,
    max_iterations: int = DEFAULT_POWER_MAX_ITERATIONS,
) -> Tuple[float, np.ndarray]:
    """
    Dominant eigenpair of a primitive non-negative matrix.

    The iterate is kept 1-normalized; iteration stops when successive iterates
    differ by at most ``tolerance`` in the 1-norm.

    Args:
        a: Square non-negative matrix (dense or sparse)
        tolerance: Relative 1-norm tolerance
        max_iterations: Iteration cap

    Returns:
        Tuple (eigenvalue, strictly positive eigenvector with unit 1-norm)

    Raises:
        NoConvergence: If the cap is hit or the iterate collapses to zero
    """
    n = check_square(a)
    mat: AnyMatrix
    if sp.issparse(a):
        mat = sp.csr_matrix(a, dtype=np.float64)
    else:
        mat = np.asarray(a, dtype=np.float64)
    v = np.full(n, 1.0 / n)
    for iteration in range(1, max_iterations + 1):
        w = mat @ v
        lam = float(w.sum())
        if lam <= 0.0:
            raise NoConvergence("Power iteration collapsed to zero; matrix is not primitive")
        w /= lam
        if float(np.abs(w - v).sum()) <= tolerance:
            logger.debug("Power iteration on %d states converged after %d steps", n, iteration)
            return lam, w
        v = w
    raise NoConvergence(f"Power iteration did not converge in {max_iterations} steps")


def perron_pair(
    p: AnyMatrix,
    tolerance: float = DEFAULT_POWER_TOLERANCE,
    max_iterations: int = DEFAULT_POWER_MAX_ITERATIONS,
) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Perron root and vectors of a primitive adjacency matrix.

    Returns:
        Tuple (lambda, x, y) where x is the Perron vector of P^T, y the
        Perron vector of P, both 1-normalized

    Raises:
        NoConvergence: If either power iteration hits its cap
    """
    lam_right, y = power_iteration(p, tolerance, max_iterations)
    transposed = p.T.tocsr() if sp.issparse(p) else np.asarray(p).T
    lam_left, x = power_iteration(transposed, tolerance, max_iterations)
    logger.debug("Perron roots: right %.12g, left %.12g", lam_right, lam_left)
    return 0.5 * (lam_right + lam_left), x, y
