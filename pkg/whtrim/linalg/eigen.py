"""
Dense eigenvalue kernels.

Eigenvalues come from a Householder reduction to upper Hessenberg form followed
by Francis double-shift QR iteration with deflation. Before the reduction a
matrix is split into the strongly connected components of its nonzero pattern
(the eigenvalues of a reducible matrix are those of its irreducible diagonal
blocks) and each block is balanced by a diagonal similarity. The QR sweep works
on a 1-based list-of-lists copy of the Hessenberg matrix so the index arithmetic
of the classic formulation carries over unchanged.
"""

import logging
import math
from typing import List

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from whtrim.linalg.core import (
    MAX_DENSE_EIGEN_DIM,
    AnyMatrix,
    NoConvergence,
    SizeBudgetExceeded,
    as_dense,
    check_square,
)

logger = logging.getLogger(__name__)

SWEEPS_PER_DIMENSION = 30
EXCEPTIONAL_SHIFT_PERIOD = 10
DEFAULT_NORM_TOLERANCE = 1e-10
DEFAULT_NORM_MAX_ITERATIONS = 10_000
NORM_START_SEED = 2718

_EPS = float(np.finfo(np.float64).eps)
_RADIX = 2.0


def hessenberg(a: AnyMatrix) -> np.ndarray:
    """
    Reduce a square matrix to upper Hessenberg form by Householder reflections.

    The result is similar to ``a`` and has zeros below the first subdiagonal.
    """
    h = as_dense(a)
    n = check_square(h)
    for k in range(n - 2):
        v = h[k + 1 :, k].copy()
        alpha = float(np.linalg.norm(v))
        if alpha == 0.0:
            continue
        if v[0] < 0.0:
            alpha = -alpha
        v[0] += alpha
        beta = 2.0 / float(v @ v)
        h[k + 1 :, k:] -= beta * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= beta * np.outer(h[:, k + 1 :] @ v, v)
        h[k + 2 :, k] = 0.0
    return h


def irreducible_blocks(a: AnyMatrix) -> List[np.ndarray]:
    """
    Index sets of the strongly connected components of a matrix's nonzero pattern.

    Permuting a matrix so these sets are contiguous makes it block triangular,
    so its spectrum is the union of the spectra of the diagonal blocks.
    """
    n = check_square(a)
    if n == 0:
        return []
    count, labels = connected_components(sp.csr_matrix(a), directed=True, connection="strong")
    order = np.argsort(labels, kind="stable")
    sizes = np.bincount(labels, minlength=count)
    return [block for block in np.split(order, np.cumsum(sizes)[:-1]) if block.size]


def _balance(a: np.ndarray) -> np.ndarray:
    """Scale rows and columns by powers of two until their norms are comparable."""
    b = a.copy()
    n = b.shape[0]
    radix_squared = _RADIX * _RADIX
    done = False
    while not done:
        done = True
        for i in range(n):
            column = np.abs(b[:, i])
            row = np.abs(b[i, :])
            c = float(column.sum() - column[i])
            r = float(row.sum() - row[i])
            if c == 0.0 or r == 0.0:
                continue
            total = c + r
            f = 1.0
            g = r / _RADIX
            while c < g:
                f *= _RADIX
                c *= radix_squared
            g = r * _RADIX
            while c > g:
                f /= _RADIX
                c /= radix_squared
            if (c + r) / f < 0.95 * total:
                done = False
                b[i, :] /= f
                b[:, i] *= f
    return b


def _sign(a: float, b: float) -> float:
    return abs(a) if b >= 0.0 else -abs(a)


def _split_point(a: List[List[float]], nn: int, anorm: float) -> int:
    """Largest l such that a[l][l-1] is negligible (zeroed), or 1."""
    for ll in range(nn, 1, -1):
        sub = abs(a[ll][ll - 1])
        s = abs(a[ll - 1][ll - 1]) + abs(a[ll][ll])
        if s == 0.0:
            s = anorm
        if sub <= _EPS * s or sub <= _EPS * anorm:
            a[ll][ll - 1] = 0.0
            return ll
    return 1


def _hqr(h: np.ndarray) -> np.ndarray:
    """
    Francis double-shift QR on an upper Hessenberg matrix.

    Subdiagonal entries below eps relative to their diagonal neighbours, or
    below eps times the matrix norm, are treated as zero. Every nonzero
    subdiagonal left inside the active window is therefore a safe divisor.
    """
    n = h.shape[0]
    a: List[List[float]] = [[0.0] * (n + 1)]
    for row in h:
        a.append([0.0] + [float(x) for x in row])
    wr = [0.0] * (n + 1)
    wi = [0.0] * (n + 1)

    anorm = 0.0
    for i in range(1, n + 1):
        for j in range(max(i - 1, 1), n + 1):
            anorm += abs(a[i][j])

    total_sweeps = 0
    sweep_cap = SWEEPS_PER_DIMENSION * n
    nn = n
    t = 0.0
    p = q = r = x = y = z = w = 0.0
    while nn >= 1:
        its = 0
        while True:
            l = _split_point(a, nn, anorm)
            x = a[nn][nn]
            if l == nn:
                # one root found
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
            else:
                y = a[nn - 1][nn - 1]
                w = a[nn][nn - 1] * a[nn - 1][nn]
                if l == nn - 1:
                    # two roots found
                    p = 0.5 * (y - x)
                    q = p * p + w
                    z = math.sqrt(abs(q))
                    x += t
                    if q >= 0.0:
                        z = p + _sign(z, p)
                        wr[nn - 1] = wr[nn] = x + z
                        if z != 0.0:
                            wr[nn] = x - w / z
                        wi[nn - 1] = wi[nn] = 0.0
                    else:
                        wr[nn - 1] = wr[nn] = x + p
                        wi[nn - 1] = -z
                        wi[nn] = z
                    nn -= 2
                else:
                    if total_sweeps >= sweep_cap:
                        raise NoConvergence(
                            f"QR iteration did not converge for a {n}x{n} matrix "
                            f"within {sweep_cap} sweeps"
                        )
                    if its > 0 and its % EXCEPTIONAL_SHIFT_PERIOD == 0:
                        # exceptional shift
                        t += x
                        for i in range(1, nn + 1):
                            a[i][i] -= x
                        s = abs(a[nn][nn - 1]) + abs(a[nn - 1][nn - 2])
                        y = x = 0.75 * s
                        w = -0.4375 * s * s
                    its += 1
                    total_sweeps += 1

                    # look for two consecutive small subdiagonal elements
                    m = nn - 2
                    while m >= l:
                        z = a[m][m]
                        r = x - z
                        s = y - z
                        p = (r * s - w) / a[m + 1][m] + a[m][m + 1]
                        q = a[m + 1][m + 1] - z - r - s
                        r = a[m + 2][m + 1]
                        s = abs(p) + abs(q) + abs(r)
                        if s != 0.0:
                            p /= s
                            q /= s
                            r /= s
                        if m == l:
                            break
                        u = abs(a[m][m - 1]) * (abs(q) + abs(r))
                        v = abs(p) * (abs(a[m - 1][m - 1]) + abs(z) + abs(a[m + 1][m + 1]))
                        if u + v == v:
                            break
                        m -= 1

                    for i in range(m + 2, nn + 1):
                        a[i][i - 2] = 0.0
                        if i != m + 2:
                            a[i][i - 3] = 0.0

                    # double QR step on rows l..nn and columns m..nn
                    for k in range(m, nn):
                        if k != m:
                            p = a[k][k - 1]
                            q = a[k + 1][k - 1]
                            r = 0.0
                            if k != nn - 1:
                                r = a[k + 2][k - 1]
                            x = abs(p) + abs(q) + abs(r)
                            if x != 0.0:
                                p /= x
                                q /= x
                                r /= x
                        s = _sign(math.sqrt(p * p + q * q + r * r), p)
                        if s == 0.0:
                            continue
                        if k == m:
                            if l != m:
                                a[k][k - 1] = -a[k][k - 1]
                        else:
                            a[k][k - 1] = -s * x
                        p += s
                        x = p / s
                        y = q / s
                        z = r / s
                        q /= p
                        r /= p
                        for j in range(k, nn + 1):
                            p = a[k][j] + q * a[k + 1][j]
                            if k != nn - 1:
                                p += r * a[k + 2][j]
                                a[k + 2][j] -= p * z
                            a[k + 1][j] -= p * y
                            a[k][j] -= p * x
                        mmin = nn if nn < k + 3 else k + 3
                        for i in range(l, mmin + 1):
                            p = x * a[i][k] + y * a[i][k + 1]
                            if k != nn - 1:
                                p += z * a[i][k + 2]
                                a[i][k + 2] -= p * r
                            a[i][k + 1] -= p * q
                            a[i][k] -= p
            if l >= nn - 1:
                break

    logger.debug("QR iteration on %dx%d matrix took %d sweeps", n, n, total_sweeps)
    return np.array(wr[1:], dtype=np.float64) + 1j * np.array(wi[1:], dtype=np.float64)


def _block_eigenvalues(block: np.ndarray) -> np.ndarray:
    if block.shape[0] == 1:
        return block[0].astype(np.complex128)
    return _hqr(hessenberg(_balance(block)))


def eigenvalues(a: AnyMatrix) -> np.ndarray:
    """
    All eigenvalues of a real square matrix.

    Args:
        a: Dense or sparse square matrix, dimension at most MAX_DENSE_EIGEN_DIM

    Returns:
        Complex array of eigenvalues (conjugate pairs adjacent)

    Raises:
        NoConvergence: If QR iteration on a block exceeds 30 sweeps per dimension
        SizeBudgetExceeded: If the matrix is too large for the dense route
    """
    n = check_square(a)
    if n > MAX_DENSE_EIGEN_DIM:
        raise SizeBudgetExceeded(n, MAX_DENSE_EIGEN_DIM, "Dense eigenvalue dimension")
    if n == 0:
        return np.zeros(0, dtype=np.complex128)
    dense = as_dense(a)
    if not np.all(np.isfinite(dense)):
        raise ValueError("Matrix entries must be finite")
    blocks = irreducible_blocks(dense)
    if len(blocks) > 1:
        logger.debug("Split %dx%d matrix into %d irreducible blocks", n, n, len(blocks))
    return np.concatenate([_block_eigenvalues(dense[np.ix_(idx, idx)]) for idx in blocks])


def spectral_radius(a: AnyMatrix) -> float:
    """Largest eigenvalue magnitude; 0.0 for an empty matrix."""
    n = check_square(a)
    if n == 0:
        return 0.0
    return float(np.max(np.abs(eigenvalues(a))))


def operator_norm2(
    a: AnyMatrix,
    tolerance: float = DEFAULT_NORM_TOLERANCE,
    max_iterations: int = DEFAULT_NORM_MAX_ITERATIONS,
) -> float:
    """
    Spectral norm (largest singular value) of a real matrix.

    Runs power iteration on A^T A from all-ones plus a seeded perturbation and
    stops once the eigen-residual is below ``tolerance`` relative to the
    Rayleigh quotient. If the iteration cap is hit or the iterate collapses,
    falls back to the largest eigenvalue of A^T A from the dense QR route.

    Raises:
        NoConvergence: If the fallback QR iteration fails as well
    """
    dense = as_dense(a)
    if dense.size == 0:
        return 0.0
    gram = dense.T @ dense
    if not np.any(gram):
        return 0.0

    # a start built from the matrix itself can be orthogonal to the top singular vector
    rng = np.random.default_rng(NORM_START_SEED)
    v = 1.0 + rng.uniform(-0.5, 0.5, gram.shape[0])
    v /= np.linalg.norm(v)
    for iteration in range(1, max_iterations + 1):
        w = gram @ v
        rayleigh = float(v @ w)
        residual = float(np.linalg.norm(w - rayleigh * v))
        if rayleigh > 0.0 and residual <= tolerance * rayleigh:
            logger.debug("Norm power iteration converged after %d steps", iteration)
            return math.sqrt(rayleigh)
        w_norm = float(np.linalg.norm(w))
        if w_norm == 0.0:
            break
        v = w / w_norm

    logger.debug("Norm power iteration stopped early, using QR on the Gram matrix")
    return math.sqrt(max(float(np.max(eigenvalues(gram).real)), 0.0))
