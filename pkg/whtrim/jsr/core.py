"""
Closed-loop pairs and their lift onto a weakly-hard automaton.

The lifted system is the matrix pair (Pi_0 (x) Phi_0, Pi_1 (x) Phi_1). Because
every automaton is deterministic, each Pi_sigma is stored as a transition map:
an int array holding the successor of every node, -1 when there is none. Word
products of such matrices are again transition maps, obtained by composition.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from whtrim.automata import NO_SUCCESSOR, Automaton, successor_matrix
from whtrim.linalg import DEFAULT_KRON_BUDGET, SizeBudgetExceeded, as_dense, kronecker

logger = logging.getLogger(__name__)

MAX_PLANT_DIM = 64

TransitionMap = np.ndarray


class JsrError(Exception):
    """Base exception for stability verification errors."""

    pass


class Representation(str, Enum):
    """How lifted matrices and their word products are stored."""

    FACTORED = "factored"
    EXPLICIT = "explicit"


@dataclass(frozen=True, eq=False)
class ClosedLoopPair:
    """
    Closed-loop dynamics x+ = Phi_sigma x for a hit (sigma = 1) or miss (sigma = 0).

    Attributes:
        name: Identifier used in result rows
        phi_hit: Nominal closed-loop matrix
        phi_miss: Closed-loop matrix when the deadline is missed
    """

    name: str
    phi_hit: np.ndarray
    phi_miss: np.ndarray

    def __post_init__(self) -> None:
        hit = np.array(self.phi_hit, dtype=np.float64)
        miss = np.array(self.phi_miss, dtype=np.float64)
        if hit.ndim != 2 or hit.shape[0] != hit.shape[1] or hit.shape[0] < 1:
            raise JsrError(f"phi_hit must be a non-empty square matrix, got shape {hit.shape}")
        if miss.shape != hit.shape:
            raise JsrError(f"phi_miss has shape {miss.shape}, expected {hit.shape}")
        if hit.shape[0] > MAX_PLANT_DIM:
            raise JsrError(f"Plant dimension {hit.shape[0]} exceeds {MAX_PLANT_DIM}")
        if not (np.all(np.isfinite(hit)) and np.all(np.isfinite(miss))):
            raise JsrError("Closed-loop matrices must have finite entries")
        hit.flags.writeable = False
        miss.flags.writeable = False
        object.__setattr__(self, "phi_hit", hit)
        object.__setattr__(self, "phi_miss", miss)

    @property
    def dim(self) -> int:
        """Plant state dimension n_x."""
        return int(self.phi_hit.shape[0])


def compose(first: TransitionMap, second: TransitionMap) -> TransitionMap:
    """Transition map of reading ``first`` then ``second`` (matrix product first @ second)."""
    return np.where(first >= 0, second[first], NO_SUCCESSOR)


def map_nnz(pi: TransitionMap) -> int:
    """Number of unit entries of the 0/1 matrix of a transition map."""
    return int(np.count_nonzero(pi >= 0))


def map_spectral_radius(pi: TransitionMap) -> float:
    """
    Spectral radius of a transition map's 0/1 matrix: 1 if it has a cycle, else 0.

    A path of n steps in an n-node functional graph must revisit a node.
    """
    n = pi.shape[0]
    power = pi
    steps = 1
    while steps < n:
        power = compose(power, power)
        steps *= 2
    return 1.0 if np.any(power >= 0) else 0.0


def map_norm2(pi: TransitionMap) -> float:
    """Spectral norm of a transition map's 0/1 matrix: sqrt of the largest in-degree."""
    targets = pi[pi >= 0]
    if targets.size == 0:
        return 0.0
    return math.sqrt(float(np.bincount(targets).max()))


def transition_map_from_matrix(matrix: sp.spmatrix) -> TransitionMap:
    """
    Convert a 0/1 matrix with at most one unit per row into a transition map.

    Raises:
        ValueError: If a row has more than one non-zero or a non-unit entry
    """
    csr = sp.csr_matrix(matrix)
    csr.eliminate_zeros()
    if np.any(np.diff(csr.indptr) > 1):
        raise ValueError("Matrix is not row-deterministic")
    if csr.nnz and not np.all(csr.data == 1):
        raise ValueError("Matrix must have 0/1 entries")
    pi = np.full(csr.shape[0], NO_SUCCESSOR, dtype=np.int64)
    rows = np.flatnonzero(np.diff(csr.indptr))
    pi[rows] = csr.indices[csr.indptr[rows]]
    return pi


@dataclass(frozen=True, eq=False)
class LiftedSystem:
    """
    The lifted pair (Pi_miss (x) Phi_miss, Pi_hit (x) Phi_hit).

    The four factors are always kept; the explicit representation also
    materializes both Kronecker products as dense matrices.
    """

    pi_miss: TransitionMap
    pi_hit: TransitionMap
    phi_miss: np.ndarray
    phi_hit: np.ndarray
    representation: Representation = Representation.FACTORED
    name: str = "lifted"
    lifted_miss: Optional[np.ndarray] = field(default=None, repr=False)
    lifted_hit: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def states(self) -> int:
        """Number of automaton states."""
        return int(self.pi_hit.shape[0])

    @property
    def plant_dim(self) -> int:
        """Plant dimension n_x."""
        return int(self.phi_hit.shape[0])

    @property
    def lifted_dim(self) -> int:
        """Dimension of the lifted matrices."""
        return self.states * self.plant_dim

    @property
    def stored_entries(self) -> int:
        """Scalar entries held by the representation of the two generators."""
        if self.representation == Representation.EXPLICIT:
            return 2 * self.lifted_dim**2
        return map_nnz(self.pi_miss) + map_nnz(self.pi_hit) + 2 * self.plant_dim**2

    def pi(self, symbol: int) -> TransitionMap:
        """Transition map for one symbol."""
        return self.pi_hit if symbol == 1 else self.pi_miss

    def phi(self, symbol: int) -> np.ndarray:
        """Closed-loop matrix for one symbol."""
        return self.phi_hit if symbol == 1 else self.phi_miss

    def lifted(self, symbol: int) -> np.ndarray:
        """Dense lifted matrix for one symbol (explicit representation only)."""
        matrix = self.lifted_hit if symbol == 1 else self.lifted_miss
        if matrix is None:
            raise JsrError("Lifted matrices are only materialized in explicit representation")
        return matrix

    @classmethod
    def from_matrices(
        cls,
        matrices: Sequence[np.ndarray],
        representation: Representation = Representation.FACTORED,
        kron_budget: int = DEFAULT_KRON_BUDGET,
    ) -> "LiftedSystem":
        """
        Lift a plain set of one or two matrices (no weakly-hard constraint).

        A single matrix A becomes the hit mode of a one-state automaton without
        misses; a pair (A, B) becomes miss mode A and hit mode B with both
        symbols always allowed.
        """
        if len(matrices) == 1:
            a = as_dense(matrices[0])
            pair = ClosedLoopPair("singleton", a, np.zeros_like(a))
            pi_miss = np.array([NO_SUCCESSOR], dtype=np.int64)
        elif len(matrices) == 2:
            pair = ClosedLoopPair("pair", as_dense(matrices[1]), as_dense(matrices[0]))
            pi_miss = np.array([0], dtype=np.int64)
        else:
            raise JsrError(f"Expected one or two matrices, got {len(matrices)}")
        pi_hit = np.array([0], dtype=np.int64)
        return _lift_maps(pair, pi_miss, pi_hit, representation, kron_budget)

    @classmethod
    def from_adjacency(
        cls,
        pi_miss: sp.spmatrix,
        pi_hit: sp.spmatrix,
        pair: ClosedLoopPair,
        representation: Representation = Representation.FACTORED,
        kron_budget: int = DEFAULT_KRON_BUDGET,
    ) -> "LiftedSystem":
        """
        Lift explicit 0/1 adjacency matrices.

        Raises:
            ValueError: If either matrix is not row-deterministic
        """
        maps = transition_map_from_matrix(pi_miss), transition_map_from_matrix(pi_hit)
        if maps[0].shape != maps[1].shape:
            raise ValueError("Adjacency matrices must have the same dimension")
        return _lift_maps(pair, maps[0], maps[1], representation, kron_budget)


def _lift_maps(
    pair: ClosedLoopPair,
    pi_miss: TransitionMap,
    pi_hit: TransitionMap,
    representation: Representation,
    kron_budget: int,
) -> LiftedSystem:
    representation = Representation(representation)
    lifted_miss = lifted_hit = None
    if representation == Representation.EXPLICIT:
        required = pi_hit.shape[0] * pair.dim
        if required > kron_budget:
            raise SizeBudgetExceeded(required, kron_budget, "Lifted dimension")
        lifted_miss = as_dense(kronecker(successor_matrix(pi_miss), pair.phi_miss, kron_budget))
        lifted_hit = as_dense(kronecker(successor_matrix(pi_hit), pair.phi_hit, kron_budget))

    pi_miss.flags.writeable = False
    pi_hit.flags.writeable = False
    system = LiftedSystem(
        pi_miss=pi_miss,
        pi_hit=pi_hit,
        phi_miss=pair.phi_miss,
        phi_hit=pair.phi_hit,
        representation=representation,
        name=pair.name,
        lifted_miss=lifted_miss,
        lifted_hit=lifted_hit,
    )
    logger.debug(
        "Lifted %s onto %d states (%s, dim %d)",
        pair.name,
        system.states,
        representation.value,
        system.lifted_dim,
    )
    return system


def lift(
    pair: ClosedLoopPair,
    automaton: Automaton,
    representation: Representation = Representation.FACTORED,
    kron_budget: int = DEFAULT_KRON_BUDGET,
) -> LiftedSystem:
    """
    Lift a closed-loop pair onto an automaton.

    Args:
        pair: Hit and miss dynamics
        automaton: Weakly-hard automaton (A, H or T)
        representation: FACTORED keeps the factors only, EXPLICIT also
            materializes the Kronecker products
        kron_budget: Maximum lifted dimension for the explicit representation

    Raises:
        SizeBudgetExceeded: If the explicit lifted dimension exceeds the budget
    """
    return _lift_maps(
        pair,
        np.array(automaton.succ0, dtype=np.int64),
        np.array(automaton.succ1, dtype=np.int64),
        representation,
        kron_budget,
    )
