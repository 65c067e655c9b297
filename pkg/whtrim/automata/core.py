"""
Core automaton types.

An Automaton is a deterministic labeled transition graph over {0, 1} with a
single initial node and every node accepting. Transitions are stored as two
successor arrays (one per symbol) where -1 means "no transition".
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Hashable, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from whtrim.constraints import HIT, MISS, Word

NO_SUCCESSOR = -1

TupleLabel = Tuple[int, ...]


class AutomatonError(Exception):
    """Base exception for automaton construction errors."""

    pass


class StateBudgetExceeded(AutomatonError):
    """Raised when a construction would exceed the configured state budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"Automaton needs {required} states, budget is {budget}")


class AutomatonKind(str, Enum):
    """Which construction produced an automaton."""

    MINIMAL = "A"
    ISOMORPHIC = "H"
    COMPRESSED = "T"
    CUSTOM = "custom"


@dataclass(frozen=True)
class StarLabel:
    """
    Node label of the minimal acceptor: ``p`` stars followed by a bit suffix.

    Stars stand for window positions whose value no longer matters. Reading a
    star as 0 gives a k-bit window (oldest bit first) with exactly m zeros.
    """

    p: int
    suffix: str

    def bits(self) -> str:
        """Full window with stars read as 0."""
        return "0" * self.p + self.suffix

    def __str__(self) -> str:
        return "*" * self.p + self.suffix


Label = Union[StarLabel, TupleLabel, Hashable]


def format_label(label: Label) -> str:
    """Render a label for export: tuples as ``u1,...,um``."""
    if isinstance(label, tuple):
        return ",".join(str(u) for u in label)
    return str(label)


@dataclass(frozen=True, eq=False)
class Automaton:
    """
    Deterministic acceptor over {0, 1} with all nodes accepting.

    Attributes:
        kind: Construction that produced the automaton
        m: Misses per window of the underlying constraint
        k: Window length of the underlying constraint
        labels: Node labels, indexed by node
        succ0: 0-successor of each node, NO_SUCCESSOR if the node is critical
        succ1: 1-successor of each node
        c: Compression factor, None for uncompressed constructions
        initial: Index of the initial node
    """

    kind: AutomatonKind
    m: int
    k: int
    labels: Tuple[Label, ...]
    succ0: np.ndarray
    succ1: np.ndarray
    c: Optional[int] = None
    initial: int = 0

    def __post_init__(self) -> None:
        n = len(self.labels)
        for name, succ in (("succ0", self.succ0), ("succ1", self.succ1)):
            if succ.shape != (n,):
                raise AutomatonError(f"{name} has shape {succ.shape}, expected ({n},)")
            if n and (succ.min() < NO_SUCCESSOR or succ.max() >= n):
                raise AutomatonError(f"{name} points outside the node range")
            succ.flags.writeable = False
        if not 0 <= self.initial < max(n, 1):
            raise AutomatonError(f"Initial node {self.initial} out of range")

    @property
    def num_states(self) -> int:
        """Number of nodes."""
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def num_transitions(self) -> int:
        """Number of labeled edges."""
        return int(np.count_nonzero(self.succ0 >= 0) + np.count_nonzero(self.succ1 >= 0))

    @property
    def critical_count(self) -> int:
        """Number of nodes without a 0-successor."""
        return int(np.count_nonzero(self.succ0 < 0))

    @property
    def name(self) -> str:
        """Constraint string in CLI syntax."""
        if self.kind == AutomatonKind.COMPRESSED:
            return f"trim:{self.m}:{self.k}:{self.c}"
        if self.kind == AutomatonKind.CUSTOM:
            return "custom"
        return f"anymiss:{self.m}:{self.k}"

    @cached_property
    def _index(self) -> Dict[Label, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index_of(self, label: Label) -> int:
        """
        Node index of a label.

        Raises:
            KeyError: If no node carries the label
        """
        return self._index[label]

    def successor_map(self, symbol: int) -> np.ndarray:
        """Successor array for one symbol."""
        if symbol == MISS:
            return self.succ0
        if symbol == HIT:
            return self.succ1
        raise ValueError(f"Symbol must be 0 or 1, got {symbol!r}")

    def successor(self, node: int, symbol: int) -> Optional[int]:
        """Target of the transition (node, symbol), or None if absent."""
        target = int(self.successor_map(symbol)[node])
        return None if target == NO_SUCCESSOR else target

    def is_critical(self, node: int) -> bool:
        """True if a miss at ``node`` would violate the constraint."""
        return bool(self.succ0[node] == NO_SUCCESSOR)

    def run(self, word: Union[Word, Sequence[int]], start: Optional[int] = None) -> Optional[int]:
        """
        Read a word from ``start`` (default: initial node).

        Returns:
            Node reached after the last symbol, or None if the run blocks
        """
        node = self.initial if start is None else start
        for symbol in word:
            target = self.successor(node, symbol)
            if target is None:
                return None
            node = target
        return node

    def accepts(self, word: Union[Word, Sequence[int]]) -> bool:
        """True if the word can be read from the initial node."""
        return self.run(word) is not None

    def adjacency(self) -> Tuple[sp.csr_matrix, sp.csr_matrix, sp.csr_matrix]:
        """Sparse 0/1 adjacency matrices (Pi0, Pi1, Pi)."""
        return adjacency(self)


def successor_matrix(succ: np.ndarray) -> sp.csr_matrix:
    """CSR 0/1 matrix with a 1 at (i, succ[i]) for every defined successor."""
    n = succ.shape[0]
    rows = np.flatnonzero(succ >= 0)
    data = np.ones(rows.shape[0], dtype=np.int64)
    return sp.csr_matrix((data, (rows, succ[rows])), shape=(n, n))


def adjacency(automaton: Automaton) -> Tuple[sp.csr_matrix, sp.csr_matrix, sp.csr_matrix]:
    """
    Adjacency matrices of an automaton.

    Returns:
        Tuple (Pi0, Pi1, Pi) where Pi_sigma[i, j] = 1 iff (i, sigma, j) is an
        edge and Pi is their elementwise maximum
    """
    pi0 = successor_matrix(automaton.succ0)
    pi1 = successor_matrix(automaton.succ1)
    pi = pi0.maximum(pi1).tocsr()
    return pi0, pi1, pi


def reachable_from_initial(automaton: Automaton) -> np.ndarray:
    """Boolean mask of nodes reachable from the initial node."""
    seen = np.zeros(automaton.num_states, dtype=bool)
    seen[automaton.initial] = True
    queue = deque([automaton.initial])
    while queue:
        node = queue.popleft()
        for succ in (automaton.succ0, automaton.succ1):
            target = int(succ[node])
            if target >= 0 and not seen[target]:
                seen[target] = True
                queue.append(target)
    return seen
