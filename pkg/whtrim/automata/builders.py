"""
Constructions of weakly-hard automata.

- build_minimal: the minimal acceptor A(m, k) with star/bit labels
- build_isomorphic: the tuple-labeled automaton H(m, k), isomorphic to A(m, k)
- build_compressed: the compressed over-approximation T(m, k, c)

Tuple-labeled nodes are numbered in lexicographically descending order with
the initial node <0,...,0> moved to index 0. A(m, k) uses the same numbering
through the node mapping, so A and H share adjacency matrices.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from whtrim.automata.core import (
    NO_SUCCESSOR,
    Automaton,
    AutomatonKind,
    StarLabel,
    StateBudgetExceeded,
    TupleLabel,
)
from whtrim.constraints import (
    InvalidConstraintError,
    WeaklyHardConstraint,
)

logger = logging.getLogger(__name__)

DEFAULT_STATE_BUDGET = 5_000_000


@dataclass(frozen=True)
class TrimSpec:
    """Parameters (m, k, c) of a compressed automaton."""

    m: int
    k: int
    c: int

    def __post_init__(self) -> None:
        WeaklyHardConstraint.any_miss(self.m, self.k)
        if self.c < 1:
            raise InvalidConstraintError(f"Compression factor must be >= 1, got {self.c}")

    @classmethod
    def parse(cls, text: str) -> "TrimSpec":
        """Parse ``trim:m:k:c``."""
        parts = text.strip().lower().split(":")
        if len(parts) != 4 or parts[0] != "trim":
            raise InvalidConstraintError(f"Expected 'trim:m:k:c', got '{text}'")
        try:
            m, k, c = (int(p) for p in parts[1:])
        except ValueError:
            raise InvalidConstraintError(f"Non-integer parameter in '{text}'")
        return cls(m, k, c)

    def __str__(self) -> str:
        return f"trim:{self.m}:{self.k}:{self.c}"


AutomatonSpec = Union[WeaklyHardConstraint, TrimSpec]


def parse_automaton_spec(text: str) -> AutomatonSpec:
    """Parse any of ``anymiss:m:k``, ``anyhit:h:k`` or ``trim:m:k:c``."""
    if text.strip().lower().startswith("trim"):
        return TrimSpec.parse(text)
    return WeaklyHardConstraint.parse(text)


def _check_budget(required: int, state_budget: Optional[int]) -> None:
    budget = DEFAULT_STATE_BUDGET if state_budget is None else state_budget
    if required > budget:
        raise StateBudgetExceeded(required, budget)


def g_index(v: Union[str, Sequence[int]], i: int) -> float:
    """
    Position of the i-th last zero in a window.

    The window is given oldest bit first; positions are counted from the
    newest bit, starting at 1.

    Args:
        v: Bit string or bit sequence, oldest first
        i: Which zero to locate (1 = most recent)

    Returns:
        1-based position, or math.inf if v has fewer than i zeros
    """
    if i < 1:
        raise ValueError(f"i must be >= 1, got {i}")
    bits = v if isinstance(v, str) else "".join(str(b) for b in v)
    seen = 0
    for position, bit in enumerate(reversed(bits), start=1):
        if bit == "0":
            seen += 1
            if seen == i:
                return position
    return math.inf


def node_map(v: StarLabel, m: int, k: int) -> TupleLabel:
    """
    Map a node of A(m, k) to its tuple label in H(m, k).

    u_i = k - m + i - g(v, i), with stars read as 0.
    """
    bits = v.bits()
    return tuple(int(k - m + i - g_index(bits, i)) for i in range(1, m + 1))


def state_count(m: int, k: int, c: int = 1) -> int:
    """
    Closed-form number of states of T(m, k, c).

    For c = 1 this is C(k, m), the size of the minimal acceptor.
    """
    WeaklyHardConstraint.any_miss(m, k)
    if c < 1:
        raise InvalidConstraintError(f"Compression factor must be >= 1, got {c}")

    def ceil_sum(n: int) -> int:
        return sum(-(-j // c) for j in range(1, n + 1))

    base = math.comb(k - 1, m - 1)
    if m == 1:
        return base + k - m
    if m == 2:
        return base + ceil_sum(k - m)
    return base + sum(math.comb(m - 3 + i, i) * ceil_sum(k - m - i) for i in range(k - m))


def tuple_labels(m: int, k: int) -> List[TupleLabel]:
    """All non-increasing m-tuples over [0, k-m], initial tuple first."""
    labels = list(combinations_with_replacement(range(k - m, -1, -1), m))
    return [labels[-1]] + labels[:-1]


def _star_step(label: StarLabel, symbol: int, m: int) -> Optional[StarLabel]:
    """Shift one symbol into a star/bit window; None if the window breaks."""
    window = label.bits()[1:] + str(symbol)
    zeros = window.count("0")
    if zeros > m:
        return None
    if zeros < m:
        # forget the oldest hits so the window keeps exactly m (possibly starred) zeros
        chars = list(window)
        missing = m - zeros
        for pos, ch in enumerate(chars):
            if missing == 0:
                break
            if ch == "1":
                chars[pos] = "0"
                missing -= 1
        window = "".join(chars)
    stripped = window.lstrip("0")
    return StarLabel(len(window) - len(stripped), stripped)


def build_minimal(m: int, k: int, state_budget: Optional[int] = None) -> Automaton:
    """
    Build the minimal acceptor A(m, k) of AnyMiss(m, k).

    Args:
        m: Misses allowed per window
        k: Window length
        state_budget: Maximum number of states (default DEFAULT_STATE_BUDGET)

    Returns:
        Automaton with C(k, m) star/bit labeled nodes

    Raises:
        InvalidConstraintError: If 1 <= m < k does not hold
        StateBudgetExceeded: If C(k, m) exceeds the budget
    """
    WeaklyHardConstraint.any_miss(m, k)
    _check_budget(math.comb(k, m), state_budget)

    initial = StarLabel(m, "1" * (k - m))
    found: Dict[StarLabel, int] = {initial: 0}
    order = [initial]
    edges0: List[int] = []
    edges1: List[int] = []
    queue = deque([initial])
    while queue:
        label = queue.popleft()
        for symbol, edges in ((0, edges0), (1, edges1)):
            target = _star_step(label, symbol, m)
            if target is None:
                edges.append(NO_SUCCESSOR)
                continue
            if target not in found:
                found[target] = len(order)
                order.append(target)
                queue.append(target)
            edges.append(found[target])

    # renumber in the tuple order of H(m, k)
    position = {u: i for i, u in enumerate(tuple_labels(m, k))}
    new_index = np.array([position[node_map(label, m, k)] for label in order], dtype=np.int64)
    n = len(order)
    labels: List[StarLabel] = [initial] * n
    for old, label in enumerate(order):
        labels[new_index[old]] = label

    succ0 = np.full(n, NO_SUCCESSOR, dtype=np.int64)
    succ1 = np.full(n, NO_SUCCESSOR, dtype=np.int64)
    old0 = np.array(edges0, dtype=np.int64)
    old1 = np.array(edges1, dtype=np.int64)
    succ0[new_index] = np.where(old0 >= 0, new_index[old0], NO_SUCCESSOR)
    succ1[new_index] = new_index[old1]

    logger.debug("Built A(%d,%d) with %d states", m, k, n)
    return Automaton(AutomatonKind.MINIMAL, m, k, tuple(labels), succ0, succ1)


def _build_tuple_automaton(
    kind: AutomatonKind, m: int, k: int, c: int, labels: List[TupleLabel]
) -> Automaton:
    index = {u: i for i, u in enumerate(labels)}
    top = k - m
    n = len(labels)
    succ0 = np.full(n, NO_SUCCESSOR, dtype=np.int64)
    succ1 = np.empty(n, dtype=np.int64)

    for i, u in enumerate(labels):
        succ1[i] = index[tuple(max(x - 1, 0) for x in u)]
        if u[-1] != 0:
            continue
        if c == 1 or m == 1 or u[m - 2] == 0:
            head = top
        else:
            head = top - (top - u[0]) % c
        succ0[i] = index[(head,) + u[:-1]]

    kept_c = c if kind == AutomatonKind.COMPRESSED else None
    return Automaton(kind, m, k, tuple(labels), succ0, succ1, c=kept_c)


def build_isomorphic(m: int, k: int, state_budget: Optional[int] = None) -> Automaton:
    """
    Build the tuple-labeled automaton H(m, k).

    1-transitions map u_i to max(u_i - 1, 0); a 0-transition exists iff
    u_m = 0 and maps u to <k-m, u_1, ..., u_{m-1}>.

    Raises:
        InvalidConstraintError: If 1 <= m < k does not hold
        StateBudgetExceeded: If C(k, m) exceeds the budget
    """
    WeaklyHardConstraint.any_miss(m, k)
    _check_budget(math.comb(k, m), state_budget)
    automaton = _build_tuple_automaton(AutomatonKind.ISOMORPHIC, m, k, 1, tuple_labels(m, k))
    logger.debug("Built H(%d,%d) with %d states", m, k, automaton.num_states)
    return automaton


def build_compressed(m: int, k: int, c: int, state_budget: Optional[int] = None) -> Automaton:
    """
    Build the compressed automaton T(m, k, c).

    Nodes are the tuples of H(m, k) with (u_1 - u_2) divisible by c or
    u_m = 0. A miss from a non-critical node enters
    <u_0, u_1, ..., u_{m-1}> where u_0 = k - m if u_{m-1} = 0 and
    u_0 = k - m - (k - m - u_1) mod c otherwise. With m = 1 or c = 1 the
    result has the same graph as H(m, k).

    Args:
        m: Misses allowed per window
        k: Window length
        c: Compression factor, c >= 1
        state_budget: Maximum number of states

    Raises:
        InvalidConstraintError: On invalid (m, k) or c < 1
        StateBudgetExceeded: If state_count(m, k, c) exceeds the budget
    """
    spec = TrimSpec(m, k, c)
    _check_budget(state_count(m, k, c), state_budget)

    labels = tuple_labels(m, k)
    if m > 1 and c > 1:
        labels = [u for u in labels if (u[0] - u[1]) % c == 0 or u[-1] == 0]

    automaton = _build_tuple_automaton(AutomatonKind.COMPRESSED, spec.m, spec.k, spec.c, labels)
    logger.debug("Built T(%d,%d,%d) with %d states", m, k, c, automaton.num_states)
    return automaton


def window_reduced(m: int, k: int, reduced_k: int, state_budget: Optional[int] = None) -> Automaton:
    """
    Minimal acceptor of AnyMiss(m, reduced_k), the window-reduction
    over-approximation of AnyMiss(m, k).

    Raises:
        InvalidConstraintError: Unless m < reduced_k <= k
    """
    WeaklyHardConstraint.any_miss(m, k)
    if not m < reduced_k <= k:
        raise InvalidConstraintError(f"Reduced window must satisfy {m} < k' <= {k}")
    return build_minimal(m, reduced_k, state_budget)


def build_for(
    spec: AutomatonSpec, state_budget: Optional[int] = None, tuple_labeled: bool = False
) -> Automaton:
    """
    Build the automaton named by a constraint or trim spec.

    Args:
        spec: WeaklyHardConstraint (AnyMiss or AnyHit) or TrimSpec
        state_budget: Maximum number of states
        tuple_labeled: Build H instead of A for plain constraints

    Returns:
        A(m, k) (or H(m, k)) for constraints, T(m, k, c) for trim specs
    """
    if isinstance(spec, TrimSpec):
        return build_compressed(spec.m, spec.k, spec.c, state_budget)
    canonical = spec.as_anymiss()
    if tuple_labeled:
        return build_isomorphic(canonical.m_or_h, canonical.k, state_budget)
    return build_minimal(canonical.m_or_h, canonical.k, state_budget)


def check_isomorphism(a: Automaton, h: Automaton) -> bool:
    """
    Check that node_map is a transition-preserving bijection from A to H.

    Returns:
        True if the initial nodes correspond and every edge of either
        automaton has its image in the other
    """
    if (a.m, a.k) != (h.m, h.k) or a.num_states != h.num_states:
        return False
    if not all(isinstance(label, StarLabel) for label in a.labels):
        return False

    try:
        mapping = np.array(
            [h.index_of(node_map(label, a.m, a.k)) for label in a.labels], dtype=np.int64
        )
    except KeyError:
        return False

    if np.unique(mapping).shape[0] != a.num_states:
        return False
    if mapping[a.initial] != h.initial:
        return False

    for succ_a, succ_h in ((a.succ0, h.succ0), (a.succ1, h.succ1)):
        image = np.where(succ_a >= 0, mapping[succ_a], NO_SUCCESSOR)
        if not np.array_equal(image, succ_h[mapping]):
            return False
    return True
