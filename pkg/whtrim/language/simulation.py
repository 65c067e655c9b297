"""
Simulation and bounded language-inclusion checks.

The simulation relation between H(m, k) and T(m, k, c) is given in closed
form: u is simulated by v when u_i >= v_i for every component. Checking it
only needs the pairs reachable from the two initial nodes.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from whtrim.automata import Automaton, StarLabel, TupleLabel, node_map
from whtrim.constraints import LimitExceeded, Word
from whtrim.language.core import ParameterMismatch

logger = logging.getLogger(__name__)

MAX_INCLUSION_LENGTH = 20

Pair = Tuple[int, int]


@dataclass(frozen=True)
class SimulationWitness:
    """A failed simulation obligation."""

    simulated: TupleLabel
    simulating: TupleLabel
    symbol: Optional[int]
    reason: str


@dataclass(frozen=True)
class SimulationReport:
    """
    Outcome of a simulation check.

    Attributes:
        holds: True if every obligation was met
        witness: First failed obligation, None when holds is True
        relation_size: Number of related pairs visited
    """

    holds: bool
    witness: Optional[SimulationWitness]
    relation_size: int


def _tuple_of(automaton: Automaton, node: int) -> TupleLabel:
    label = automaton.labels[node]
    if isinstance(label, StarLabel):
        return node_map(label, automaton.m, automaton.k)
    if not isinstance(label, tuple):
        raise TypeError(f"Node {node} of {automaton.name} has no tuple label")
    return label


def _dominated(u: TupleLabel, v: TupleLabel) -> bool:
    return len(u) == len(v) and all(a >= b for a, b in zip(u, v))


def check_simulation(h: Automaton, t: Automaton) -> SimulationReport:
    """
    Check that T simulates H under the componentwise relation u >= v.

    Obligations: related pairs are nodes of the two automata, the initial
    nodes are related, acceptance is preserved (all nodes accept) and every
    transition of H from u is matched from every related v by a transition
    whose targets are again related.

    Raises:
        ParameterMismatch: If the automata were built for different (m, k)
    """
    if (h.m, h.k) != (t.m, t.k):
        raise ParameterMismatch(
            f"Cannot compare automata for ({h.m},{h.k}) and ({t.m},{t.k})"
        )

    start = (h.initial, t.initial)
    u0, v0 = _tuple_of(h, h.initial), _tuple_of(t, t.initial)
    if not _dominated(u0, v0):
        witness = SimulationWitness(u0, v0, None, "initial nodes are not related")
        return SimulationReport(False, witness, 0)

    seen = {start}
    queue = deque([start])
    while queue:
        i, j = queue.popleft()
        for symbol in (0, 1):
            i_next = h.successor(i, symbol)
            if i_next is None:
                continue
            j_next = t.successor(j, symbol)
            if j_next is None:
                witness = SimulationWitness(
                    _tuple_of(h, i), _tuple_of(t, j), symbol, "transition not matched"
                )
                return SimulationReport(False, witness, len(seen))
            if not _dominated(_tuple_of(h, i_next), _tuple_of(t, j_next)):
                witness = SimulationWitness(
                    _tuple_of(h, i), _tuple_of(t, j), symbol, "successors are not related"
                )
                return SimulationReport(False, witness, len(seen))
            pair = (i_next, j_next)
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)

    logger.debug("Simulation of %s by %s holds on %d pairs", h.name, t.name, len(seen))
    return SimulationReport(True, None, len(seen))


def find_inclusion_counterexample(a: Automaton, t: Automaton, max_len: int) -> Optional[Word]:
    """
    Shortest word of length <= max_len accepted by ``a`` but not by ``t``.

    Explores the synchronized product breadth-first with 0 before 1, so the
    returned word is the lexicographically first among the shortest ones.

    Raises:
        LimitExceeded: If max_len exceeds MAX_INCLUSION_LENGTH
    """
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    if max_len > MAX_INCLUSION_LENGTH:
        raise LimitExceeded(f"Inclusion depth {max_len} exceeds limit {MAX_INCLUSION_LENGTH}")

    start = (a.initial, t.initial)
    parent: Dict[Pair, Tuple[Optional[Pair], int]] = {start: (None, -1)}
    frontier: List[Pair] = [start]

    def trace(pair: Pair) -> List[int]:
        bits: List[int] = []
        node: Optional[Pair] = pair
        while node is not None:
            prev, symbol = parent[node]
            if symbol >= 0:
                bits.append(symbol)
            node = prev
        return bits[::-1]

    for _ in range(max_len):
        next_frontier: List[Pair] = []
        for pair in frontier:
            i, j = pair
            for symbol in (0, 1):
                i_next = a.successor(i, symbol)
                if i_next is None:
                    continue
                j_next = t.successor(j, symbol)
                if j_next is None:
                    return Word(tuple(trace(pair) + [symbol]))
                target = (i_next, j_next)
                if target not in parent:
                    parent[target] = (pair, symbol)
                    next_frontier.append(target)
        frontier = next_frontier
        if not frontier:
            break
    return None


def check_inclusion_bounded(a: Automaton, t: Automaton, max_len: int) -> bool:
    """True iff every word of length <= max_len accepted by ``a`` is accepted by ``t``."""
    return find_inclusion_counterexample(a, t, max_len) is None
