"""
Exact and asymptotic word counting for weakly-hard automata.

Exact counts push an integer vector through the transition graph using
Python integers, so they never overflow. The asymptotic estimate
|L^{=l}| ~ a * lambda^l comes from the Perron pair of the adjacency matrix.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from whtrim.automata import Automaton, adjacency
from whtrim.linalg import DEFAULT_POWER_MAX_ITERATIONS, DEFAULT_POWER_TOLERANCE, perron_pair

logger = logging.getLogger(__name__)


class AnalysisError(Exception):
    """Base exception for language analysis errors."""

    pass


class ParameterMismatch(AnalysisError):
    """Raised when two automata compared for simulation differ in (m, k)."""

    pass


@dataclass(frozen=True)
class GrowthEstimate:
    """
    Asymptotic language size |L^{=l}| ~ a * lambda_^l.

    Attributes:
        a: Prefactor
        lambda_: Growth rate (Perron root of the adjacency matrix)
        source: Name of the automaton the estimate was computed for
        states: Number of states of that automaton
    """

    a: float
    lambda_: float
    source: str
    states: int

    def estimate(self, length: int) -> float:
        """Approximate number of accepted words of the given length."""
        return float(self.a * self.lambda_**length)


def count_series(automaton: Automaton, max_len: int) -> List[int]:
    """
    Exact number of accepted words for every length 0..max_len.

    Returns:
        List whose entry l is |L^{=l}|
    """
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")

    succ0 = automaton.succ0.tolist()
    succ1 = automaton.succ1.tolist()
    n = automaton.num_states
    vector = [0] * n
    vector[automaton.initial] = 1
    active = [automaton.initial]
    counts = [1]

    for _ in range(max_len):
        pushed = [0] * n
        for i in active:
            value = vector[i]
            pushed[succ1[i]] += value
            if succ0[i] >= 0:
                pushed[succ0[i]] += value
        vector = pushed
        active = [i for i in range(n) if vector[i]]
        counts.append(sum(vector[i] for i in active))

    return counts


def count_words(automaton: Automaton, length: int) -> int:
    """Exact number of accepted words of the given length."""
    return count_series(automaton, length)[-1]


def prefactor(x: np.ndarray, y: np.ndarray, initial: int) -> float:
    """
    Prefactor of the asymptotic count for Perron vectors x (of P^T) and y (of P).

    Invariant under rescaling either vector by a positive factor.
    """
    x = np.abs(x)
    y = np.abs(y)
    return float(y[initial] * x.sum() / float(y @ x))


def growth(
    automaton: Automaton,
    tolerance: float = DEFAULT_POWER_TOLERANCE,
    max_iterations: int = DEFAULT_POWER_MAX_ITERATIONS,
) -> GrowthEstimate:
    """
    Asymptotic growth constants of an automaton's language.

    Args:
        automaton: Built automaton (its adjacency matrix is primitive)
        tolerance: Power iteration tolerance
        max_iterations: Power iteration cap

    Returns:
        GrowthEstimate with prefactor a and growth rate lambda_

    Raises:
        NoConvergence: If the Perron power iteration does not converge
    """
    _, _, pi = adjacency(automaton)
    lam, x, y = perron_pair(pi, tolerance, max_iterations)
    a = prefactor(x, y, automaton.initial)
    logger.info("Growth of %s: %.3f * %.3f^l", automaton.name, a, lam)
    return GrowthEstimate(a=a, lambda_=lam, source=automaton.name, states=automaton.num_states)
