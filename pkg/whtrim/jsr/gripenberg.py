"""
Gripenberg branch-and-bound for the joint spectral radius of a lifted system.

Words over {0 = miss, 1 = hit} are grown one symbol per iteration. For a word
Q of length L with product P_Q = M_{q_1} ... M_{q_L}:

- rho(P_Q)^(1/L) is a lower bound on the jsr
- p(Q) = min over prefixes Q_j of ||P_{Q_j}||^(1/j) bounds every infinite
  product starting with Q

Words with p(Q) <= lower + delta are dropped. The jsr then lies below
max(lower + delta, max p over the retained words).
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Tuple

import numpy as np

from whtrim.jsr.core import (
    LiftedSystem,
    Representation,
    TransitionMap,
    compose,
    map_nnz,
    map_norm2,
    map_spectral_radius,
)
from whtrim.linalg import (
    DEFAULT_NORM_MAX_ITERATIONS,
    DEFAULT_NORM_TOLERANCE,
    operator_norm2,
    spectral_radius,
)

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 1e-3
DEFAULT_MAX_ITERATIONS = 100
DEFAULT_ENTRY_BUDGET = 1_000_000_000
MAX_BRUTE_FORCE_LENGTH = 16


class Verdict(str, Enum):
    """Outcome of a stability verification run."""

    CERTIFIED_STABLE = "CertifiedStable"
    # lower >= 1 under an over-approximating automaton does not prove instability
    LOWER_BOUND_AT_LEAST_ONE = "LowerBoundAtLeastOne"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class IterationSnapshot:
    """Bounds and accounting after one iteration (iteration 0 is the seed)."""

    iteration: int
    lower: float
    upper: float
    frontier: int
    evaluated: int
    stored_entries: int
    peak_entries: int
    elapsed: float


@dataclass(frozen=True)
class JsrResult:
    """
    Certified bounds on the joint spectral radius of a lifted system.

    Attributes:
        lower: Largest rho(P_Q)^(1/|Q|) seen (or the seed)
        upper: Gripenberg upper bound, inf if no iteration completed
        iterations: Completed iterations (frontier depth)
        stored_entries: Entries of the products retained in the last iteration
        verdict: CertifiedStable iff upper < 1; LowerBoundAtLeastOne iff lower >= 1
        delta: Slack parameter used for pruning
        representation: Storage used for word products
        peak_entries: Largest stored_entries over the run
        history: One snapshot per iteration, starting with the seed
    """

    lower: float
    upper: float
    iterations: int
    stored_entries: int
    verdict: Verdict
    delta: float
    representation: Representation
    peak_entries: int
    history: Tuple[IterationSnapshot, ...] = ()

    @property
    def certified(self) -> bool:
        """True if stability is certified."""
        return self.verdict == Verdict.CERTIFIED_STABLE


@dataclass(frozen=True, eq=False)
class _Product:
    word: Tuple[int, ...]
    bound: float
    pi: Optional[TransitionMap] = None
    phi: Optional[np.ndarray] = None
    explicit: Optional[np.ndarray] = None


def _entries(system: LiftedSystem, product: _Product) -> int:
    if system.representation == Representation.EXPLICIT:
        return system.lifted_dim**2
    assert product.pi is not None
    return map_nnz(product.pi) + system.plant_dim**2


def memory_accounting(system: LiftedSystem, products: Iterable[_Product]) -> int:
    """
    Scalar entries needed to store a set of word products.

    Explicit products count as dense (n * n_x)^2 blocks; factored products
    count nnz(Pi_w) + n_x^2.
    """
    return sum(_entries(system, product) for product in products)


def _root(system: LiftedSystem) -> _Product:
    if system.representation == Representation.EXPLICIT:
        return _Product((), math.inf, explicit=np.eye(system.lifted_dim))
    return _Product(
        (),
        math.inf,
        pi=np.arange(system.states, dtype=np.int64),
        phi=np.eye(system.plant_dim),
    )


class _Evaluator:
    def __init__(self, system: LiftedSystem, norm_tolerance: float, norm_max_iterations: int):
        self.system = system
        self.norm_tolerance = norm_tolerance
        self.norm_max_iterations = norm_max_iterations

    def norm(self, matrix: np.ndarray) -> float:
        return operator_norm2(matrix, self.norm_tolerance, self.norm_max_iterations)

    def __call__(self, task: Tuple[_Product, int]) -> Tuple[_Product, float]:
        """Extend a product by one symbol; returns (product, rho bound)."""
        parent, symbol = task
        system = self.system
        word = parent.word + (symbol,)
        length = len(word)

        if system.representation == Representation.EXPLICIT:
            assert parent.explicit is not None
            explicit = parent.explicit @ system.lifted(symbol)
            if not np.any(explicit):
                return _Product(word, 0.0, explicit=explicit), 0.0
            rho = spectral_radius(explicit)
            norm = max(self.norm(explicit), rho)
            bound = min(parent.bound, norm ** (1.0 / length))
            return _Product(word, bound, explicit=explicit), rho ** (1.0 / length)

        assert parent.pi is not None and parent.phi is not None
        pi = compose(parent.pi, system.pi(symbol))
        phi = parent.phi @ system.phi(symbol)
        if map_nnz(pi) == 0 or not np.any(phi):
            # word leaves the language or the dynamics vanish
            return _Product(word, 0.0, pi=pi, phi=phi), 0.0
        phi_rho = spectral_radius(phi)
        rho = map_spectral_radius(pi) * phi_rho
        # norm estimates never drop below the spectral radius
        norm = map_norm2(pi) * max(self.norm(phi), phi_rho)
        bound = min(parent.bound, norm ** (1.0 / length))
        return _Product(word, bound, pi=pi, phi=phi), rho ** (1.0 / length)


def _verdict(lower: float, upper: float) -> Optional[Verdict]:
    if upper < 1.0:
        return Verdict.CERTIFIED_STABLE
    if lower >= 1.0:
        return Verdict.LOWER_BOUND_AT_LEAST_ONE
    return None


def gripenberg(
    system: LiftedSystem,
    delta: float = DEFAULT_DELTA,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    entry_budget: int = DEFAULT_ENTRY_BUDGET,
    lower_seed: float = 0.0,
    workers: int = 1,
    stop_on_verdict: bool = True,
    norm_tolerance: float = DEFAULT_NORM_TOLERANCE,
    norm_max_iterations: int = DEFAULT_NORM_MAX_ITERATIONS,
) -> JsrResult:
    """
    Bound the joint spectral radius of a lifted system.

    Args:
        system: Lifted matrix pair
        delta: Absolute pruning slack; the frontier keeps words whose bound
            exceeds lower + delta
        max_iterations: Maximum frontier depth
        entry_budget: Maximum stored entries before giving up
        lower_seed: Known lower bound to start from (iteration 0)
        workers: Threads used to evaluate candidate words
        stop_on_verdict: Stop as soon as upper < 1 or lower >= 1
        norm_tolerance: Tolerance of the spectral norm iteration
        norm_max_iterations: Cap of the spectral norm iteration

    Returns:
        JsrResult; exhausting a budget yields an Inconclusive verdict

    Raises:
        ValueError: If delta is not positive
    """
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")

    started = time.perf_counter()
    lower = float(lower_seed)
    upper = math.inf
    peak = 0
    stored = 0
    history: List[IterationSnapshot] = [IterationSnapshot(0, lower, upper, 1, 0, 0, 0, 0.0)]

    def finish(iterations: int, verdict: Verdict) -> JsrResult:
        logger.info(
            "%s: %s after %d iterations, jsr in [%.12g, %.12g], %d entries",
            system.name,
            verdict.value,
            iterations,
            lower,
            upper,
            stored,
        )
        return JsrResult(
            lower=lower,
            upper=upper,
            iterations=iterations,
            stored_entries=stored,
            verdict=verdict,
            delta=delta,
            representation=system.representation,
            peak_entries=peak,
            history=tuple(history),
        )

    if stop_on_verdict and lower >= 1.0:
        return finish(0, Verdict.LOWER_BOUND_AT_LEAST_ONE)

    evaluate = _Evaluator(system, norm_tolerance, norm_max_iterations)
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    frontier = [_root(system)]
    try:
        for depth in range(1, max_iterations + 1):
            tasks = [(parent, symbol) for parent in frontier for symbol in (0, 1)]
            if executor is not None:
                scored = list(executor.map(evaluate, tasks))
            else:
                scored = [evaluate(task) for task in tasks]

            for _, rho_bound in scored:
                lower = max(lower, rho_bound)
            frontier = [product for product, _ in scored if product.bound > lower + delta]
            best = max((product.bound for product in frontier), default=-math.inf)
            upper = min(upper, max(lower + delta, best))

            stored = memory_accounting(system, frontier)
            peak = max(peak, stored)
            history.append(
                IterationSnapshot(
                    depth,
                    lower,
                    upper,
                    len(frontier),
                    len(tasks),
                    stored,
                    peak,
                    time.perf_counter() - started,
                )
            )
            logger.debug(
                "iteration %d: %d candidates, %d kept, lower %.12g, upper %.12g, %d entries",
                depth,
                len(tasks),
                len(frontier),
                lower,
                upper,
                stored,
            )

            verdict = _verdict(lower, upper)
            if verdict is not None and (stop_on_verdict or not frontier):
                return finish(depth, verdict)
            if not frontier:
                return finish(depth, Verdict.INCONCLUSIVE)
            if stored > entry_budget:
                logger.warning("Entry budget %d exceeded at iteration %d", entry_budget, depth)
                return finish(depth, Verdict.INCONCLUSIVE)
    finally:
        if executor is not None:
            executor.shutdown()

    return finish(max_iterations, _verdict(lower, upper) or Verdict.INCONCLUSIVE)


def brute_force_lower_bound(system: LiftedSystem, max_len: int) -> float:
    """
    Largest rho(P_w)^(1/|w|) over all words of length 1..max_len.

    Words whose product vanishes are not extended.

    Raises:
        ValueError: If max_len is outside [1, MAX_BRUTE_FORCE_LENGTH]
    """
    if not 1 <= max_len <= MAX_BRUTE_FORCE_LENGTH:
        raise ValueError(f"max_len must be in [1, {MAX_BRUTE_FORCE_LENGTH}], got {max_len}")

    evaluate = _Evaluator(system, DEFAULT_NORM_TOLERANCE, DEFAULT_NORM_MAX_ITERATIONS)
    best = 0.0
    stack = [_root(system)]
    while stack:
        parent = stack.pop()
        for symbol in (0, 1):
            product, rho_bound = evaluate((parent, symbol))
            best = max(best, rho_bound)
            vanished = product.bound == 0.0
            if not vanished and len(product.word) < max_len:
                stack.append(product)
    return best
