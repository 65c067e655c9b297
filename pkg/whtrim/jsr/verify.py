"""
End-to-end stability verification of a closed-loop pair under a weakly-hard
constraint or a compressed automaton.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

from whtrim.automata import Automaton, AutomatonSpec, build_for
from whtrim.jsr.core import ClosedLoopPair, LiftedSystem, Representation, lift
from whtrim.jsr.gripenberg import (
    DEFAULT_DELTA,
    DEFAULT_ENTRY_BUDGET,
    DEFAULT_MAX_ITERATIONS,
    JsrResult,
    gripenberg,
)
from whtrim.linalg import (
    DEFAULT_KRON_BUDGET,
    DEFAULT_NORM_MAX_ITERATIONS,
    DEFAULT_NORM_TOLERANCE,
    spectral_radius,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JsrOptions:
    """Tuning knobs for a verification run."""

    delta: float = DEFAULT_DELTA
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    entry_budget: int = DEFAULT_ENTRY_BUDGET
    representation: Representation = Representation.FACTORED
    workers: int = 1
    state_budget: Optional[int] = None
    kron_budget: int = DEFAULT_KRON_BUDGET
    norm_tolerance: float = DEFAULT_NORM_TOLERANCE
    norm_max_iterations: int = DEFAULT_NORM_MAX_ITERATIONS


def verify_stability(
    pair: ClosedLoopPair,
    target: Union[AutomatonSpec, Automaton],
    options: Optional[JsrOptions] = None,
) -> JsrResult:
    """
    Bound the jsr of a closed-loop pair lifted onto a weakly-hard automaton.

    The lower bound starts at sr(phi_hit): the all-hit word is accepted by
    every automaton, so the nominal dynamics are always reachable.

    Args:
        pair: Hit and miss closed-loop matrices
        target: Constraint, trim spec or an already built automaton
        options: Run options (defaults if None)

    Returns:
        JsrResult of the Gripenberg run

    Raises:
        StateBudgetExceeded: If the automaton is too large to build
        SizeBudgetExceeded: If the explicit lifted dimension exceeds its budget
    """
    options = options or JsrOptions()
    if isinstance(target, Automaton):
        automaton = target
    else:
        automaton = build_for(target, options.state_budget)
    system = lift(pair, automaton, options.representation, options.kron_budget)
    seed = spectral_radius(pair.phi_hit)
    logger.debug("Verifying %s under %s, sr(phi_hit) = %.12g", pair.name, automaton.name, seed)
    return run_gripenberg(system, options, lower_seed=seed)


def run_gripenberg(system: LiftedSystem, options: JsrOptions, lower_seed: float = 0.0) -> JsrResult:
    """Run gripenberg with the settings of a JsrOptions record."""
    return gripenberg(
        system,
        delta=options.delta,
        max_iterations=options.max_iterations,
        entry_budget=options.entry_budget,
        lower_seed=lower_seed,
        workers=options.workers,
        norm_tolerance=options.norm_tolerance,
        norm_max_iterations=options.norm_max_iterations,
    )
