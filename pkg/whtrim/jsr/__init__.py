"""
Stability verification for whtrim.

Lifts closed-loop pairs onto weakly-hard automata and bounds the joint
spectral radius of the result by Gripenberg branch-and-bound.
"""

from whtrim.jsr.core import (
    MAX_PLANT_DIM,
    ClosedLoopPair,
    JsrError,
    LiftedSystem,
    Representation,
    TransitionMap,
    compose,
    lift,
    map_nnz,
    map_norm2,
    map_spectral_radius,
    transition_map_from_matrix,
)
from whtrim.jsr.gripenberg import (
    DEFAULT_DELTA,
    DEFAULT_ENTRY_BUDGET,
    DEFAULT_MAX_ITERATIONS,
    MAX_BRUTE_FORCE_LENGTH,
    IterationSnapshot,
    JsrResult,
    Verdict,
    brute_force_lower_bound,
    gripenberg,
    memory_accounting,
)
from whtrim.jsr.verify import JsrOptions, run_gripenberg, verify_stability
from whtrim.linalg import SizeBudgetExceeded

__all__ = [
    "DEFAULT_DELTA",
    "DEFAULT_ENTRY_BUDGET",
    "DEFAULT_MAX_ITERATIONS",
    "MAX_BRUTE_FORCE_LENGTH",
    "MAX_PLANT_DIM",
    "ClosedLoopPair",
    "IterationSnapshot",
    "JsrError",
    "JsrOptions",
    "JsrResult",
    "LiftedSystem",
    "Representation",
    "SizeBudgetExceeded",
    "TransitionMap",
    "Verdict",
    "brute_force_lower_bound",
    "compose",
    "gripenberg",
    "lift",
    "map_nnz",
    "map_norm2",
    "map_spectral_radius",
    "memory_accounting",
    "run_gripenberg",
    "transition_map_from_matrix",
    "verify_stability",
]
