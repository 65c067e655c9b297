"""
Language analysis for whtrim.

Word counting, growth constants, simulation and bounded inclusion checks.
"""

from whtrim.language.core import (
    AnalysisError,
    GrowthEstimate,
    ParameterMismatch,
    count_series,
    count_words,
    growth,
    prefactor,
)
from whtrim.language.simulation import (
    MAX_INCLUSION_LENGTH,
    SimulationReport,
    SimulationWitness,
    check_inclusion_bounded,
    check_simulation,
    find_inclusion_counterexample,
)

__all__ = [
    "MAX_INCLUSION_LENGTH",
    "AnalysisError",
    "GrowthEstimate",
    "ParameterMismatch",
    "SimulationReport",
    "SimulationWitness",
    "check_inclusion_bounded",
    "check_simulation",
    "count_series",
    "count_words",
    "find_inclusion_counterexample",
    "growth",
    "prefactor",
]
