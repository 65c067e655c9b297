"""
whtrim - Compressed weakly-hard automata for stability verification

Builds minimal and compressed automata for (m, k) deadline-miss constraints
and certifies closed-loop stability by bounding the joint spectral radius of
the lifted switching system.
"""

__version__ = "0.1.0"
__author__ = "whtrim contributors"

from whtrim.automata import build_compressed, build_isomorphic, build_minimal, state_count
from whtrim.constraints import WeaklyHardConstraint, Word
from whtrim.jsr import ClosedLoopPair, JsrOptions, Verdict, verify_stability
from whtrim.language import count_series, growth

__all__ = [
    "WeaklyHardConstraint",
    "Word",
    "build_minimal",
    "build_isomorphic",
    "build_compressed",
    "state_count",
    "count_series",
    "growth",
    "ClosedLoopPair",
    "JsrOptions",
    "Verdict",
    "verify_stability",
]
