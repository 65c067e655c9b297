"""
Weakly-hard automata for whtrim.

Builds the minimal acceptor A(m, k), its tuple-labeled twin H(m, k) and the
compressed over-approximation T(m, k, c).
"""

from whtrim.automata.builders import (
    DEFAULT_STATE_BUDGET,
    AutomatonSpec,
    TrimSpec,
    build_compressed,
    build_for,
    build_isomorphic,
    build_minimal,
    check_isomorphism,
    g_index,
    node_map,
    parse_automaton_spec,
    state_count,
    tuple_labels,
    window_reduced,
)
from whtrim.automata.core import (
    NO_SUCCESSOR,
    Automaton,
    AutomatonError,
    AutomatonKind,
    StarLabel,
    StateBudgetExceeded,
    TupleLabel,
    adjacency,
    format_label,
    reachable_from_initial,
    successor_matrix,
)
from whtrim.automata.export import to_csv, to_dot

__all__ = [
    "DEFAULT_STATE_BUDGET",
    "NO_SUCCESSOR",
    "Automaton",
    "AutomatonError",
    "AutomatonKind",
    "AutomatonSpec",
    "StarLabel",
    "StateBudgetExceeded",
    "TrimSpec",
    "TupleLabel",
    "adjacency",
    "build_compressed",
    "build_for",
    "build_isomorphic",
    "build_minimal",
    "check_isomorphism",
    "format_label",
    "g_index",
    "node_map",
    "parse_automaton_spec",
    "reachable_from_initial",
    "state_count",
    "successor_matrix",
    "to_csv",
    "to_dot",
    "tuple_labels",
    "window_reduced",
]
