"""
Text exporters for automata: Graphviz DOT and CSV edge lists.
"""

import csv
import io
from typing import Tuple

from whtrim.automata.core import Automaton, format_label


def to_dot(automaton: Automaton) -> str:
    """
    Render an automaton as a DOT digraph.

    Node names are indices; labels are the node labels (tuples as ``u1,...,um``).
    """
    lines = [f'digraph "{automaton.name}" {{', "  rankdir=LR;", '  __start [shape=point];']
    for i, label in enumerate(automaton.labels):
        lines.append(f'  n{i} [label="{format_label(label)}"];')
    lines.append(f"  __start -> n{automaton.initial};")
    for i in range(automaton.num_states):
        for symbol in (0, 1):
            target = automaton.successor(i, symbol)
            if target is not None:
                lines.append(f"  n{i} -> n{target} [label={symbol}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_csv(automaton: Automaton) -> Tuple[str, str]:
    """
    Render an automaton as CSV.

    Returns:
        Tuple (transitions, labels): ``src,symbol,dst`` rows and the
        ``index,label`` sidecar
    """
    edges = io.StringIO()
    writer = csv.writer(edges, lineterminator="\n")
    writer.writerow(["src", "symbol", "dst"])
    for i in range(automaton.num_states):
        for symbol in (0, 1):
            target = automaton.successor(i, symbol)
            if target is not None:
                writer.writerow([i, symbol, target])

    sidecar = io.StringIO()
    writer = csv.writer(sidecar, lineterminator="\n")
    writer.writerow(["index", "label"])
    for i, label in enumerate(automaton.labels):
        writer.writerow([i, format_label(label)])

    return edges.getvalue(), sidecar.getvalue()
