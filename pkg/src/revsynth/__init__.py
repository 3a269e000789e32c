"""Reversible-circuit gate libraries as permutation groups."""

from .errors import RevSynthError
from .gates import Gate, GateLibrary, elaborate, gt_library_size, paper_g4_label, parse_gate, standard_library
from .perm import Permutation, compose, format_cycles, identity, inverse, order_of, parse_cycles

__all__ = [
    "Gate", "GateLibrary", "Permutation", "RevSynthError", "compose", "elaborate",
    "format_cycles", "gt_library_size", "identity", "inverse", "order_of",
    "paper_g4_label", "parse_cycles", "parse_gate", "standard_library",
]

__version__ = "0.1.0"
