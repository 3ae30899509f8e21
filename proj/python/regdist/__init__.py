"""Containment tests for function spaces built on generalized smoothness scales.

Thin re-export of the compiled module. Index-like arguments (p, q, r, s) are
strings so boundary values stay exact: "3/2", "0.25", "inf".
"""

from _regdist import (
    atom_orders,
    boyd,
    classical_regularity,
    conjugate_index,
    lacunary_trace,
    normalize_sequence,
    profile,
    regularity,
    regularity_json,
    sequence_membership,
    standardize,
)

__all__ = [
    "atom_orders",
    "boyd",
    "classical_regularity",
    "conjugate_index",
    "lacunary_trace",
    "normalize_sequence",
    "profile",
    "regularity",
    "regularity_json",
    "sequence_membership",
    "standardize",
]
