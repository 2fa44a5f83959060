"""Hall bases of free Lie algebras and their invariants under sl2 and sl3 actions."""

from .hall import (
    Alphabet,
    HallError,
    LiePoly,
    Tree,
    bracket,
    compare,
    format_poly,
    format_word,
    hall_form,
    hall_words,
    is_hall,
    leaf,
    node,
    parse_poly,
    parse_word,
)
from .invariants import (
    action_matrix,
    compute_invariants,
    nonprimitive_basis,
    primitive_split,
    verify_invariant,
)
from .reps import RepSpec, act, builtin_rep, load_rep, weight, weight_basis
from .witt import free_lie_dims, nonprimitive_dims, weight_count_check

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "HallError",
    "LiePoly",
    "RepSpec",
    "Tree",
    "act",
    "action_matrix",
    "bracket",
    "builtin_rep",
    "compare",
    "compute_invariants",
    "format_poly",
    "format_word",
    "free_lie_dims",
    "hall_form",
    "hall_words",
    "is_hall",
    "leaf",
    "load_rep",
    "node",
    "nonprimitive_basis",
    "nonprimitive_dims",
    "parse_poly",
    "parse_word",
    "primitive_split",
    "verify_invariant",
    "weight",
    "weight_basis",
    "weight_count_check",
]
