"""Exact lattice arithmetic for rank-2 K3 Picard lattices."""

__version__ = "0.1.0"

from .autgroup import classify, word_reduce
from .family import instantiate, verify_main_theorem
from .gizatullin import full_verdict, linear_verdict, small_curve_criterion
from .isometry import discriminant_action, generator_h, verify
from .lattice import GramMatrix, admit, brute_force_represents, evaluate, represents
from .pell import minimal_solution, solvable

__all__ = [
    "GramMatrix",
    "admit",
    "brute_force_represents",
    "classify",
    "discriminant_action",
    "evaluate",
    "full_verdict",
    "generator_h",
    "instantiate",
    "linear_verdict",
    "minimal_solution",
    "represents",
    "small_curve_criterion",
    "solvable",
    "verify",
    "verify_main_theorem",
    "word_reduce",
]
