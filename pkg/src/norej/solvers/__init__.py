"""Exact offline matching solvers and brute-force reference oracles."""

from .matching import Matching
from .bipartite import opt_bipartite_capacitated
from .general import opt_general_perfect
from .bruteforce import brute_force_matching, opt_roommate_bruteforce

__all__ = [
    "Matching",
    "opt_bipartite_capacitated",
    "opt_general_perfect",
    "brute_force_matching",
    "opt_roommate_bruteforce",
]
