"""Exact Bayesian network structure learning under sparsity constraints."""

from ._backend import BACKEND
from .arcbounded import (
    Coloring,
    CyclicSuperstructure,
    color_loyal,
    solve_ba_color_coding,
    solve_ba_topological,
    solve_colored_ba,
    solve_pi0e,
)
from .graphs import ArcSet, ClassSpec, MoralGraph, UGraph, check_class, is_dag, moralize
from .matching import WeightedGraph, brute_force_matching, max_weight_matching
from .oracle import Constraint, oracle_solve
from .pi1v import compose, decompose, is_ancestor_tuple, is_suitable, solve_completion, solve_pi1v
from .result import SolveResult
from .scores import Instance, normalize, superstructure

__all__ = [
    "BACKEND", "ArcSet", "ClassSpec", "Coloring", "Constraint", "CyclicSuperstructure",
    "Instance", "MoralGraph", "SolveResult", "UGraph", "WeightedGraph",
    "brute_force_matching", "check_class", "color_loyal", "compose", "decompose",
    "is_ancestor_tuple", "is_dag", "is_suitable", "max_weight_matching", "moralize",
    "normalize", "oracle_solve", "solve_ba_color_coding", "solve_ba_topological",
    "solve_colored_ba", "solve_completion", "solve_pi0e", "solve_pi1v", "superstructure",
]
