"""Hardness pipeline as instance generators: 3-CNF -> layered disjoint paths ->
structured colored token swapping -> plain token swapping."""
from .cnf import CnfFormula, emit_dimacs, pad_to_three, parse_dimacs
from .dp import LayeredDag, check_paths, dp_solve, emit_dp, parse_dp
from .dp_to_colored import StructuredColoredInstance, check_structured, colored_solution_from_paths, dp_to_colored
from .network import PermutationNetwork, build_permutation_network, route_network
from .sat_to_dp import dp_paths_from_assignment, sat_to_dp
from .to_tsw import UncoloredReduction, structured_to_uncolored, uncolored_solution

__all__ = [
    "CnfFormula",
    "emit_dimacs",
    "pad_to_three",
    "parse_dimacs",
    "LayeredDag",
    "check_paths",
    "dp_solve",
    "emit_dp",
    "parse_dp",
    "StructuredColoredInstance",
    "check_structured",
    "colored_solution_from_paths",
    "dp_to_colored",
    "PermutationNetwork",
    "build_permutation_network",
    "route_network",
    "dp_paths_from_assignment",
    "sat_to_dp",
    "UncoloredReduction",
    "structured_to_uncolored",
    "uncolored_solution",
]
