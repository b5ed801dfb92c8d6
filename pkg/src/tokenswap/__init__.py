"""Token swapping on graphs: exact and approximate solvers, the colored variant,
closed-form oracles and hardness-reduction instance generators."""
from .core import (
    ColoredInstance,
    Graph,
    Instance,
    SolveResult,
    TokenPlacement,
    apply_swaps,
    emit_instance,
    emit_swaps,
    parse_instance,
    parse_swaps,
    verify_colored_solution,
    verify_solution,
)
from .bounds import all_pairs_distances, complete_optimal, lower_bound, path_optimal, total_displacement
from .exact import iterative_deepening, solve_bfs, solve_depth_bounded, solve_misplaced_pruned
from .approx import solve_cycle_decomposition, solve_happy

__version__ = "0.1.0"

__all__ = [
    "ColoredInstance",
    "Graph",
    "Instance",
    "SolveResult",
    "TokenPlacement",
    "apply_swaps",
    "emit_instance",
    "emit_swaps",
    "parse_instance",
    "parse_swaps",
    "verify_colored_solution",
    "verify_solution",
    "all_pairs_distances",
    "complete_optimal",
    "lower_bound",
    "path_optimal",
    "total_displacement",
    "iterative_deepening",
    "solve_bfs",
    "solve_depth_bounded",
    "solve_misplaced_pruned",
    "solve_cycle_decomposition",
    "solve_happy",
]
