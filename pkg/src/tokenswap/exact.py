"""Exact solvers: breadth-first search over token configurations.

Three variants share one search routine:

* :func:`solve_bfs` -- unbounded BFS, exact optimum.
* :func:`solve_depth_bounded` -- BFS cut off after ``k`` levels.
* :func:`solve_misplaced_pruned` -- depth-bounded BFS that only expands
  swaps touching at least one misplaced token. Some optimal sequence never
  swaps two tokens that are both home, so this loses nothing.

Configurations are keyed by ``bytes(placement)`` (injective for a fixed n)
and each visited key stores only the index of the edge that reached it.
"""
from __future__ import annotations

import os
from collections import deque
from typing import Callable, Optional, Sequence

from .bounds import lower_bound
from .core import Graph, SolveResult, TokenPlacement
from .errors import BudgetExceeded, ValidationError

DEFAULT_NODE_BUDGET = 50_000_000


def default_node_budget() -> int:
    env = os.environ.get("TSW_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


def _search(
    graph: Graph,
    placement: Sequence[int],
    max_depth: Optional[int],
    node_budget: Optional[int],
    misplaced_only: bool,
) -> Optional[SolveResult]:
    n = graph.n
    if n > 255:
        raise ValidationError("exact search supports at most 255 vertices")
    if node_budget is None:
        node_budget = default_node_budget()
    start = bytes(TokenPlacement(placement))
    goal = bytes(range(n))
    if start == goal:
        return SolveResult([], stats={"visited": 1})
    edges = graph.edges
    parent = {start: -1}
    frontier = deque([start])
    depth = 0
    found = None
    while frontier and found is None:
        if max_depth is not None and depth >= max_depth:
            break
        depth += 1
        nxt = deque()
        for state in frontier:
            for idx, (u, v) in enumerate(edges):
                su, sv = state[u], state[v]
                if misplaced_only and su == u and sv == v:
                    continue
                buf = bytearray(state)
                buf[u], buf[v] = sv, su
                child = bytes(buf)
                if child in parent:
                    continue
                parent[child] = idx
                if child == goal:
                    found = child
                    break
                nxt.append(child)
            if found is not None:
                break
            if len(parent) > node_budget:
                raise BudgetExceeded(len(parent))
        frontier = nxt
    if found is None:
        return None
    seq = []
    state = found
    while True:
        idx = parent[state]
        if idx < 0:
            break
        u, v = edges[idx]
        seq.append((u, v))
        buf = bytearray(state)
        buf[u], buf[v] = buf[v], buf[u]
        state = bytes(buf)
    seq.reverse()
    return SolveResult(seq, stats={"visited": len(parent)})


def solve_bfs(graph: Graph, placement: Sequence[int], node_budget: Optional[int] = None) -> SolveResult:
    """Shortest swap sequence by BFS over all configurations."""
    return _search(graph, placement, None, node_budget, misplaced_only=False)


def solve_depth_bounded(
    graph: Graph, placement: Sequence[int], k: int, node_budget: Optional[int] = None
) -> Optional[SolveResult]:
    """A sequence of at most ``k`` swaps, or ``None`` when none exists."""
    if k < 0:
        raise ValidationError("swap budget must be nonnegative")
    return _search(graph, placement, k, node_budget, misplaced_only=False)


def solve_misplaced_pruned(
    graph: Graph, placement: Sequence[int], k: int, node_budget: Optional[int] = None
) -> Optional[SolveResult]:
    """Like :func:`solve_depth_bounded`, branching only on swaps that move a misplaced token."""
    if k < 0:
        raise ValidationError("swap budget must be nonnegative")
    return _search(graph, placement, k, node_budget, misplaced_only=True)


def iterative_deepening(
    graph: Graph,
    placement: Sequence[int],
    bounded: Callable[..., Optional[SolveResult]] = solve_depth_bounded,
    node_budget: Optional[int] = None,
    max_swaps: Optional[int] = None,
) -> Optional[SolveResult]:
    """Run ``bounded`` at k = lower bound, +2, +4, ... until it succeeds.

    Every solution length has the parity of the placement permutation, so
    steps of two skip only infeasible budgets. Returns ``None`` if
    ``max_swaps`` is reached first.
    """
    k = lower_bound(graph, placement)
    rounds = 0
    while max_swaps is None or k <= max_swaps:
        rounds += 1
        res = bounded(graph, placement, k, node_budget=node_budget)
        if res is not None:
            res.stats["rounds"] = rounds
            return res
        k += 2
    return None
