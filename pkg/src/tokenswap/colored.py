"""Colored token swapping: match tokens to same-colored vertices, then sort.

Step one solves, per color class, a minimum-cost perfect matching between the
tokens of that color and the vertices of that color, with graph distance as
the cost. Step two renames every vertex after the token assigned to it and
runs an ordinary (uncolored) solver.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .bounds import all_pairs_distances
from .core import ColoredInstance, Graph, SolveResult, TokenPlacement
from .errors import BudgetExceeded, ColorMultisetMismatch

INF = float("inf")


def hungarian(cost: Sequence[Sequence[int]]) -> tuple[list[int], list[int], list[int]]:
    """Minimum-cost perfect matching on a square matrix (shortest augmenting paths, O(N^3)).

    Returns ``(assign, u, v)`` where ``assign[i]`` is the column of row ``i``
    and ``u``/``v`` are optimal dual potentials: ``u[i] + v[j] <= cost[i][j]``
    everywhere, with equality on matched pairs.
    """
    n = len(cost)
    if n == 0:
        return [], [], []
    # 1-based internals with a virtual column 0, as in the classic formulation
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)  # p[j]: row matched to column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = cost[i0 - 1]
            delta = INF
            j1 = -1
            ui0 = u[i0]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assign = [0] * n
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign, u[1:], v[1:]


def lexicographic_min_matching(cost: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Among all minimum-cost perfect matchings, the one with the lexicographically smallest row->column array.

    Complementary slackness: a perfect matching is optimal iff it only uses
    edges that are tight under an optimal dual. Rows are fixed greedily to
    their smallest tight column for which the remainder still has a perfect
    tight matching, checked by one alternating-path search per attempt.
    """
    n = len(cost)
    assign, u, v = hungarian(cost)
    best = sum(cost[i][assign[i]] for i in range(n))
    tight = [[j for j in range(n) if cost[i][j] - u[i] - v[j] == 0] for i in range(n)]
    row_of = [0] * n
    for i, j in enumerate(assign):
        row_of[j] = i
    fixed = [False] * n

    def augment(i: int, goal: int, seen: list[bool]) -> bool:
        # find an alternating path that lets row i take a column while column `goal` is freed up
        for j in tight[i]:
            if seen[j]:
                continue
            seen[j] = True
            if j == goal or (not fixed[row_of[j]] and augment(row_of[j], goal, seen)):
                assign[i] = j
                row_of[j] = i
                return True
        return False

    for i in range(n):
        for j in tight[i]:
            if j == assign[i]:
                break
            other = row_of[j]
            if fixed[other]:
                continue
            freed = assign[i]
            seen = [False] * n
            seen[j] = True
            # tentatively move i onto j; `other` must reach `freed` through unfixed rows
            fixed[i] = True
            assign[i], row_of[j] = j, i
            if augment(other, freed, seen):
                break
            assign[i], row_of[j] = freed, other
            row_of[freed] = i
            fixed[i] = False
        fixed[i] = True
    return assign, best


@dataclass(frozen=True)
class TargetAssignment:
    target: tuple[int, ...]  # token -> vertex
    cost: int


def _distances(graph: Graph, distances):
    if distances is None:
        return all_pairs_distances(graph).tolist()
    if hasattr(distances, "tolist"):
        return distances.tolist()
    return distances


def optimal_assignment(inst: ColoredInstance, distances=None) -> TargetAssignment:
    """Distance-minimal color-respecting token -> vertex bijection (cost ``L*``)."""
    if sorted(inst.token_colors) != sorted(inst.vertex_colors):
        raise ColorMultisetMismatch("token and vertex color multisets differ")
    dist = _distances(inst.graph, distances)
    pos = inst.placement.positions()
    tokens_of = defaultdict(list)
    vertices_of = defaultdict(list)
    for t, c in enumerate(inst.token_colors):
        tokens_of[c].append(t)
    for w, c in enumerate(inst.vertex_colors):
        vertices_of[c].append(w)
    target = [0] * len(pos)
    total = 0
    for c, toks in tokens_of.items():
        verts = vertices_of[c]
        cost = [[dist[pos[t]][w] for w in verts] for t in toks]
        assign, best = lexicographic_min_matching(cost)
        total += best
        for t, j in zip(toks, assign):
            target[t] = verts[j]
    return TargetAssignment(tuple(target), total)


def relabeled_placement(inst: ColoredInstance, assignment: TargetAssignment) -> TokenPlacement:
    """Placement in which each vertex holds the id of the vertex its token is assigned to."""
    return TokenPlacement(assignment.target[t] for t in inst.placement)


Solver = Callable[[Graph, Sequence[int]], SolveResult]


def _pick_solver(solver: Union[str, Solver]) -> Solver:
    if callable(solver):
        return solver
    from . import approx, exact

    table = {
        "exact": exact.solve_bfs,
        "exact-id": lambda g, p: exact.iterative_deepening(g, p, exact.solve_depth_bounded),
        "exact-pruned": lambda g, p: exact.iterative_deepening(g, p, exact.solve_misplaced_pruned),
        "happy": approx.solve_happy,
        "cycles": approx.solve_cycle_decomposition,
    }
    return table[solver]


def solve_colored(inst: ColoredInstance, solver: Union[str, Solver] = "happy", distances=None) -> SolveResult:
    assignment = optimal_assignment(inst, distances)
    res = _pick_solver(solver)(inst.graph, relabeled_placement(inst, assignment))
    res.stats["assignment_cost"] = assignment.cost
    return res


def assignment_floor(inst: ColoredInstance, distances=None) -> int:
    """``ceil(L*/2)``: no color-correct sequence is shorter."""
    return (optimal_assignment(inst, distances).cost + 1) // 2


def colored_optimum(
    inst: ColoredInstance, max_depth: Optional[int] = None, node_budget: int = 5_000_000
) -> Optional[int]:
    """Brute-force colored optimum: BFS over color arrangements.

    Returns the fewest swaps after which every vertex carries a token of its
    own color, or ``None`` when that exceeds ``max_depth``.
    """
    palette = {c: i for i, c in enumerate(sorted(set(inst.vertex_colors)))}
    start = bytes(palette[inst.token_colors[t]] for t in inst.placement)
    goal = bytes(palette[c] for c in inst.vertex_colors)
    if start == goal:
        return 0
    edges = inst.graph.edges
    seen = {start}
    frontier = [start]
    depth = 0
    while frontier:
        if max_depth is not None and depth >= max_depth:
            return None
        depth += 1
        nxt = []
        for state in frontier:
            for u, v in edges:
                if state[u] == state[v]:
                    continue
                buf = bytearray(state)
                buf[u], buf[v] = buf[v], buf[u]
                child = bytes(buf)
                if child == goal:
                    return depth
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
            if len(seen) > node_budget:
                raise BudgetExceeded(len(seen))
        frontier = nxt
    return None
