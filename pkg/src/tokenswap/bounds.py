"""Distance tables, the displacement lower bound and closed-form optima."""
from __future__ import annotations

from bisect import bisect_right
from collections import deque
from typing import Sequence

import numpy as np

from .core import Graph, TokenPlacement, permutation_parity
from .errors import NotAPath, NotComplete


def all_pairs_distances(graph: Graph) -> np.ndarray:
    """BFS from every vertex; returns an ``n x n`` int32 matrix of hop counts."""
    n = graph.n
    dist = np.full((n, n), -1, dtype=np.int32)
    adj = graph.adj
    for s in range(n):
        row = [-1] * n
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = row[u] + 1
            for w in adj[u]:
                if row[w] < 0:
                    row[w] = du
                    queue.append(w)
        dist[s] = row
    return dist


def total_displacement(graph: Graph, placement: Sequence[int], dist=None) -> int:
    """Sum over tokens of the distance from their vertex to their target."""
    if dist is None:
        dist = all_pairs_distances(graph)
    return int(sum(dist[v][t] for v, t in enumerate(placement)))


def lower_bound(graph: Graph, placement: Sequence[int], dist=None) -> int:
    """``ceil(L/2)``, bumped by one when its parity disagrees with the permutation's.

    Every swap is a transposition, so any solution length has the parity of
    the placement permutation.
    """
    L = total_displacement(graph, placement, dist)
    bound = (L + 1) // 2
    if bound % 2 != permutation_parity(placement):
        bound += 1
    return bound


def inversions(perm: Sequence[int]) -> int:
    """Inversion count by merge sort, O(n log n)."""
    arr = list(perm)

    def sort(a):
        if len(a) <= 1:
            return a, 0
        mid = len(a) // 2
        left, x = sort(a[:mid])
        right, y = sort(a[mid:])
        merged, count = [], x + y
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                count += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, count

    return sort(arr)[1]


def path_optimal(placement: Sequence[int], graph: Graph | None = None) -> int:
    """Optimum on the path 1-2-...-n: the number of inversions."""
    if graph is not None and not graph.is_path():
        raise NotAPath("graph is not the canonical path")
    return inversions(placement)


def complete_optimal(placement: Sequence[int], graph: Graph | None = None) -> int:
    """Optimum on K_n: n minus the number of cycles (fixed points included)."""
    if graph is not None and not graph.is_complete():
        raise NotComplete("graph is not complete")
    p = TokenPlacement(placement)
    return len(p) - len(p.cycles())


class MatrixDistances:
    """Distance oracle backed by the full table."""

    def __init__(self, graph: Graph, table=None):
        self.graph = graph
        if table is None:
            table = all_pairs_distances(graph)
        self.table = table
        self._rows = table.tolist()

    def dist(self, u: int, v: int) -> int:
        return self._rows[u][v]

    def next_hops(self, v: int, target: int) -> list[int]:
        """Neighbors of ``v`` one step closer to ``target``, ascending."""
        row = self._rows[target]
        want = row[v] - 1
        return [w for w in self.graph.adj[v] if row[w] == want]


class TreeDistances:
    """Distance oracle for trees: Euler-tour intervals plus binary-lifting LCA.

    Uses O(n log n) memory, so it scales to trees where an n x n table does not.
    """

    def __init__(self, graph: Graph):
        if not graph.is_tree():
            raise ValueError("TreeDistances needs a tree")
        n = graph.n
        self.graph = graph
        parent = [-1] * n
        depth = [0] * n
        tin = [0] * n
        tout = [0] * n
        children: list[list[int]] = [[] for _ in range(n)]
        clock = 0
        stack = [(0, 0)]
        while stack:
            v, i = stack.pop()
            if i == 0:
                tin[v] = clock
                clock += 1
            nbrs = graph.adj[v]
            while i < len(nbrs) and nbrs[i] == parent[v]:
                i += 1
            if i < len(nbrs):
                w = nbrs[i]
                stack.append((v, i + 1))
                parent[w] = v
                depth[w] = depth[v] + 1
                children[v].append(w)
                stack.append((w, 0))
            else:
                tout[v] = clock
        self.parent, self.depth, self.tin, self.tout = parent, depth, tin, tout
        self.children = children
        self._child_tin = [[tin[c] for c in ch] for ch in children]
        up = [parent[:]]
        up[0][0] = 0
        for _ in range(max(1, n.bit_length())):
            prev = up[-1]
            up.append([prev[prev[v]] for v in range(n)])
        self._up = up

    def _inside(self, v: int, t: int) -> bool:
        return self.tin[v] <= self.tin[t] < self.tout[v]

    def lca(self, u: int, v: int) -> int:
        if self._inside(u, v):
            return u
        if self._inside(v, u):
            return v
        for level in reversed(self._up):
            w = level[u]
            if not self._inside(w, v):
                u = w
        return self._up[0][u]

    def dist(self, u: int, v: int) -> int:
        return self.depth[u] + self.depth[v] - 2 * self.depth[self.lca(u, v)]

    def next_hops(self, v: int, target: int) -> list[int]:
        if v == target:
            return []
        if self._inside(v, target):
            i = bisect_right(self._child_tin[v], self.tin[target]) - 1
            return [self.children[v][i]]
        return [self.parent[v]]


def distance_oracle(graph: Graph, table=None):
    """Pick the cheapest exact oracle: tree-specialized when possible."""
    if table is None and graph.is_tree() and graph.n > 64:
        return TreeDistances(graph)
    return MatrixDistances(graph, table)
