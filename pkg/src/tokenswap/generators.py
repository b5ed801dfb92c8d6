"""Seeded instance generators for the standard graph families."""
from __future__ import annotations

import heapq
from typing import Optional

import numpy as np

from .core import Graph, Instance, TokenPlacement
from .errors import ValidationError

FAMILIES = ("path", "cycle", "star", "complete", "tree", "random-connected")


class UnknownFamily(ValidationError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed & 0xFFFFFFFFFFFFFFFF))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        return path_graph(n)
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    return Graph(n, [(0, i) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def prufer_tree_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Uniform labeled tree on ``n`` vertices by decoding a random Prüfer sequence."""
    if n <= 2:
        return [(0, 1)] if n == 2 else []
    code = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in code:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    return Graph(n, prufer_tree_edges(n, rng))


def random_connected(n: int, rng: np.random.Generator, extra: Optional[float] = None) -> Graph:
    """A uniform random spanning tree plus each remaining pair with probability ``extra``."""
    if extra is None:
        extra = min(1.0, 2.0 / max(n, 1))
    edges = {tuple(sorted(e)) for e in prufer_tree_edges(n, rng)}
    coins = rng.random(n * (n - 1) // 2)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if coins[k] < extra:
                edges.add((i, j))
            k += 1
    return Graph(n, sorted(edges))


def make_graph(family: str, n: int, rng: np.random.Generator) -> Graph:
    if n < 2:
        raise ValidationError("n must be at least 2")
    if family == "path":
        return path_graph(n)
    if family == "cycle":
        return cycle_graph(n)
    if family == "star":
        return star_graph(n)
    if family == "complete":
        return complete_graph(n)
    if family == "tree":
        return random_tree(n, rng)
    if family == "random-connected":
        return random_connected(n, rng)
    raise UnknownFamily(f"unknown graph family {family!r}; choose from {', '.join(FAMILIES)}")


def make_placement(kind: str, n: int, rng: np.random.Generator) -> TokenPlacement:
    """``random``, ``reversal``, ``rotation`` (token on v targets v+1), ``identity`` or ``cycle-K``."""
    if kind == "random":
        return TokenPlacement(rng.permutation(n).tolist())
    if kind == "reversal":
        return TokenPlacement(range(n - 1, -1, -1))
    if kind == "rotation":
        return TokenPlacement((v + 1) % n for v in range(n))
    if kind == "identity":
        return TokenPlacement.identity(n)
    if kind.startswith("cycle-"):
        try:
            k = int(kind[6:])
        except ValueError:
            raise ValidationError(f"bad cycle length in {kind!r}") from None
        if not 1 <= k <= n:
            raise ValidationError(f"cycle length {k} outside 1..{n}")
        members = sorted(rng.choice(n, size=k, replace=False).tolist())
        perm = list(range(n))
        for a, b in zip(members, members[1:] + members[:1]):
            perm[a] = b
        return TokenPlacement(perm)
    raise ValidationError(f"unknown permutation kind {kind!r}")


def generate(family: str, n: int, seed: int, perm_kind: str = "random") -> Instance:
    rng = make_rng(seed)
    graph_rng, perm_rng = (np.random.default_rng(s) for s in rng.bit_generator.seed_seq.spawn(2))
    graph = make_graph(family, n, graph_rng)
    return Instance(graph, make_placement(perm_kind, n, perm_rng))
