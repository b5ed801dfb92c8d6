"""Graphs, token placements, swap semantics, verification and instance I/O.

Vertices and tokens are 0-indexed in memory. The text formats are
1-indexed; :func:`parse_instance` and :func:`emit_instance` are the only
places that translate between the two.

Instance file grammar (``#`` starts a comment)::

    p tsw <n> <m>
    e <u> <v>              (m lines)
    t <t_1> ... <t_n>      (token sitting on vertex i)
    cv <d_1> ... <d_n>     (optional, vertex colors)
    ct <c_1> ... <c_n>     (optional, token colors; both or neither)
    k <threshold>          (optional, swap budget attached by reductions)

Swap-sequence file: one ``s <u> <v>`` per swap and a final ``k <count>``.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    ColorMultisetMismatch,
    DisconnectedGraph,
    InvalidPermutation,
    NonEdgeSwap,
    ParseError,
    ValidationError,
)

Swap = tuple[int, int]
SwapSequence = list[Swap]


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Adjacency lists are sorted; ``edges`` is the sorted list of ``(u, v)``
    pairs with ``u < v``. Instances are treated as immutable.
    """

    __slots__ = ("n", "edges", "adj", "_edge_index")

    def __init__(self, n: int, edges: Iterable[Sequence[int]], require_connected: bool = True):
        if n < 1:
            raise ValidationError(f"vertex count must be positive, got {n}")
        normalized = []
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) out of range for n={n}")
            normalized.append((u, v) if u < v else (v, u))
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ValidationError(f"duplicate edge {a}")
        self.n = n
        self.edges: tuple[Swap, ...] = tuple(normalized)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._edge_index = {e: i for i, e in enumerate(normalized)}
        if require_connected and not self.is_connected():
            raise DisconnectedGraph(f"graph with {n} vertices is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            return False
        nbrs = self.adj[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edge_index(self, u: int, v: int) -> int:
        return self._edge_index[(u, v) if u < v else (v, u)]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def is_connected(self) -> bool:
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    queue.append(w)
        return count == self.n

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def is_path(self) -> bool:
        """True iff this is the canonical path 0-1-...-(n-1)."""
        return self.edges == tuple((i, i + 1) for i in range(self.n - 1))

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class TokenPlacement(tuple):
    """Entry ``v`` is the token currently sitting on vertex ``v``.

    The goal configuration is the identity: token ``i`` on vertex ``i``.
    """

    def __new__(cls, tokens: Iterable[int]):
        obj = super().__new__(cls, (int(t) for t in tokens))
        n = len(obj)
        if sorted(obj) != list(range(n)):
            raise InvalidPermutation(f"placement {list(obj)} is not a permutation of 0..{n - 1}")
        return obj

    @classmethod
    def identity(cls, n: int) -> "TokenPlacement":
        return cls(range(n))

    def is_identity(self) -> bool:
        return all(t == v for v, t in enumerate(self))

    def positions(self) -> list[int]:
        """Inverse map: ``positions()[t]`` is the vertex holding token ``t``."""
        pos = [0] * len(self)
        for v, t in enumerate(self):
            pos[t] = v
        return pos

    def cycles(self) -> list[list[int]]:
        """Cycles of the vertex -> token map, each starting at its smallest member."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            v = start
            while not seen[v]:
                seen[v] = True
                cyc.append(v)
                v = self[v]
            out.append(cyc)
        return out

    def parity(self) -> int:
        """0 for an even permutation, 1 for an odd one."""
        return (len(self) - len(self.cycles())) % 2


def permutation_parity(perm: Sequence[int]) -> int:
    """Parity (0 even, 1 odd) of a permutation of ``0..n-1`` given in one-line form."""
    n = len(perm)
    seen = [False] * n
    cycles = 0
    for s in range(n):
        if not seen[s]:
            cycles += 1
            v = s
            while not seen[v]:
                seen[v] = True
                v = perm[v]
    return (n - cycles) % 2


@dataclass(frozen=True)
class ColoredInstance:
    graph: Graph
    token_colors: tuple[int, ...]
    vertex_colors: tuple[int, ...]
    placement: TokenPlacement

    def __post_init__(self):
        n = self.graph.n
        object.__setattr__(self, "token_colors", tuple(self.token_colors))
        object.__setattr__(self, "vertex_colors", tuple(self.vertex_colors))
        if not isinstance(self.placement, TokenPlacement):
            object.__setattr__(self, "placement", TokenPlacement(self.placement))
        if len(self.token_colors) != n or len(self.vertex_colors) != n or len(self.placement) != n:
            raise ValidationError("color arrays and placement must all have length n")
        if Counter(self.token_colors) != Counter(self.vertex_colors):
            raise ColorMultisetMismatch("token and vertex color multisets differ")

    def colors_on_vertices(self) -> tuple[int, ...]:
        """Color of the token currently on each vertex."""
        return tuple(self.token_colors[t] for t in self.placement)


@dataclass
class SolveResult:
    sequence: SwapSequence
    trace: Optional[list[str]] = None
    stats: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.sequence)


@dataclass
class Instance:
    """Everything an instance file can carry."""

    graph: Graph
    placement: TokenPlacement
    token_colors: Optional[tuple[int, ...]] = None
    vertex_colors: Optional[tuple[int, ...]] = None
    threshold: Optional[int] = None

    @property
    def is_colored(self) -> bool:
        return self.token_colors is not None

    def colored(self) -> ColoredInstance:
        if not self.is_colored:
            raise ValidationError("instance carries no colors")
        return ColoredInstance(self.graph, self.token_colors, self.vertex_colors, self.placement)


def apply_swaps(graph: Graph, start: Sequence[int], seq: Iterable[Sequence[int]]) -> TokenPlacement:
    """Return the placement reached from ``start`` by exchanging along each edge in turn."""
    cur = list(start)
    for idx, (u, v) in enumerate(seq):
        if not graph.has_edge(u, v):
            raise NonEdgeSwap(idx, (u, v))
        cur[u], cur[v] = cur[v], cur[u]
    return TokenPlacement(cur)


def verify_solution(graph: Graph, start: Sequence[int], seq: Iterable[Sequence[int]]) -> bool:
    return apply_swaps(graph, start, seq).is_identity()


def verify_colored_solution(inst: ColoredInstance, seq: Iterable[Sequence[int]]) -> bool:
    final = apply_swaps(inst.graph, inst.placement, seq)
    return all(inst.token_colors[t] == inst.vertex_colors[v] for v, t in enumerate(final))


# --- text formats -----------------------------------------------------------


def _ints(fields, lineno, what):
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise ParseError(lineno, f"non-integer value in {what}") from None


def parse_instance(text: str) -> Instance:
    header = None
    edges: list[Swap] = []
    tokens = cv = ct = None
    threshold = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag, rest = parts[0], parts[1:]
        if header is None:
            if tag != "p" or len(rest) != 3 or rest[0] != "tsw":
                raise ParseError(lineno, "expected header 'p tsw <n> <m>'")
            n, m = _ints(rest[1:], lineno, "header")
            if n < 1 or m < 0:
                raise ParseError(lineno, "header counts out of range")
            header = (n, m)
            continue
        n, m = header
        if tag == "e":
            if len(rest) != 2:
                raise ParseError(lineno, "edge line needs two vertices")
            u, v = _ints(rest, lineno, "edge")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(lineno, f"edge endpoint out of range 1..{n}")
            edges.append((u - 1, v - 1))
        elif tag in ("t", "cv", "ct"):
            vals = _ints(rest, lineno, tag)
            if len(vals) != n:
                raise ParseError(lineno, f"'{tag}' line needs {n} values, got {len(vals)}")
            if tag == "t":
                if tokens is not None:
                    raise ParseError(lineno, "duplicate token line")
                tokens = [x - 1 for x in vals]
            elif tag == "cv":
                cv = tuple(vals)
            else:
                ct = tuple(vals)
        elif tag == "k":
            if len(rest) != 1:
                raise ParseError(lineno, "threshold line needs one nonnegative integer")
            (threshold,) = _ints(rest, lineno, "threshold")
            if threshold < 0:
                raise ParseError(lineno, "threshold line needs one nonnegative integer")
        else:
            raise ParseError(lineno, f"unknown line tag '{tag}'")
    if header is None:
        raise ParseError(0, "missing header")
    n, m = header
    if len(edges) != m:
        raise ParseError(0, f"header announces {m} edges, found {len(edges)}")
    if tokens is None:
        raise ParseError(0, "missing token line")
    if (cv is None) != (ct is None):
        raise ParseError(0, "'cv' and 'ct' must appear together")
    graph = Graph(n, edges)
    placement = TokenPlacement(tokens)
    inst = Instance(graph, placement, ct, cv, threshold)
    if inst.is_colored:
        inst.colored()  # multiset check
    return inst


def emit_instance(inst: Instance, comment: Optional[str] = None) -> str:
    g = inst.graph
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"p tsw {g.n} {g.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    out.append("t " + " ".join(str(t + 1) for t in inst.placement))
    if inst.is_colored:
        out.append("cv " + " ".join(map(str, inst.vertex_colors)))
        out.append("ct " + " ".join(map(str, inst.token_colors)))
    if inst.threshold is not None:
        out.append(f"k {inst.threshold}")
    return "\n".join(out) + "\n"


def parse_swaps(text: str) -> SwapSequence:
    seq: SwapSequence = []
    count = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if count is not None:
            raise ParseError(lineno, "content after the final 'k' line")
        if parts[0] == "s" and len(parts) == 3:
            u, v = _ints(parts[1:], lineno, "swap")
            if u < 1 or v < 1:
                raise ParseError(lineno, "vertices are 1-indexed")
            seq.append((u - 1, v - 1))
        elif parts[0] == "k" and len(parts) == 2:
            (count,) = _ints(parts[1:], lineno, "count")
        else:
            raise ParseError(lineno, "expected 's <u> <v>' or 'k <count>'")
    if count is None:
        raise ParseError(0, "missing final 'k <count>' line")
    if count != len(seq):
        raise ParseError(0, f"count line says {count}, found {len(seq)} swaps")
    return seq


def emit_swaps(seq: Iterable[Sequence[int]]) -> str:
    lines = [f"s {u + 1} {v + 1}" for u, v in seq]
    lines.append(f"k {len(lines)}")
    return "\n".join(lines) + "\n"
