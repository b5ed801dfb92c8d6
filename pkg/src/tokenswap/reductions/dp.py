"""Layered DAGs with a source -> sink pairing, and a backtracking disjoint-paths oracle."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import OracleBudgetExceeded, ParseError, ValidationError

MAX_LAYER = 10


@dataclass
class LayeredDag:
    """Vertices ``0..N-1`` split into layers; arcs point from earlier to later layers.

    ``phi`` pairs every source (no incoming arc) with a sink (no outgoing arc).
    ``labels`` are optional human-readable vertex names.
    """

    layers: list[list[int]]
    arcs: list[tuple[int, int]]
    phi: dict[int, int]
    labels: Optional[list[str]] = None
    gadgets: Optional[dict] = field(default=None, repr=False, compare=False)
    succ: list[list[int]] = field(init=False, repr=False)
    pred: list[list[int]] = field(init=False, repr=False)
    layer_of: list[int] = field(init=False, repr=False)

    def __post_init__(self):
        n = sum(len(layer) for layer in self.layers)
        self.layer_of = [-1] * n
        for i, layer in enumerate(self.layers):
            for v in layer:
                if not 0 <= v < n or self.layer_of[v] != -1:
                    raise ValidationError(f"vertex {v} is out of range or in two layers")
                self.layer_of[v] = i
        self.arcs = sorted(set(map(tuple, self.arcs)))
        self.succ = [[] for _ in range(n)]
        self.pred = [[] for _ in range(n)]
        for u, v in self.arcs:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValidationError(f"bad arc ({u}, {v})")
            self.succ[u].append(v)
            self.pred[v].append(u)
        if self.labels is not None and len(self.labels) != n:
            raise ValidationError("one label per vertex expected")

    @property
    def n(self) -> int:
        return len(self.layer_of)

    @property
    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.pred[v]]

    @property
    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.succ[v]]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v + 1)

    def in_layer(self, v: int) -> Optional[int]:
        """The single layer all incoming arcs of ``v`` come from (``None`` for sources)."""
        layers = {self.layer_of[u] for u in self.pred[v]}
        if not layers:
            return None
        if len(layers) > 1:
            raise ValidationError(f"vertex {self.label(v)} has arcs from several layers")
        return layers.pop()

    def topological_order(self) -> list[int]:
        return [v for layer in self.layers for v in layer]

    def path_vertex_count(self, s: int) -> Optional[int]:
        """Vertices on a shortest directed path from ``s`` to ``phi(s)``; ``None`` if unreachable."""
        goal = self.phi[s]
        seen = {s: 1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == goal:
                return seen[u]
            for w in self.succ[u]:
                if w not in seen:
                    seen[w] = seen[u] + 1
                    queue.append(w)
        return None

    def n_values(self) -> dict[int, Optional[int]]:
        return {s: self.path_vertex_count(s) for s in self.sources}

    def violations(self) -> list[str]:
        """Names of the violated structural properties; empty when the DAG is a valid DP input."""
        out = []
        srcs, snks = self.sources, self.sinks
        if sorted(self.phi) != srcs or sorted(self.phi.values()) != snks:
            out.append("phi: not a bijection from sources onto sinks")
        for v in range(self.n):
            layers = {self.layer_of[u] for u in self.pred[v]}
            if len(layers) > 1 or any(i >= self.layer_of[v] for i in layers):
                out.append(f"layers: incoming arcs of {self.label(v)} are not from one earlier layer")
                break
        if any(len(layer) > MAX_LAYER for layer in self.layers):
            out.append(f"layer-size: a layer has more than {MAX_LAYER} vertices")
        if "phi: not a bijection from sources onto sinks" in out:
            return out
        counts = self.n_values()
        if any(c is None for c in counts.values()):
            out.append("reachability: some source cannot reach its sink")
        elif sum(counts.values()) != self.n:
            out.append(f"packing: sum of n(v) is {sum(counts.values())}, |V| is {self.n}")
        return out


def emit_dp(dag: LayeredDag) -> str:
    lines = [f"dp {dag.n} {len(dag.layers)}"]
    for i, layer in enumerate(dag.layers, 1):
        lines.append(f"layer {i}: " + " ".join(str(v + 1) for v in layer))
    lines += [f"arc {u + 1} {v + 1}" for u, v in dag.arcs]
    lines += [f"phi {s + 1} {t + 1}" for s, t in sorted(dag.phi.items())]
    if dag.labels:
        lines += [f"name {v + 1} {name}" for v, name in enumerate(dag.labels)]
    return "\n".join(lines) + "\n"


def parse_dp(text: str) -> LayeredDag:
    layers: list[list[int]] = []
    arcs, phi, names = [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "dp":
                continue
            if head == "layer":
                _, _, members = rest.partition(":")
                layers.append([int(x) - 1 for x in members.split()])
            elif head == "arc":
                u, v = map(int, rest.split())
                arcs.append((u - 1, v - 1))
            elif head == "phi":
                s, t = map(int, rest.split())
                phi[s - 1] = t - 1
            elif head == "name":
                v, name = rest.split(None, 1)
                names[int(v) - 1] = name
            else:
                raise ParseError(lineno, f"unknown record {head!r}")
        except ValueError:
            raise ParseError(lineno, "malformed record") from None
    n = sum(map(len, layers))
    labels = [names.get(v, str(v + 1)) for v in range(n)] if names else None
    return LayeredDag(layers, arcs, phi, labels)


def dp_solve(dag: LayeredDag, node_budget: int = 2_000_000) -> Optional[dict[int, list[int]]]:
    """Vertex-disjoint paths ``s -> phi(s)`` for every source that together cover every vertex.

    Backtracking always extends the incomplete path with the smallest source.
    A branch is cut when, among the still-unused vertices, some path end can
    no longer reach its sink or some vertex can no longer be reached by any
    path end. Returns ``{source: path}`` or ``None``.
    """
    n = dag.n
    succ = dag.succ
    order = dag.topological_order()
    sources = dag.sources
    phi = dag.phi
    ends = {s: s for s in sources}
    paths = {s: [s] for s in sources}
    free = (1 << n) - 1
    for s in sources:
        free &= ~(1 << s)
    nodes = 0

    def feasible(free: int) -> bool:
        reach = [0] * n
        for v in reversed(order):
            if free >> v & 1:
                r = 1 << v
                for w in succ[v]:
                    r |= reach[w]
                reach[v] = r
        covered = 0
        for s, e in ends.items():
            if e == phi[s]:
                continue
            r = 0
            for w in succ[e]:
                r |= reach[w]
            if not r >> phi[s] & 1:
                return False
            covered |= r
        return covered & free == free

    def search(free: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise OracleBudgetExceeded(nodes)
        open_paths = [s for s in sources if ends[s] != phi[s]]
        if not open_paths:
            return free == 0
        s = open_paths[0]
        e = ends[s]
        for w in succ[e]:
            if not free >> w & 1:
                continue
            nfree = free & ~(1 << w)
            ends[s] = w
            paths[s].append(w)
            if feasible(nfree) and search(nfree):
                return True
            paths[s].pop()
            ends[s] = e
        return False

    if sorted(phi) != sources:
        raise ValidationError("phi must be defined exactly on the sources")
    if feasible(free) and search(free):
        return {s: list(p) for s, p in paths.items()}
    return None


def check_paths(dag: LayeredDag, paths: dict[int, Sequence[int]]) -> bool:
    """True iff ``paths`` are arc-respecting, vertex-disjoint, end at ``phi`` and cover every vertex."""
    seen = set()
    arcs = set(dag.arcs)
    if sorted(paths) != dag.sources:
        return False
    for s, path in paths.items():
        if not path or path[0] != s or path[-1] != dag.phi[s]:
            return False
        if any((u, v) not in arcs for u, v in zip(path, path[1:])):
            return False
        seen.update(path)
    return len(seen) == dag.n == sum(len(p) for p in paths.values())
