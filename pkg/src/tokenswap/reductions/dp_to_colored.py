"""Layered disjoint paths -> structured colored token swapping.

The graph is the DAG with arc directions forgotten. Each source gets a
token of its own color whose only matching vertex is its paired sink.
Every non-sink vertex is painted with the color of its layer, and every
non-source vertex starts with a filler token painted like the layer its
incoming arcs come from. A solution with ``|V| - k`` swaps exists iff the
DAG has covering disjoint paths: each filler must move at least once, so at
that budget each moves exactly once, one layer up.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..core import ColoredInstance, Graph, TokenPlacement
from ..errors import UnbalancedLayers
from .dp import MAX_LAYER, LayeredDag

PROPERTIES = (
    "1-layer-size",
    "2-orientation",
    "3-source-targets",
    "4-layer-colors",
    "5-single-in-layer",
)


@dataclass(frozen=True)
class StructuredColoredInstance:
    colored: ColoredInstance
    layers: tuple[tuple[int, ...], ...]
    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    phi: dict
    threshold: int

    @property
    def graph(self) -> Graph:
        return self.colored.graph

    @property
    def layer_of(self) -> list[int]:
        out = [0] * self.graph.n
        for i, layer in enumerate(self.layers):
            for v in layer:
                out[v] = i
        return out

    def source_color(self, s: int) -> int:
        return self.colored.token_colors[self.colored.placement[s]]


def layer_balance(dag: LayeredDag) -> dict[int, tuple[int, int]]:
    """Layers whose non-sink count differs from the number of vertices fed from them.

    Maps layer index -> (non-sinks, fed vertices). In a path cover every
    non-sink has exactly one path successor and every non-source exactly one
    path predecessor, so any entry here rules a cover out.
    """
    sinks = set(dag.sinks)
    out = {}
    for i, layer in enumerate(dag.layers):
        nonsinks = sum(1 for v in layer if v not in sinks)
        fed = sum(1 for v in range(dag.n) if dag.pred[v] and dag.in_layer(v) == i)
        if nonsinks != fed:
            out[i] = (nonsinks, fed)
    return out


def dp_to_colored(dag: LayeredDag) -> StructuredColoredInstance:
    """Colored instance with threshold ``|V| - k``; token ``i`` starts on vertex ``i``.

    Raises :class:`UnbalancedLayers` when the color classes cannot match,
    which already proves that ``dag`` has no path cover.
    """
    bad = layer_balance(dag)
    if bad:
        i, (a, b) = next(iter(bad.items()))
        raise UnbalancedLayers(f"layer {i + 1} has {a} non-sink vertices but feeds {b}")
    n = dag.n
    t = len(dag.layers)
    sources = dag.sources
    sinks = set(dag.sinks)
    unique = {s: t + idx for idx, s in enumerate(sources)}
    owner = {dag.phi[s]: s for s in sources}
    vertex_colors = [0] * n
    token_colors = [0] * n
    for v in range(n):
        vertex_colors[v] = unique[owner[v]] if v in sinks else dag.layer_of[v]
        token_colors[v] = unique[v] if v in unique else dag.in_layer(v)
    edges = [(u, v) for u, v in dag.arcs]
    colored = ColoredInstance(
        Graph(n, edges, require_connected=False),
        tuple(token_colors),
        tuple(vertex_colors),
        TokenPlacement.identity(n),
    )
    return StructuredColoredInstance(
        colored,
        tuple(tuple(layer) for layer in dag.layers),
        tuple(sources),
        tuple(sorted(sinks)),
        dict(dag.phi),
        n - len(sources),
    )


def check_structured(inst: StructuredColoredInstance) -> list[str]:
    """Names of the violated structural properties (see ``PROPERTIES``); empty when all hold."""
    g = inst.graph
    n = g.n
    layer_of = inst.layer_of
    col = inst.colored
    out = []
    if any(len(layer) > MAX_LAYER for layer in inst.layers) or sorted(v for l in inst.layers for v in l) != list(range(n)):
        out.append(PROPERTIES[0])
    if any(layer_of[u] == layer_of[v] for u, v in g.edges):
        out.append(PROPERTIES[1])
    # orient every edge toward the larger layer; sources/sinks follow from that
    lower = [[] for _ in range(n)]
    upper = [[] for _ in range(n)]
    for u, v in g.edges:
        a, b = (u, v) if layer_of[u] < layer_of[v] else (v, u)
        upper[a].append(b)
        lower[b].append(a)
    srcs = tuple(v for v in range(n) if not lower[v])
    snks = tuple(v for v in range(n) if not upper[v])
    ok3 = (
        srcs == tuple(inst.sources)
        and snks == tuple(inst.sinks)
        and sorted(inst.phi) == list(srcs)
        and sorted(inst.phi.values()) == list(snks)
    )
    if ok3:
        for s, target in inst.phi.items():
            c = col.token_colors[col.placement[s]]
            matches = [w for w in range(n) if col.vertex_colors[w] == c]
            if matches != [target]:
                ok3 = False
                break
    if not ok3:
        out.append(PROPERTIES[2])
    sink_set = set(snks)
    for layer in inst.layers:
        colors = {col.vertex_colors[v] for v in layer if v not in sink_set}
        if len(colors) > 1:
            out.append(PROPERTIES[3])
            break
    for v in range(n):
        if lower[v] and len({layer_of[u] for u in lower[v]}) > 1:
            out.append(PROPERTIES[4])
            break
    return out


def colored_solution_from_paths(inst: StructuredColoredInstance, paths: dict) -> list[tuple[int, int]]:
    """Swap every source token down its path; each filler moves up exactly once."""
    seq = []
    for s in sorted(paths):
        path = paths[s]
        seq.extend((path[i], path[i + 1]) for i in range(len(path) - 1))
    return seq


def colored_instance_dag(inst: StructuredColoredInstance) -> Optional[LayeredDag]:
    """Recover the layered DAG (edges oriented toward larger layers)."""
    layer_of = inst.layer_of
    arcs = [(u, v) if layer_of[u] < layer_of[v] else (v, u) for u, v in inst.graph.edges]
    return LayeredDag([list(l) for l in inst.layers], arcs, dict(inst.phi))


def filler_tokens(inst: StructuredColoredInstance) -> list[int]:
    return [inst.colored.placement[v] for v in range(inst.graph.n) if v not in set(inst.sources)]


def moves_per_token(n: int, start: Sequence[int], seq: Sequence[tuple[int, int]]) -> list[int]:
    """How many swaps each token takes part in."""
    tok = list(start)
    moves = [0] * n
    for u, v in seq:
        moves[tok[u]] += 1
        moves[tok[v]] += 1
        tok[u], tok[v] = tok[v], tok[u]
    return moves
