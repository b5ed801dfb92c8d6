"""Structured colored token swapping -> plain token swapping.

The graph is doubled, and for every layer the non-sink vertices of both
copies become the inputs of one even permutation network. Fillers of that
layer's color are re-targeted to the network outputs: copy one's fillers,
ranked by starting vertex, go to outputs ``0..m-1``, copy two's to
``m..2m-1``. Whatever arrangement a colored solution leaves on the layer,
both copies leave the same one, so the network sees an even permutation
and routes it in exactly ``T`` swaps.

In the produced instance a token's id is its target vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..core import Graph, TokenPlacement, apply_swaps
from ..errors import LayerTooLarge, ValidationError
from .dp_to_colored import StructuredColoredInstance
from .network import PermutationNetwork, build_permutation_network, route_network

MAX_NETWORK_INPUTS = 20


@dataclass
class AttachedNetwork:
    layer: int
    network: PermutationNetwork
    vertex: list[int]  # network vertex -> vertex of the big graph

    @property
    def inputs(self) -> list[int]:
        return [self.vertex[v] for v in self.network.inputs]

    @property
    def outputs(self) -> list[int]:
        return [self.vertex[v] for v in self.network.outputs]


@dataclass
class UncoloredReduction:
    graph: Graph
    placement: TokenPlacement
    threshold: int
    colored_threshold: int
    base_n: int
    networks: list[AttachedNetwork]

    def copy_vertex(self, copy: int, v: int) -> int:
        return v + copy * self.base_n

    @property
    def network_swaps(self) -> int:
        return sum(a.network.T for a in self.networks)


@lru_cache(maxsize=None)
def _network(n: int) -> PermutationNetwork:
    return build_permutation_network(n)


def _layer_colors(inst: StructuredColoredInstance) -> dict[int, int]:
    """Color -> layer, for the non-sink part of every layer."""
    sinks = set(inst.sinks)
    out: dict[int, int] = {}
    for j, layer in enumerate(inst.layers):
        colors = {inst.colored.vertex_colors[v] for v in layer if v not in sinks}
        if not colors:
            continue
        if len(colors) > 1:
            raise ValidationError(f"layer {j + 1} mixes colors on its non-sink vertices")
        c = colors.pop()
        if c in out:
            raise ValidationError(f"color {c} is used by two layers")
        out[c] = j
    return out


def structured_to_uncolored(inst: StructuredColoredInstance) -> UncoloredReduction:
    g = inst.graph
    n = g.n
    col = inst.colored
    sinks = set(inst.sinks)
    sources = set(inst.sources)
    layer_of_color = _layer_colors(inst)
    edges = [(u, v) for u, v in g.edges] + [(u + n, v + n) for u, v in g.edges]
    target: dict[int, int] = {}
    total = 2 * n
    attached: list[AttachedNetwork] = []
    outputs_of_layer: dict[int, list[int]] = {}
    for j, layer in enumerate(inst.layers):
        members = sorted(v for v in layer if v not in sinks)
        if not members:
            continue
        k_in = 2 * len(members)
        if k_in > MAX_NETWORK_INPUTS:
            raise LayerTooLarge(f"layer {j + 1} needs a {k_in}-input network (limit {MAX_NETWORK_INPUTS})")
        net = _network(k_in)
        ins = members + [v + n for v in members]
        vmap = [-1] * net.graph.n
        for i, v in enumerate(net.inputs):
            vmap[v] = ins[i]
        for v in range(net.graph.n):
            if vmap[v] < 0:
                vmap[v] = total
                total += 1
        edges.extend((vmap[u], vmap[v]) for u, v in net.graph.edges)
        for s, t in net.targets.items():
            target[vmap[s]] = vmap[t]
        a = AttachedNetwork(j, net, vmap)
        attached.append(a)
        outputs_of_layer[j] = a.outputs
    rank: dict[int, int] = {}
    for v in range(n):
        if v in sources:
            continue
        c = col.token_colors[col.placement[v]]
        if c not in layer_of_color:
            raise ValidationError(f"token on vertex {v + 1} has no layer color")
        j = layer_of_color[c]
        rho = rank.get(j, 0)
        rank[j] = rho + 1
        outs = outputs_of_layer[j]
        m = len(outs) // 2
        target[v] = outs[rho]
        target[v + n] = outs[m + rho]
    for s in sources:
        target[s] = inst.phi[s]
        target[s + n] = inst.phi[s] + n
    placement = TokenPlacement(target[v] for v in range(total))
    graph = Graph(total, edges)
    threshold = 2 * inst.threshold + sum(a.network.T for a in attached)
    return UncoloredReduction(graph, placement, threshold, inst.threshold, n, attached)


def uncolored_solution(red: UncoloredReduction, colored_seq: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Lift a colored solution: run it in both copies, then route every network."""
    n = red.base_n
    seq = [(u, v) for u, v in colored_seq] + [(u + n, v + n) for u, v in colored_seq]
    mid = apply_swaps(red.graph, red.placement, seq)
    for a in red.networks:
        out_index = {v: i for i, v in enumerate(a.outputs)}
        perm = [out_index[mid[v]] for v in a.inputs]
        seq.extend((a.vertex[u], a.vertex[v]) for u, v in route_network(a.network, perm))
    return seq


def vertex_count_identity(red: UncoloredReduction) -> bool:
    """``|V| = 2|V(G)| + sum of network sizes without inputs``."""
    return red.graph.n == 2 * red.base_n + sum(a.network.size_without_inputs for a in red.networks)
