"""Approximation algorithms: happy swap chains / unhappy swaps, and cycle decomposition.

Desire digraph F: arc ``v -> w`` whenever ``{v, w}`` is an edge and the token
on ``v`` gets one step closer to its target by crossing it. The arcs leaving
``v`` depend only on the token sitting on ``v``, which lets the solver keep
its walk across steps instead of rebuilding F; the walk it produces is the
same one a fresh rebuild would produce.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence, Union

from .bounds import MatrixDistances, distance_oracle
from .core import Graph, SolveResult, TokenPlacement
from .errors import NoStepFound, ProgressStall

HAPPY = "h"
UNHAPPY = "u"


@dataclass(frozen=True)
class DesireDigraph:
    out: tuple[tuple[int, ...], ...]

    @property
    def arcs(self) -> set[tuple[int, int]]:
        return {(v, w) for v, ws in enumerate(self.out) for w in ws}

    def out_degree(self, v: int) -> int:
        return len(self.out[v])


@dataclass(frozen=True)
class HappyChain:
    """A directed cycle of F, listed in arc order: ``cycle[i] -> cycle[i+1]``."""

    cycle: tuple[int, ...]

    def swaps(self) -> list[tuple[int, int]]:
        return chain_swaps(self.cycle)


@dataclass(frozen=True)
class UnhappySwap:
    """Swap ``(u, s)``: the token on ``s`` is home, the token on ``u`` wants ``s``."""

    u: int
    s: int


Step = Union[HappyChain, UnhappySwap]


def _oracle(graph: Graph, distances):
    if distances is None:
        return distance_oracle(graph)
    if hasattr(distances, "next_hops"):
        return distances
    return MatrixDistances(graph, distances)


def build_desire_digraph(graph: Graph, placement: Sequence[int], distances=None) -> DesireDigraph:
    oracle = _oracle(graph, distances)
    return DesireDigraph(tuple(tuple(oracle.next_hops(v, t)) for v, t in enumerate(placement)))


def chain_swaps(cycle: Sequence[int]) -> list[tuple[int, int]]:
    """Swaps that rotate every token one arc forward along ``cycle``.

    For ``w1 -> w2 -> ... -> wk -> w1`` this is ``(wk, wk-1), ..., (w2, w1)``:
    the token on ``wk`` rides all the way to ``w1`` and every other token
    steps forward once, ``k - 1`` swaps in total.
    """
    return [(cycle[j], cycle[j - 1]) for j in range(len(cycle) - 1, 0, -1)]


def find_step(graph: Graph, placement: Sequence[int], F: DesireDigraph) -> Step:
    """Walk F from the lowest misplaced vertex, always taking the lowest out-neighbor."""
    start = next((v for v, t in enumerate(placement) if t != v), None)
    if start is None:
        raise NoStepFound("placement is already sorted")
    walk = [start]
    seen = {start: 0}
    while True:
        v = walk[-1]
        if not F.out[v]:
            if len(walk) < 2:
                raise NoStepFound(f"misplaced vertex {v} has no desire arc")
            return UnhappySwap(walk[-2], v)
        w = F.out[v][0]
        if w in seen:
            return HappyChain(tuple(walk[seen[w]:]))
        seen[w] = len(walk)
        walk.append(w)


def solve_happy(graph: Graph, placement: Sequence[int], distances=None) -> SolveResult:
    """Repeat happy chains / unhappy swaps until sorted.

    The trace holds one ``(kind, step_id)`` per swap, ``kind`` being
    ``"h"`` or ``"u"``; swaps of one chain share a ``step_id``.
    """
    oracle = _oracle(graph, distances)
    tok = list(TokenPlacement(placement))
    n = len(tok)
    L = sum(oracle.dist(v, t) for v, t in enumerate(tok))
    limit = 2 * L
    seq: list[tuple[int, int]] = []
    trace: list[tuple[str, int]] = []
    heap = [v for v in range(n) if tok[v] != v]
    heapq.heapify(heap)
    walk: list[int] = []
    where = [-1] * n  # index of v in walk, or -1
    first_hop = oracle.next_hops
    steps = chains = unhappy = 0

    def truncate(i: int) -> None:
        for x in walk[i:]:
            where[x] = -1
        del walk[i:]

    while True:
        while heap and tok[heap[0]] == heap[0]:
            heapq.heappop(heap)
        if not heap:
            break
        start = heap[0]
        if not walk or walk[0] != start:
            truncate(0)
            walk.append(start)
            where[start] = 0
        while True:
            v = walk[-1]
            hops = first_hop(v, tok[v])
            if not hops:
                if len(walk) < 2:
                    raise NoStepFound(f"misplaced vertex {v} has no desire arc")
                u = walk[-2]
                seq.append((u, v))
                trace.append((UNHAPPY, steps))
                tok[u], tok[v] = tok[v], tok[u]
                heapq.heappush(heap, u)
                truncate(len(walk) - 2)
                unhappy += 1
                break
            w = hops[0]
            i = where[w]
            if i >= 0:
                cycle = walk[i:]
                k = len(cycle)
                carried = tok[cycle[-1]]
                for j in range(k - 1, 0, -1):
                    seq.append((cycle[j], cycle[j - 1]))
                    trace.append((HAPPY, steps))
                    tok[cycle[j]] = tok[cycle[j - 1]]
                tok[cycle[0]] = carried
                L -= k
                truncate(i)
                chains += 1
                break
            where[w] = len(walk)
            walk.append(w)
        steps += 1
        if len(seq) >= limit and L > 0:
            raise ProgressStall(f"{len(seq)} swaps used, displacement still {L}")
    stats = {"chains": chains, "unhappy": unhappy, "happy": len(seq) - unhappy, "initial_L": limit // 2}
    return SolveResult(seq, trace=trace, stats=stats)


def _shortest_path(oracle, a: int, b: int) -> list[int]:
    path = [a]
    while path[-1] != b:
        path.append(oracle.next_hops(path[-1], b)[0])
    return path


def exchange_swaps(oracle, a: int, b: int) -> list[tuple[int, int]]:
    """``2d - 1`` swaps exchanging the tokens on ``a`` and ``b``; every other token is left in place."""
    path = _shortest_path(oracle, a, b)
    forward = [(path[i], path[i + 1]) for i in range(len(path) - 1)]
    back = [(path[i], path[i - 1]) for i in range(len(path) - 2, 0, -1)]
    return forward + back


def solve_cycle_decomposition(graph: Graph, placement: Sequence[int], distances=None) -> SolveResult:
    """Resolve each permutation cycle by exchanging its smallest token with the others in turn.

    For a cycle ``i1 -> i2 -> ... -> ik`` (vertex ``i_j`` holds ``T_{i_{j+1}}``),
    token ``T_{i1}`` is exchanged with ``T_{ik}``, then ``T_{i(k-1)}``, ...,
    finally ``T_{i2}``; each exchange sends one token home.
    """
    oracle = _oracle(graph, distances)
    tok = TokenPlacement(placement)
    seq: list[tuple[int, int]] = []
    trace: list[tuple[str, int]] = []
    for cid, cycle in enumerate(tok.cycles()):
        k = len(cycle)
        for j in range(k - 1, 0, -1):
            # T_{i1} currently sits on cycle[j]; T_{cycle[j]} sits on cycle[j-1].
            swaps = exchange_swaps(oracle, cycle[j], cycle[j - 1])
            seq.extend(swaps)
            trace.extend(("x", cid) for _ in swaps)
    return SolveResult(seq, trace=trace, stats={"cycles": len(tok.cycles())})


@dataclass
class TraceAudit:
    """Per-step checks on a happy-solver run; every ``*_violations`` field should be zero."""

    chain_violations: int = 0
    unhappy_violations: int = 0
    displaced_violations: int = 0
    mover_repeats: int = 0
    chains: int = 0
    unhappy: int = 0
    happy: int = 0


def audit_trace(graph: Graph, placement: Sequence[int], result: SolveResult, distances=None) -> TraceAudit:
    """Replay ``result`` and check the step-level displacement facts.

    * a chain of ``l`` swaps lowers the total displacement by exactly ``l + 1``;
    * an unhappy swap leaves it unchanged;
    * the token knocked off its home by an unhappy swap next moves in a happy swap.

    ``mover_repeats`` counts tokens whose two consecutive swaps were both
    unhappy as the approaching token; that is allowed and only reported.
    """
    oracle = _oracle(graph, distances)
    tok = list(placement)
    audit = TraceAudit()

    def disp():
        return sum(oracle.dist(v, t) for v, t in enumerate(tok))

    last_kind: dict[int, str] = {}
    pending_displaced: set[int] = set()
    groups: list[tuple[str, list[tuple[int, int]]]] = []
    for (u, v), (kind, sid) in zip(result.sequence, result.trace):
        if groups and groups[-1][0] == kind and kind == HAPPY and groups[-1][2] == sid:
            groups[-1][1].append((u, v))
        else:
            groups.append((kind, [(u, v)], sid))
    for kind, swaps, _ in groups:
        before = disp()
        for u, v in swaps:
            a, b = tok[u], tok[v]
            for t in (a, b):
                if t in pending_displaced:
                    pending_displaced.discard(t)
                    if kind != HAPPY:
                        audit.displaced_violations += 1
            if kind == UNHAPPY:
                if b == v:
                    home, mover = b, a
                elif a == u:
                    home, mover = a, b
                else:
                    audit.unhappy_violations += 1
                    tok[u], tok[v] = b, a
                    continue
                if last_kind.get(mover) == UNHAPPY:
                    audit.mover_repeats += 1
                last_kind[mover] = UNHAPPY
                last_kind[home] = UNHAPPY
                pending_displaced.add(home)
            else:
                last_kind[a] = last_kind[b] = HAPPY
            tok[u], tok[v] = b, a
        delta = before - disp()
        if kind == HAPPY:
            audit.chains += 1
            audit.happy += len(swaps)
            if delta != len(swaps) + 1:
                audit.chain_violations += 1
        else:
            audit.unhappy += 1
            if delta != 0:
                audit.unhappy_violations += 1
    return audit
