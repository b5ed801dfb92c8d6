"""Even permutation networks built from swapping and shift gadgets.

Geometry: vertices sit on a grid of rows (layers) and columns. Edges are
either vertical between consecutive rows of one column, or horizontal
inside one row. A column is cut into segments; a segment can start below a
cut (the start vertex of an auxiliary token ``a``/``b``) and end above one
(that token's target).

Cost model: every live token (network input or auxiliary token) walks down
its segments once, so each vertical edge is used exactly once and every
filler token moves exactly one row up. The only freedom is which horizontal
edges get used, and the cost of a routing is ``#vertical + #horizontal``.

Swapping gadget over lane columns ``c1, c2, c3`` plus a fresh column ``c4``
(where ``a`` starts; ``a``'s target is the bottom of ``c3``). Five rows carry
one horizontal edge each::

    A: c1-c4   B: c1-c3   C: c2-c4   D: c1-c4   E: c1-c3

Outputs are ``(c4, c2, c1)``. Getting ``a`` from ``c4`` to ``c3`` takes at
least two horizontal edges (AB, AE or DE: identity); ABC transposes outputs
1 and 2, ABD transposes outputs 1 and 3, both at cost 3. Every other
outcome costs at least 4 (checked exhaustively by :func:`behavior_table`).

Shift gadget on lanes ``x1, x2, x3``: token ``b`` enters on a fresh lane
``L0``. Gadget one works on ``(L0, x1, x2)``, gadget two on
``(x3, out2, out3)`` of gadget one, and ``b``'s target is output 1 of gadget
two, so both gadgets must pay 3. Choosing (1 2) twice gives the right cyclic
shift ``(x3, x1, x2)``; (1 3) twice gives the identity.

Cascades of shift gadgets over windows ``(1,2,3), (1,2,3), (2,3,4), ...,
(p-2,p-1,p)`` can carry any token to position ``p``; running them for
``p = n, ..., 3`` realizes exactly the even permutations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from ..core import Graph, TokenPlacement, permutation_parity
from ..errors import OddPermutation, ValidationError

SWAP_CHOICES = {"id": "AB", "12": "ABC", "13": "ABD"}
EDGE_ROWS = {"A": 1, "B": 2, "C": 3, "D": 4, "E": 5}


@dataclass
class SwapGadget:
    row0: int  # the gadget's input row; horizontal edges live on rows row0+1 .. row0+5
    cols: tuple[int, int, int, int]  # c1, c2, c3, c4
    edges: dict[str, tuple[int, int]] = field(default_factory=dict)  # name -> (u, v) vertex ids

    @property
    def output_cols(self) -> tuple[int, int, int]:
        c1, c2, _, c4 = self.cols
        return (c4, c2, c1)


@dataclass
class ShiftGadget:
    window: tuple[int, int, int]  # 0-based logical positions
    first: SwapGadget
    second: SwapGadget


@dataclass
class PermutationNetwork:
    n: int
    graph: Graph
    rows: list[list[int]]
    cell: dict[tuple[int, int], int]  # (row, col) -> vertex
    inputs: list[int]
    outputs: list[int]
    targets: dict[int, int]  # start vertex -> target vertex, for every token not on an input
    down_edges: list[tuple[int, int]]  # (upper, lower)
    swap_gadgets: list[SwapGadget]
    shift_gadgets: list[ShiftGadget]
    cascades: list[list[int]]  # per target position p, indices into shift_gadgets
    T: int

    @property
    def inner(self) -> list[int]:
        ins = set(self.inputs) | set(self.outputs)
        return [v for v in range(self.graph.n) if v not in ins]

    @property
    def size_without_inputs(self) -> int:
        return self.graph.n - self.n

    def row_of(self) -> list[int]:
        out = [0] * self.graph.n
        for r, row in enumerate(self.rows):
            for v in row:
                out[v] = r
        return out

    def placement(self, perm: Sequence[int]) -> TokenPlacement:
        """Standalone instance: token ids are target vertices; input ``i`` targets ``outputs[perm[i]]``."""
        tok = [0] * self.graph.n
        for v, t in self.targets.items():
            tok[v] = t
        for i, v in enumerate(self.inputs):
            tok[v] = self.outputs[perm[i]]
        return TokenPlacement(tok)


class _Grid:
    def __init__(self, width: int):
        self.width = width
        self.cell: dict[tuple[int, int], int] = {}
        self.rows: list[list[int]] = []
        self.edges: list[tuple[int, int]] = []
        self.down: list[tuple[int, int]] = []
        self.last: dict[int, Optional[int]] = {}  # col -> vertex on the current row, if its segment continues
        self.starts: dict[int, int] = {}  # segment start vertex -> col
        self.ends: list[int] = []

    def add_row(self, active: Sequence[int], fresh: Sequence[int] = ()) -> int:
        """Create a row; ``active`` columns continue downward, ``fresh`` columns start a new segment here."""
        r = len(self.rows)
        row = []
        for c in sorted(set(active) | set(fresh)):
            v = len(self.cell)
            self.cell[(r, c)] = v
            row.append(v)
            if c in fresh:
                self.starts[v] = c
            else:
                up = self.last.get(c)
                if up is None:
                    raise AssertionError(f"column {c} is not live above row {r}")
                self.edges.append((up, v))
                self.down.append((up, v))
        self.rows.append(row)
        self.last = {c: self.cell[(r, c)] for c in set(active) | set(fresh)}
        return r

    def end(self, col: int) -> int:
        v = self.last.pop(col)
        self.ends.append(v)
        return v

    def hedge(self, r: int, c: int, d: int) -> tuple[int, int]:
        e = (self.cell[(r, c)], self.cell[(r, d)])
        self.edges.append(e)
        return e


class _Builder:
    def __init__(self, n: int, extra: int = 2):
        self.n = n
        self.grid = _Grid(n + extra)
        self.col_of_pos = list(range(n))
        self.free = list(range(n, n + extra))
        self.grid.add_row(range(n), fresh=range(n))
        self.swaps: list[SwapGadget] = []
        self.aux: dict[int, int] = {}  # aux token start vertex -> target vertex

    def live(self) -> list[int]:
        return list(self.grid.last)

    def swap_gadget(self, c1: int, c2: int, c3: int, fresh: Optional[int] = None) -> SwapGadget:
        g = self.grid
        c4 = self.free.pop(0)
        r0 = len(g.rows) - 1
        gadget = SwapGadget(r0, (c1, c2, c3, c4))
        extra = [fresh] if fresh is not None else []
        for k in range(1, 6):
            new = [c4] + extra if k == 1 else []
            g.add_row([c for c in self.live() if c not in new], fresh=new)
        r = r0
        gadget.edges = {
            "A": g.hedge(r + 1, c1, c4),
            "B": g.hedge(r + 2, c1, c3),
            "C": g.hedge(r + 3, c2, c4),
            "D": g.hedge(r + 4, c1, c4),
            "E": g.hedge(r + 5, c1, c3),
        }
        a_start = g.cell[(r + 1, c4)]
        a_target = g.end(c3)
        self.aux[a_start] = a_target
        self.free.append(c3)
        self.swaps.append(gadget)
        return gadget

    def shift_gadget(self, window: tuple[int, int, int]) -> ShiftGadget:
        p1, p2, p3 = window
        x1, x2, x3 = (self.col_of_pos[p] for p in window)
        cb = self.free.pop(0)
        first = self.swap_gadget(cb, x1, x2, fresh=cb)
        b_start = self.grid.cell[(first.row0 + 1, cb)]
        l0, l1, l2 = first.output_cols
        second = self.swap_gadget(x3, l1, l2)
        o1, o2, o3 = second.output_cols
        self.aux[b_start] = self.grid.end(o1)
        self.free.append(o1)
        self.col_of_pos[p1], self.col_of_pos[p2], self.col_of_pos[p3] = o2, l0, o3
        return ShiftGadget(window, first, second)

    def finish(self, shift: list[ShiftGadget], cascades: list[list[int]], horizontal_cost: int) -> PermutationNetwork:
        g = self.grid
        last = len(g.rows) - 1
        inputs = [g.cell[(0, c)] for c in range(self.n)]
        outputs = [g.cell[(last, c)] for c in self.col_of_pos]
        targets = dict(self.aux)
        for up, low in g.down:
            if low not in targets:
                targets[low] = up
        graph = Graph(len(g.cell), g.edges, require_connected=False)
        T = len(g.down) + horizontal_cost
        return PermutationNetwork(
            self.n, graph, g.rows, dict(g.cell), inputs, outputs, targets, list(g.down),
            self.swaps, shift, cascades, T,
        )


def cascade_windows(p: int) -> list[tuple[int, int, int]]:
    """0-based windows of the cascade that fills 0-based position ``p`` (``p >= 2``)."""
    return [(0, 1, 2)] + [(j - 1, j, j + 1) for j in range(1, p)]


def build_permutation_network(n: int) -> PermutationNetwork:
    """Network on ``n`` inputs.

    For ``n <= 2`` it is ``n`` straight edges (only the identity is even); with two inputs the
    outputs are also joined by one horizontal edge, so the network is connected. Crossing it
    realizes the odd transposition at cost ``T + 1``, which keeps the parity contract.
    """
    if n < 1:
        raise ValidationError("a permutation network needs at least one input")
    b = _Builder(n, extra=2 if n >= 3 else 0)
    shifts: list[ShiftGadget] = []
    cascades: list[list[int]] = []
    if n <= 2:
        r = b.grid.add_row(range(n))
        if n == 2:
            b.grid.hedge(r, 0, 1)
    for p in range(n - 1, 1, -1):
        ids = []
        for window in cascade_windows(p):
            ids.append(len(shifts))
            shifts.append(b.shift_gadget(window))
        cascades.append(ids)
    return b.finish(shifts, cascades, 6 * len(shifts))


def build_swapping_gadget() -> PermutationNetwork:
    """A lone swapping gadget on three inputs; its cost ``T`` assumes the identity choice."""
    b = _Builder(3, extra=1)
    g = b.swap_gadget(0, 1, 2)
    b.col_of_pos = list(g.output_cols)
    return b.finish([], [], 2)


def build_shift_gadget() -> PermutationNetwork:
    """A lone shift gadget on three inputs."""
    b = _Builder(3, extra=2)
    s = b.shift_gadget((0, 1, 2))
    return b.finish([s], [[0]], 6)


def _schedule(net: PermutationNetwork, used: set[tuple[int, int]]) -> list[tuple[int, int]]:
    """Row by row: the chosen horizontal swaps, then every vertical swap down to the next row."""
    row_of = net.row_of()
    by_row: dict[int, list[tuple[int, int]]] = {}
    for e in sorted(used, key=lambda e: (row_of[e[0]], e)):
        by_row.setdefault(row_of[e[0]], []).append(e)
    down_by_row: dict[int, list[tuple[int, int]]] = {}
    for up, low in net.down_edges:
        down_by_row.setdefault(row_of[up], []).append((up, low))
    seq = []
    for r in range(len(net.rows)):
        seq.extend(by_row.get(r, []))
        seq.extend(sorted(down_by_row.get(r, [])))
    return seq


def shift_choices(n: int, perm: Sequence[int]) -> list[bool]:
    """Which shift gadgets to engage so that input ``i`` lands on output ``perm[i]``."""
    if sorted(perm) != list(range(n)):
        raise ValidationError("perm must be a permutation of the inputs")
    if permutation_parity(perm) == 1:
        raise OddPermutation("only even permutations can be routed at cost T")
    arr = list(range(n))  # arr[position] = input index there
    want = [0] * n
    for i, o in enumerate(perm):
        want[o] = i
    choices: list[bool] = []
    for p in range(n - 1, 1, -1):
        q = arr.index(want[p])
        windows = cascade_windows(p)
        first = len(windows) if q == p else (0 if q == 0 else q)
        for k, (a, b, c) in enumerate(windows):
            engage = k >= first
            choices.append(engage)
            if engage:
                arr[a], arr[b], arr[c] = arr[c], arr[a], arr[b]
    if arr != want:
        raise AssertionError("cascade routing failed on an even permutation")
    return choices


def route_network(net: PermutationNetwork, perm: Sequence[int]) -> list[tuple[int, int]]:
    """A swap sequence of length exactly ``T`` realizing the even assignment ``perm``."""
    if len(perm) != net.n:
        raise ValidationError(f"expected a permutation of {net.n} inputs")
    if net.swap_gadgets and not net.shift_gadgets:
        raise ValidationError("a lone swapping gadget is not a permutation network")
    choices = shift_choices(net.n, perm)
    used: set[tuple[int, int]] = set()
    for engage, s in zip(choices, net.shift_gadgets):
        kind = "12" if engage else "13"
        for gadget in (s.first, s.second):
            used.update(gadget.edges[name] for name in SWAP_CHOICES[kind])
    seq = _schedule(net, used)
    assert len(seq) == net.T
    return seq


def _named_edges(net: PermutationNetwork, used_names: Sequence[Sequence[str]]) -> set[tuple[int, int]]:
    used = set()
    for gadget, names in zip(net.swap_gadgets, used_names):
        used.update(gadget.edges[x] for x in names)
    return used


def schedule_for(net: PermutationNetwork, used_names: Sequence[Sequence[str]]) -> list[tuple[int, int]]:
    """Wavefront swap sequence using the named horizontal edges (``"ABC"`` ...) of each swapping gadget."""
    return _schedule(net, _named_edges(net, used_names))


def simulate_routing(net: PermutationNetwork, used_names: Sequence[Sequence[str]]) -> Optional[tuple[int, ...]]:
    """Run the wavefront with the named horizontal edges of each swapping gadget.

    Returns the input -> output permutation if every auxiliary token reaches
    its target, else ``None``.
    """
    used = _named_edges(net, used_names)
    aux = _aux_starts(net)
    tok = {v: ("in", i) for i, v in enumerate(net.inputs)}
    for s in aux:
        tok[s] = ("aux", s)
    row_of = net.row_of()
    by_row: dict[int, list] = {}
    for e in used:
        by_row.setdefault(row_of[e[0]], []).append(e)
    down_by_row: dict[int, list] = {}
    for up, low in net.down_edges:
        down_by_row.setdefault(row_of[up], []).append((up, low))
    for r in range(len(net.rows)):
        for u, v in by_row.get(r, []):
            tok[u], tok[v] = tok.get(v), tok.get(u)
        for up, low in down_by_row.get(r, []):
            tok[low] = tok.pop(up, None)
    for s in aux:
        if tok.get(net.targets[s]) != ("aux", s):
            return None
    out = [0] * net.n
    where = {v: k for k, v in enumerate(net.outputs)}
    for v, item in tok.items():
        if item and item[0] == "in":
            if v not in where:
                return None
            out[item[1]] = where[v]
    return tuple(out)


def _aux_starts(net: PermutationNetwork) -> set[int]:
    down_lower = {low for _, low in net.down_edges}
    return {s for s in net.targets if s not in down_lower}


def behavior_table(net: PermutationNetwork) -> dict[tuple[int, ...], int]:
    """Cheapest horizontal-edge count per reachable output permutation, over all edge subsets."""
    names = "ABCDE"
    k = len(net.swap_gadgets)
    best: dict[tuple[int, ...], int] = {}
    subsets = [c for size in range(6) for c in combinations(names, size)]

    def rec(i, chosen):
        if i == k:
            perm = simulate_routing(net, chosen)
            if perm is not None:
                cost = sum(map(len, chosen))
                if cost < best.get(perm, 1 << 30):
                    best[perm] = cost
            return
        for sub in subsets:
            rec(i + 1, chosen + [sub])

    rec(0, [])
    return best


def layering_violations(net: PermutationNetwork) -> list[str]:
    """Check the strict-layer rules: edges are horizontal or join consecutive rows, one neighbor up and down at most."""
    row_of = net.row_of()
    out = []
    up = [0] * net.graph.n
    down = [0] * net.graph.n
    for u, v in net.graph.edges:
        ru, rv = row_of[u], row_of[v]
        if abs(ru - rv) > 1:
            out.append(f"edge ({u}, {v}) skips a layer")
        elif ru != rv:
            a, b = (u, v) if ru < rv else (v, u)
            down[a] += 1
            up[b] += 1
    if any(c > 1 for c in down):
        out.append("a vertex has two neighbors in the next layer")
    if any(c > 1 for c in up):
        out.append("a vertex has two neighbors in the previous layer")
    if any(row_of[v] != 0 for v in net.inputs):
        out.append("inputs are not all on the first layer")
    if any(row_of[v] != len(net.rows) - 1 for v in net.outputs):
        out.append("outputs are not all on the last layer")
    return out


def network_sign_matches(net: PermutationNetwork, perm: Sequence[int]) -> bool:
    """Whether a length-``T`` sequence can realize ``perm`` at all, by the transposition-parity argument."""
    return permutation_parity(net.placement(perm)) == net.T % 2
