"""3-CNF -> layered disjoint paths.

Per variable: two parallel tracks (T and F) that start and end in a
6-vertex crossing gadget. Per clause: a 3-layer, 30-vertex gadget in which
the clause path ``c -> v -> c'`` must borrow the middle vertex ``v`` of a
track left free by a variable that satisfies the clause. Supplementary
paths fill the free track between consecutive occurrences of a variable.

Layer order: the top crossings, then the clause gadgets in formula order,
then the bottom crossings; every gadget owns three fresh layers.
"""
from __future__ import annotations

from typing import Sequence

from .cnf import CnfFormula, pad_to_three, require_three_literals
from .dp import LayeredDag


class _Builder:
    def __init__(self):
        self.layers: list[list[int]] = []
        self.labels: list[str] = []
        self.arcs: list[tuple[int, int]] = []
        self.phi: dict[int, int] = {}

    def layer(self, names: Sequence[str]) -> list[int]:
        ids = list(range(len(self.labels), len(self.labels) + len(names)))
        self.labels.extend(names)
        self.layers.append(ids)
        return ids

    def arc(self, u: int, v: int) -> None:
        self.arcs.append((u, v))


def sat_to_dp(formula: CnfFormula, pad: bool = False) -> LayeredDag:
    """Build the disjoint-paths instance; it has a solution iff ``formula`` is satisfiable.

    Clauses must have exactly three literals unless ``pad`` is set, in which
    case shorter clauses are first rewritten by :func:`pad_to_three`.
    """
    if pad:
        formula = pad_to_three(formula)
    require_three_literals(formula)
    b = _Builder()
    n = formula.num_vars
    top, bottom, clauses = {}, {}, []
    track = {}  # var -> {"T": last vertex on T track, "F": ...}
    supply = {}  # var -> (source of the next supplementary path, its index)
    for i in range(1, n + 1):
        x, s = b.layer([f"x{i}", f"s{i}.1"])
        a1, a2 = b.layer([f"x{i}.a1", f"x{i}.a2"])
        t, f = b.layer([f"x{i}T.top", f"x{i}F.top"])
        b.arc(x, a1)
        b.arc(s, a2)
        for u in (a1, a2):
            b.arc(u, t)
            b.arc(u, f)
        top[i] = {"x": x, "s": s, "a1": a1, "a2": a2, "T": t, "F": f}
        track[i] = {"T": t, "F": f}
        supply[i] = (s, 1)
    for z, clause in enumerate(formula.clauses, 1):
        vars_ = [abs(l) for l in clause]
        tag = f"C{z}"
        row1 = b.layer([f"{tag}:x{i}{r}1" for i in vars_ for r in "TFS"] + [tag])
        row2 = b.layer([f"{tag}:x{i}{r}2" for i in vars_ for r in "TFS"] + [f"{tag}.z"])
        row3 = b.layer([f"{tag}:x{i}{r}3" for i in vars_ for r in "TFS"] + [f"{tag}'"])
        c1, zmid, c3 = row1[-1], row2[-1], row3[-1]
        gadget = {"c": c1, "z": zmid, "c'": c3, "vars": {}}
        for k, lit in enumerate(clause):
            i = abs(lit)
            ids = {}
            for r, row in ((1, row1), (2, row2), (3, row3)):
                ids[f"T{r}"], ids[f"F{r}"], ids[f"S{r}"] = row[3 * k : 3 * k + 3]
            b.arc(track[i]["T"], ids["T1"])
            b.arc(track[i]["F"], ids["F1"])
            for r in "TF":
                b.arc(ids[f"{r}1"], ids[f"{r}2"])
                b.arc(ids[f"{r}2"], ids[f"{r}3"])
                b.arc(ids[f"{r}2"], ids["S3"])
                b.arc(ids["S2"], ids[f"{r}3"])
            b.arc(ids["S1"], ids["S2"])
            b.arc(zmid, ids["S3"])
            # the clause may detour through the free track's middle vertex
            free_track = "F" if lit > 0 else "T"
            ids["w"], ids["v"] = ids[f"{free_track}1"], ids[f"{free_track}2"]
            b.arc(ids["w"], zmid)
            b.arc(c1, ids["v"])
            b.arc(ids["v"], c3)
            src, j = supply[i]
            b.phi[src] = ids["S3"]
            supply[i] = (ids["S1"], j + 1)
            track[i] = {"T": ids["T3"], "F": ids["F3"]}
            gadget["vars"][i] = ids
        b.phi[c1] = c3
        clauses.append(gadget)
    for i in range(1, n + 1):
        yt, yf = b.layer([f"x{i}T.bottom", f"x{i}F.bottom"])
        b1, b2 = b.layer([f"x{i}.b1", f"x{i}.b2"])
        src, j = supply[i]
        xs, ss = b.layer([f"x{i}'", f"s{i}.{j}'"])
        b.arc(track[i]["T"], yt)
        b.arc(track[i]["F"], yf)
        for y in (yt, yf):
            b.arc(y, b1)
            b.arc(y, b2)
        b.arc(b1, xs)
        b.arc(b2, ss)
        b.phi[top[i]["x"]] = xs
        b.phi[src] = ss
        bottom[i] = {"T": yt, "F": yf, "b1": b1, "b2": b2, "x'": xs, "s'": ss}
    gadgets = {"formula": formula, "top": top, "bottom": bottom, "clauses": clauses}
    return LayeredDag(b.layers, b.arcs, b.phi, b.labels, gadgets=gadgets)


def dp_paths_from_assignment(dag: LayeredDag, assignment: Sequence[bool]) -> dict[int, list[int]]:
    """The disjoint paths a satisfying assignment induces (``assignment[i]`` = value of x_{i+1}).

    Each clause path detours through the free track of its first satisfied
    literal; that variable's supplementary path then takes the clause's
    middle vertex instead.
    """
    g = dag.gadgets
    if g is None:
        raise ValueError("dag was not produced by sat_to_dp")
    formula: CnfFormula = g["formula"]
    top, bottom, clauses = g["top"], g["bottom"], g["clauses"]
    paths: dict[int, list[int]] = {}
    chosen = []
    for z, clause in enumerate(formula.clauses):
        lit = next((l for l in clause if assignment[abs(l) - 1] == (l > 0)), None)
        if lit is None:
            raise ValueError(f"assignment does not satisfy clause {z + 1}")
        gadget = clauses[z]
        chosen.append(abs(lit))
        paths[gadget["c"]] = [gadget["c"], gadget["vars"][abs(lit)]["v"], gadget["c'"]]
    for i in range(1, formula.num_vars + 1):
        used = "T" if assignment[i - 1] else "F"
        free = "F" if used == "T" else "T"
        occ = formula.occurrences(i)
        xpath = [top[i]["x"], top[i]["a1"], top[i][used]]
        for z in occ:
            ids = clauses[z]["vars"][i]
            xpath += [ids[f"{used}1"], ids[f"{used}2"], ids[f"{used}3"]]
        xpath += [bottom[i][used], bottom[i]["b1"], bottom[i]["x'"]]
        paths[xpath[0]] = xpath
        for j in range(len(occ) + 1):
            if j == 0:
                head = [top[i]["s"], top[i]["a2"], top[i][free]]
            else:
                prev = clauses[occ[j - 1]]["vars"][i]
                head = [prev["S1"], prev["S2"], prev[f"{free}3"]]
            if j < len(occ):
                z = occ[j]
                ids = clauses[z]["vars"][i]
                middle = clauses[z]["z"] if chosen[z] == i else ids[f"{free}2"]
                tail = [ids[f"{free}1"], middle, ids["S3"]]
            else:
                tail = [bottom[i][free], bottom[i]["b2"], bottom[i]["s'"]]
            paths[head[0]] = head + tail
    return paths
