from itertools import product

import pytest
from hypothesis import given, strategies as st

from tokenswap.errors import ParseError, RepeatedVariableInClause, UnsupportedClauseArity, ValidationError
from tokenswap.reductions.cnf import CnfFormula, all_three_cnf, emit_dimacs, pad_to_three, parse_dimacs
from tokenswap.reductions.dp import LayeredDag, check_paths, dp_solve, emit_dp, parse_dp
from tokenswap.reductions.sat_to_dp import dp_paths_from_assignment, sat_to_dp

from dags import forced_conflict, four_layer_three_pairs, parallel_crossed, single_path

# an 8-clause formula with no satisfying assignment: every sign pattern over x1..x3
UNSAT8 = CnfFormula(3, tuple(tuple(s * v for s, v in zip(signs, (1, 2, 3))) for signs in product((1, -1), repeat=3)))


@st.composite
def formulas(draw, max_vars=5, max_clauses=3):
    n = draw(st.integers(3, max_vars))
    m = draw(st.integers(0, max_clauses))
    clauses = []
    for _ in range(m):
        vars_ = draw(st.lists(st.integers(1, n), min_size=3, max_size=3, unique=True))
        signs = draw(st.lists(st.sampled_from((1, -1)), min_size=3, max_size=3))
        clauses.append(tuple(s * v for s, v in zip(signs, vars_)))
    return CnfFormula(n, tuple(clauses))


# --- DIMACS ------------------------------------------------------------------------


def test_parse_dimacs_examples():
    f = parse_dimacs("c comment\np cnf 3 1\n1 -2 3 0\n")
    assert f.num_vars == 3 and f.clauses == ((1, -2, 3),)
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 3 2\n1 2 3 0\n0\n")
    with pytest.raises(RepeatedVariableInClause):
        parse_dimacs("p cnf 3 1\n1 1 2 0\n")


def test_parse_dimacs_accepts_clauses_across_lines():
    f = parse_dimacs("p cnf 4 2\n1 -2\n3 0 -4 1 2 0\n")
    assert f.clauses == ((1, -2, 3), (-4, 1, 2))


def test_dimacs_range_and_arity_errors():
    with pytest.raises(ValidationError):
        parse_dimacs("p cnf 2 1\n1 2 3 0\n")
    with pytest.raises(UnsupportedClauseArity):
        parse_dimacs("p cnf 4 1\n1 2 3 4 0\n")


@given(formulas())
def test_dimacs_round_trip(f):
    assert parse_dimacs(emit_dimacs(f)) == f


@given(st.integers(1, 4), st.data())
def test_padding_is_equisatisfiable(n, data):
    clauses = []
    for _ in range(data.draw(st.integers(1, 4))):
        vars_ = data.draw(st.lists(st.integers(1, n), min_size=1, max_size=min(3, n), unique=True))
        clauses.append(tuple(v * data.draw(st.sampled_from((1, -1))) for v in vars_))
    f = CnfFormula(n, tuple(clauses))
    padded = pad_to_three(f)
    assert all(len(c) == 3 for c in padded.clauses)
    assert padded.is_satisfiable() == f.is_satisfiable()


def test_enumeration_counts():
    assert sum(1 for _ in all_three_cnf(3, 1)) == 8
    assert sum(1 for _ in all_three_cnf(3, 2)) == 64


# --- LayeredDag and the paths oracle ----------------------------------------------------


def test_dp_solve_examples():
    path = single_path(5)
    assert dp_solve(path) == {0: [0, 1, 2, 3, 4]}
    assert dp_solve(parallel_crossed()) is None
    assert dp_solve(forced_conflict()) is None
    paths = dp_solve(four_layer_three_pairs())
    assert check_paths(four_layer_three_pairs(), paths)


def test_violations_are_named():
    assert parallel_crossed().violations() == ["reachability: some source cannot reach its sink"]
    wide = LayeredDag([list(range(11)), list(range(11, 22))], [(i, i + 11) for i in range(11)], {i: i + 11 for i in range(11)})
    assert any(v.startswith("layer-size") for v in wide.violations())
    mixed = LayeredDag([[0], [1], [2]], [(0, 1), (0, 2), (1, 2)], {0: 2})
    assert any(v.startswith("layers") for v in mixed.violations())
    loose = LayeredDag([[0, 1], [2]], [(0, 2)], {0: 2})
    assert any(v.startswith("phi") for v in loose.violations())


def test_dp_text_round_trip():
    dag = four_layer_three_pairs()
    back = parse_dp(emit_dp(dag))
    assert back.layers == dag.layers and back.arcs == dag.arcs and back.phi == dag.phi
    assert back.labels == dag.labels


def test_dp_text_errors():
    with pytest.raises(ParseError):
        parse_dp("dp 2 2\nlayer 1: 1\nlayer 2: 2\nedge 1 2\n")


# --- 3-CNF -> DP ------------------------------------------------------------------------


def test_vertex_counts_single_clause():
    f = CnfFormula(3, ((1, -2, 3),))
    dag = sat_to_dp(f)
    assert dag.n == 30 * 1 + 12 * 3 == 66
    assert dag.violations() == []
    counts = dag.n_values()
    top = dag.gadgets["top"]
    for i in (1, 2, 3):
        assert counts[top[i]["x"]] == 3 * (1 + 2) == 9
    clause = dag.gadgets["clauses"][0]
    assert counts[clause["c"]] == 3


@given(formulas(max_vars=6, max_clauses=4))
def test_sat_to_dp_structure(f):
    dag = sat_to_dp(f)
    assert dag.violations() == []
    assert dag.n == 30 * len(f.clauses) + 12 * f.num_vars
    counts = dag.n_values()
    g = dag.gadgets
    for i in range(1, f.num_vars + 1):
        assert counts[g["top"][i]["x"]] == 3 * (len(f.occurrences(i)) + 2)
    for clause in g["clauses"]:
        assert counts[clause["c"]] == 3
    main = {g["top"][i]["x"] for i in g["top"]} | {clause["c"] for clause in g["clauses"]}
    supplementary = [s for s in dag.sources if s not in main]
    assert all(counts[s] == 6 for s in supplementary)
    assert len(supplementary) == sum(len(f.occurrences(i)) + 1 for i in range(1, f.num_vars + 1))
    assert max(len(layer) for layer in dag.layers) <= 10
    assert len(dag.layers) == 3 * (2 * f.num_vars + len(f.clauses))


@given(formulas(max_vars=5, max_clauses=3))
def test_satisfying_assignments_give_paths(f):
    dag = sat_to_dp(f)
    for values in product((False, True), repeat=f.num_vars):
        if f.evaluate(values):
            assert check_paths(dag, dp_paths_from_assignment(dag, values))


def test_sat_iff_paths_small_exhaustive():
    for m in (0, 1, 2):
        for f in all_three_cnf(3, m):
            assert (dp_solve(sat_to_dp(f)) is not None) == f.is_satisfiable()


def test_unsatisfiable_formula_has_no_cover():
    assert not UNSAT8.is_satisfiable()
    dag = sat_to_dp(UNSAT8)
    assert dag.violations() == []
    assert dp_solve(dag) is None


@given(formulas(max_vars=4, max_clauses=5))
def test_sat_iff_paths_random(f):
    assert (dp_solve(sat_to_dp(f)) is not None) == f.is_satisfiable()


def test_rejects_short_clauses_unless_padded():
    f = CnfFormula(3, ((1, 2),))
    with pytest.raises(UnsupportedClauseArity):
        sat_to_dp(f)
    dag = sat_to_dp(f, pad=True)
    assert dag.violations() == [] and dp_solve(dag) is not None


def all_covers(dag):
    """Every path cover, by plain enumeration (independent of dp_solve)."""
    sources = dag.sources
    found = []

    def paths_from(v, goal, used):
        if v == goal:
            yield [v]
            return
        for w in dag.succ[v]:
            if w not in used:
                used.add(w)
                for rest in paths_from(w, goal, used):
                    yield [v] + rest
                used.discard(w)

    def rec(i, used, chosen):
        if i == len(sources):
            if len(used) == dag.n:
                found.append(dict(chosen))
            return
        s = sources[i]
        for p in paths_from(s, dag.phi[s], used | {s}):
            chosen[s] = p
            rec(i + 1, used | set(p), chosen)
        chosen.pop(s, None)

    rec(0, set(), {})
    return found


@pytest.mark.parametrize("clause", [(1, 2, 3), (1, -2, 3), (-1, -2, -3)])
def test_clause_gadget_behavior(clause):
    f = CnfFormula(3, (clause,))
    dag = sat_to_dp(f)
    g = dag.gadgets
    gadget = g["clauses"][0]
    covers = all_covers(dag)
    seen = set()
    for cover in covers:
        values = tuple(g["top"][i]["T"] in cover[g["top"][i]["x"]] for i in (1, 2, 3))
        middle = cover[gadget["c"]][1]
        (borrowed,) = [i for i in (1, 2, 3) if gadget["vars"][i]["v"] == middle]
        lit = next(l for l in clause if abs(l) == borrowed)
        assert values[borrowed - 1] == (lit > 0)
        seen.add((values, borrowed))
    expected = {
        (values, abs(l))
        for values in product((False, True), repeat=3)
        for l in clause
        if values[abs(l) - 1] == (l > 0)
    }
    assert seen == expected
