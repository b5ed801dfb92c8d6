from itertools import permutations

import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linear_sum_assignment

from tokenswap.approx import solve_happy
from tokenswap.bounds import all_pairs_distances, lower_bound, total_displacement
from tokenswap.colored import (
    assignment_floor,
    colored_optimum,
    hungarian,
    lexicographic_min_matching,
    optimal_assignment,
    relabeled_placement,
    solve_colored,
)
from tokenswap.core import ColoredInstance, verify_colored_solution
from tokenswap.generators import make_rng, random_connected

from oracles import brute_force_lstar

R, B = 0, 1


@pytest.fixture
def p3_colored(p3):
    # vertex colors r,b,r; tokens sitting on vertices 1,2,3 are b,r,r
    return ColoredInstance(p3, (B, R, R), (R, B, R), [0, 1, 2])


@st.composite
def colored_instances(draw, max_n=6, max_colors=3):
    n = draw(st.integers(2, max_n))
    g = random_connected(n, make_rng(draw(st.integers(0, 2**32))))
    vertex_colors = draw(st.lists(st.integers(0, max_colors - 1), min_size=n, max_size=n))
    token_colors = draw(st.permutations(vertex_colors))
    placement = draw(st.permutations(range(n)))
    return ColoredInstance(g, tuple(token_colors), tuple(vertex_colors), placement)


# --- matching --------------------------------------------------------------------


@given(st.integers(1, 7), st.integers(0, 2**32))
def test_hungarian_matches_scipy(n, seed):
    cost = make_rng(seed).integers(0, 6, size=(n, n))
    assign, u, v = hungarian(cost.tolist())
    rows, cols = linear_sum_assignment(cost)
    assert sum(cost[i, assign[i]] for i in range(n)) == cost[rows, cols].sum()
    assert sorted(assign) == list(range(n))
    for i in range(n):
        for j in range(n):
            assert u[i] + v[j] <= cost[i, j]
        assert u[i] + v[assign[i]] == cost[i, assign[i]]


@given(st.integers(1, 6), st.integers(0, 2**32))
def test_lexicographic_tie_break(n, seed):
    cost = make_rng(seed).integers(0, 3, size=(n, n)).tolist()
    assign, best = lexicographic_min_matching(cost)
    scored = [(sum(cost[i][p[i]] for i in range(n)), list(p)) for p in permutations(range(n))]
    expected_cost = min(c for c, _ in scored)
    assert best == expected_cost
    assert assign == min(p for c, p in scored if c == expected_cost)


def test_empty_matching():
    assert hungarian([]) == ([], [], [])


# --- assignment ----------------------------------------------------------------------


def test_assignment_examples(p3, p3_colored):
    distinct = ColoredInstance(p3, (0, 1, 2), (0, 1, 2), [2, 0, 1])
    a = optimal_assignment(distinct)
    assert a.target == (0, 1, 2)
    assert a.cost == total_displacement(p3, [2, 0, 1])
    same = ColoredInstance(p3, (5, 5, 5), (5, 5, 5), [2, 0, 1])
    a = optimal_assignment(same)
    assert a.cost == 0
    assert a.target == tuple(same.placement.positions())
    assert optimal_assignment(p3_colored).cost == 2


@given(colored_instances(max_n=7))
def test_lstar_is_the_brute_force_minimum(inst):
    d = all_pairs_distances(inst.graph).tolist()
    a = optimal_assignment(inst, d)
    assert a.cost == brute_force_lstar(d, inst.placement, inst.token_colors, inst.vertex_colors)
    assert sorted(a.target) == list(range(inst.graph.n))
    assert all(inst.token_colors[t] == inst.vertex_colors[w] for t, w in enumerate(a.target))


@given(colored_instances(), st.permutations(range(3)))
def test_renaming_colors_keeps_lstar(inst, rename):
    renamed = ColoredInstance(
        inst.graph,
        tuple(rename[c] for c in inst.token_colors),
        tuple(rename[c] for c in inst.vertex_colors),
        inst.placement,
    )
    assert optimal_assignment(renamed).cost == optimal_assignment(inst).cost


# --- solving ---------------------------------------------------------------------------


def test_solve_colored_examples(p3, p3_colored):
    assert solve_colored(p3_colored, "exact").length == 1
    assert colored_optimum(p3_colored) == 1
    distinct = ColoredInstance(p3, (0, 1, 2), (0, 1, 2), [2, 1, 0])
    assert solve_colored(distinct, "happy").sequence == solve_happy(p3, [2, 1, 0]).sequence
    same = ColoredInstance(p3, (1, 1, 1), (1, 1, 1), [2, 1, 0])
    assert solve_colored(same).length == 0


def test_floor_examples(p3, p3_colored):
    same = ColoredInstance(p3, (1, 1, 1), (1, 1, 1), [2, 1, 0])
    assert assignment_floor(same) == 0
    perm = [1, 2, 0]
    distinct = ColoredInstance(p3, (0, 1, 2), (0, 1, 2), perm)
    assert assignment_floor(distinct) == (total_displacement(p3, perm) + 1) // 2
    assert assignment_floor(p3_colored) == 1


@pytest.mark.parametrize("solver", ["exact", "exact-id", "exact-pruned", "happy", "cycles"])
@given(inst=colored_instances())
def test_solve_colored_is_valid_and_within_ratio(solver, inst):
    res = solve_colored(inst, solver)
    assert verify_colored_solution(inst, res.sequence)
    opt = colored_optimum(inst)
    assert opt >= assignment_floor(inst)
    assert res.length <= 4 * opt
    if solver == "happy":
        assert res.length <= 2 * res.stats["assignment_cost"]


def test_colored_optimum_depth_cut(p3_colored):
    assert colored_optimum(p3_colored, max_depth=0) is None
    assert colored_optimum(p3_colored, max_depth=1) == 1


def test_relabeled_placement_sorts_to_colors(p3_colored):
    a = optimal_assignment(p3_colored)
    relabeled = relabeled_placement(p3_colored, a)
    assert sorted(relabeled) == [0, 1, 2]
    assert lower_bound(p3_colored.graph, relabeled) == 1
