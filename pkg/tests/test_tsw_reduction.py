import pytest
from hypothesis import given, strategies as st

from tokenswap.core import Instance, emit_instance, parse_instance, permutation_parity, verify_solution
from tokenswap.errors import LayerTooLarge
from tokenswap.reductions.cnf import CnfFormula
from tokenswap.reductions.dp import LayeredDag, dp_solve
from tokenswap.reductions.dp_to_colored import colored_solution_from_paths, dp_to_colored
from tokenswap.reductions.sat_to_dp import dp_paths_from_assignment, sat_to_dp
from tokenswap.reductions.to_tsw import structured_to_uncolored, uncolored_solution, vertex_count_identity

from dags import hand_built


@given(st.permutations(range(7)))
def test_a_permutation_run_in_two_copies_is_even(p):
    doubled = list(p) + [x + len(p) for x in p]
    assert permutation_parity(doubled) == 0


@pytest.mark.parametrize("name", sorted(hand_built()))
def test_hand_built_reductions(name):
    dag = hand_built()[name]
    sinst = dp_to_colored(dag)
    red = structured_to_uncolored(sinst)
    assert vertex_count_identity(red)
    assert red.graph.is_connected()
    assert red.threshold == 2 * sinst.threshold + sum(a.network.T for a in red.networks)
    back = parse_instance(emit_instance(Instance(red.graph, red.placement, threshold=red.threshold)))
    assert back.threshold == red.threshold and tuple(back.placement) == tuple(red.placement)
    paths = dp_solve(dag)
    if paths is not None:
        seq = uncolored_solution(red, colored_solution_from_paths(sinst, paths))
        assert len(seq) == red.threshold
        assert verify_solution(red.graph, red.placement, seq)


def test_wide_layer_is_rejected():
    wide = LayeredDag([list(range(11)), list(range(11, 22))], [(i, i + 11) for i in range(11)], {i: i + 11 for i in range(11)})
    with pytest.raises(LayerTooLarge):
        structured_to_uncolored(dp_to_colored(wide))


def test_toy_formula_end_to_end():
    f = CnfFormula(3, ((1, -2, 3),))
    dag = sat_to_dp(f)
    sinst = dp_to_colored(dag)
    red = structured_to_uncolored(sinst)
    assert vertex_count_identity(red)
    cseq = colored_solution_from_paths(sinst, dp_paths_from_assignment(dag, f.satisfying_assignment()))
    seq = uncolored_solution(red, cseq)
    assert len(seq) == red.threshold == 2 * sinst.threshold + sum(a.network.T for a in red.networks)
    assert verify_solution(red.graph, red.placement, seq)
