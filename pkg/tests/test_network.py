from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from tokenswap.core import permutation_parity, verify_solution
from tokenswap.errors import OddPermutation, ValidationError
from tokenswap.reductions.network import (
    SWAP_CHOICES,
    behavior_table,
    build_permutation_network,
    build_shift_gadget,
    build_swapping_gadget,
    cascade_windows,
    layering_violations,
    network_sign_matches,
    route_network,
    schedule_for,
    shift_choices,
    simulate_routing,
)

IDENTITY3 = (0, 1, 2)
RIGHT_SHIFT = (1, 2, 0)  # input i lands on output i+1


def even(n):
    return [p for p in permutations(range(n)) if permutation_parity(p) == 0]


def odd(n):
    return [p for p in permutations(range(n)) if permutation_parity(p) == 1]


# --- gadgets -------------------------------------------------------------------------


def test_swapping_gadget_cost_table():
    table = behavior_table(build_swapping_gadget())
    assert table[IDENTITY3] == 2
    assert table[(1, 0, 2)] == 3
    assert table[(2, 1, 0)] == 3
    assert (0, 2, 1) not in table or table[(0, 2, 1)] > 3
    assert all(cost >= 4 for perm, cost in table.items() if perm not in (IDENTITY3, (1, 0, 2), (2, 1, 0)))


def test_named_choices_realize_the_table():
    g = build_swapping_gadget()
    assert simulate_routing(g, [SWAP_CHOICES["id"]]) == IDENTITY3
    assert simulate_routing(g, [SWAP_CHOICES["12"]]) == (1, 0, 2)
    assert simulate_routing(g, [SWAP_CHOICES["13"]]) == (2, 1, 0)
    assert simulate_routing(g, ["A"]) is None  # the auxiliary token never reaches its target


def test_shift_gadget_cost_table():
    table = behavior_table(build_shift_gadget())
    assert table[IDENTITY3] == table[RIGHT_SHIFT] == 6
    assert min(cost for perm, cost in table.items() if perm not in (IDENTITY3, RIGHT_SHIFT)) > 6


def test_lone_swapping_gadget_is_not_routable():
    with pytest.raises(ValidationError):
        route_network(build_swapping_gadget(), IDENTITY3)


def test_shift_gadget_schedules():
    s = build_shift_gadget()
    for kind, expected in (("12", RIGHT_SHIFT), ("13", IDENTITY3)):
        names = [SWAP_CHOICES[kind]] * 2
        assert simulate_routing(s, names) == expected
        seq = schedule_for(s, names)
        assert len(seq) == s.T
        assert verify_solution(s.graph, s.placement(expected), seq)


# --- whole networks -------------------------------------------------------------------------


def test_three_input_network_inventory():
    net = build_permutation_network(3)
    assert len(net.cascades) == 1 and len(net.cascades[0]) == 2
    assert len(net.swap_gadgets) == 4


@pytest.mark.parametrize("n", [3, 4, 5])
def test_shift_choices_reach_exactly_the_even_permutations(n):
    net = build_permutation_network(n)
    reached = set()
    for bits in product((False, True), repeat=len(net.shift_gadgets)):
        names = [SWAP_CHOICES["12" if b else "13"] for b in bits for _ in (0, 1)]
        reached.add(simulate_routing(net, names))
    assert reached == set(even(n))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_every_even_permutation_routes_in_exactly_T(n):
    net = build_permutation_network(n)
    for perm in even(n):
        seq = route_network(net, perm)
        assert len(seq) == net.T
        assert verify_solution(net.graph, net.placement(perm), seq)
    for perm in odd(n):
        with pytest.raises(OddPermutation):
            route_network(net, perm)
        assert not network_sign_matches(net, perm)


def test_route_examples():
    net = build_permutation_network(3)
    assert not any(shift_choices(3, IDENTITY3))
    assert len(route_network(net, IDENTITY3)) == net.T
    three_cycle = (1, 2, 0)
    assert sum(shift_choices(3, three_cycle)) == 1
    assert verify_solution(net.graph, net.placement(three_cycle), route_network(net, three_cycle))
    with pytest.raises(OddPermutation):
        route_network(net, (1, 0, 2))


@pytest.mark.parametrize("n", range(1, 8))
def test_layering_rules(n):
    assert layering_violations(build_permutation_network(n)) == []


@pytest.mark.parametrize("n", [8, 10])
def test_inner_size_grows_cubically(n):
    small, large = build_permutation_network(n), build_permutation_network(2 * n)
    assert len(large.inner) / len(small.inner) <= 8
    for net in (small, large):
        assert len(net.inner) <= 6 * net.n**3


@pytest.mark.parametrize("n", [3, 4, 6])
def test_T_counts_down_edges_and_gadgets(n):
    net = build_permutation_network(n)
    assert net.T == len(net.down_edges) + 6 * len(net.shift_gadgets)
    assert net.T % 2 == permutation_parity(net.placement(tuple(range(n))))


def test_cascade_windows():
    assert cascade_windows(2) == [(0, 1, 2), (0, 1, 2)]
    assert cascade_windows(4) == [(0, 1, 2), (0, 1, 2), (1, 2, 3), (2, 3, 4)]


@given(st.integers(3, 9), st.data())
def test_shift_choices_land_every_input(n, data):
    perm = data.draw(st.permutations(range(n)))
    if permutation_parity(perm):
        with pytest.raises(OddPermutation):
            shift_choices(n, perm)
        return
    bits = shift_choices(n, perm)
    assert len(bits) == sum(len(cascade_windows(p)) for p in range(n - 1, 1, -1))
