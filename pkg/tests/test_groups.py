from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torlicz.groups import (
    BudgetError,
    ball_elements,
    ball_sizes,
    ball_table,
    block_group,
    block_index,
    cyclic_group,
    cyclic_product_group,
    element_from_list,
    element_to_list,
    growth_degree_estimate,
    heisenberg_group,
    integer_lattice,
    parse_group,
    word_length,
)


def bfs_oracle(group, radius):
    """Independent BFS over the Cayley graph; returns {element: distance}."""
    dist = {group.identity: 0}
    queue = deque([group.identity])
    while queue:
        g = queue.popleft()
        if dist[g] >= radius:
            continue
        for u in group.generators:
            h = group.op(g, u)
            if h not in dist:
                dist[h] = dist[g] + 1
                queue.append(h)
    return dist


def test_identity_has_length_zero():
    assert word_length(integer_lattice(2), (0, 0)) == 0


def test_z2_word_length_against_bfs_oracle():
    group = integer_lattice(2)
    oracle = bfs_oracle(group, 4)
    for g, d in oracle.items():
        assert word_length(group, g) == d
    assert word_length(group, (3, -2)) == 3  # sup norm for this generating set


def test_h3_commutator_length():
    group = heisenberg_group()
    commutator = group.op(
        group.op((1, 0, 0), (0, 1, 0)), group.op((-1, 0, 0), (0, -1, 0))
    )
    assert commutator == (0, 0, 1)
    oracle = bfs_oracle(group, 6)
    assert oracle[commutator] == 4
    assert word_length(group, commutator) == 4


@pytest.mark.parametrize("d", [1, 2, 3])
def test_lattice_ball_sizes_closed_form(d):
    sizes = ball_sizes(integer_lattice(d), 12)
    assert sizes == [(2 * n + 1) ** d for n in range(1, 13)]


def test_finite_group_sizes_saturate():
    sizes = ball_sizes(cyclic_group(5), 6)
    assert sizes == [3, 5, 5, 5, 5, 5]


def test_layers_partition_and_match_word_length():
    group = integer_lattice(2)
    table = ball_table(group, 8)
    seen = set()
    for n, layer in enumerate(table.layers):
        for g in layer:
            assert g not in seen
            seen.add(g)
            assert word_length(group, g) == n


def test_heisenberg_layers_match_hintless_bfs():
    group = heisenberg_group()
    table = ball_table(group, 6)
    oracle = bfs_oracle(group, 6)
    assert sum(len(l) for l in table.layers) == len(oracle)
    for n, layer in enumerate(table.layers):
        for g in layer:
            assert oracle[g] == n


def test_growth_degree_z2():
    fit = growth_degree_estimate(ball_sizes(integer_lattice(2), 64))
    assert abs(fit.degree - 2.0) <= 0.1
    assert fit.residual < 0.05


def test_growth_degree_constant_sizes():
    fit = growth_degree_estimate([5] * 12)
    assert fit.degree == pytest.approx(0.0, abs=1e-12)


def test_growth_degree_h3():
    fit = growth_degree_estimate(ball_sizes(heisenberg_group(), 12))
    assert abs(fit.degree - 4.0) <= 0.3


def test_growth_degree_needs_three_points():
    with pytest.raises(ValueError):
        growth_degree_estimate([3, 9])


@settings(max_examples=50, deadline=None)
@given(
    st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
    st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
)
def test_tau_subadditive_and_symmetric_on_z2(a, b):
    group = integer_lattice(2)
    tau = lambda g: word_length(group, g)
    assert tau(group.op(a, b)) <= tau(a) + tau(b)
    assert tau(a) == tau(group.inv(a))


def test_tau_subadditive_on_h3():
    group = heisenberg_group()
    rng = np.random.default_rng(2)
    elems = ball_elements(group, 4)
    for _ in range(100):
        a = elems[rng.integers(0, len(elems))]
        b = elems[rng.integers(0, len(elems))]
        assert word_length(group, group.op(a, b)) <= word_length(group, a) + word_length(group, b)
        assert word_length(group, a) == word_length(group, group.inv(a))


@pytest.mark.parametrize(
    "group",
    [integer_lattice(2), heisenberg_group(), cyclic_group(4), cyclic_product_group((2, 2)), block_group(5)],
    ids=lambda g: g.name,
)
def test_group_axioms_sampled(group):
    rng = np.random.default_rng(7)
    elems = ball_elements(group, 3)
    e = group.identity
    for _ in range(50):
        a, b, c = (elems[rng.integers(0, len(elems))] for _ in range(3))
        assert group.op(group.op(a, b), c) == group.op(a, group.op(b, c))
        assert group.op(a, e) == a and group.op(e, a) == a
        assert group.op(a, group.inv(a)) == e


def test_generators_symmetry_enforced():
    from torlicz.groups import Group

    with pytest.raises(ValueError):
        Group(
            name="bad",
            op=lambda a, b: (a[0] + b[0],),
            inv=lambda a: (-a[0],),
            identity=(0,),
            generators=((1,),),  # missing the inverse
        )


def test_word_length_budget_error():
    group = heisenberg_group()
    with pytest.raises(BudgetError):
        word_length(group, (50, 0, 0), max_radius=5)


def test_ball_sizes_element_budget():
    with pytest.raises(BudgetError):
        ball_sizes(integer_lattice(3), 12, max_elements=100)


def test_parse_group_round_trip():
    for spec in ["Z^d:2", "H3", "Zn:5", "Zn:2x2", "Block:4"]:
        assert parse_group(spec).name == spec
    with pytest.raises(ValueError):
        parse_group("F2")


def test_element_serialization():
    group = cyclic_group(4)
    assert element_from_list(group, [7]) == (3,)  # canonical mod 4
    assert element_to_list((3,)) == [3]
    with pytest.raises(ValueError):
        element_from_list(group, [1, 2])


def test_block_group_chain():
    group = block_group(4)
    assert block_index(group, group.identity) == 0
    assert block_index(group, (1, 0, 0, 0)) == 1
    assert block_index(group, (1, 0, 1, 0)) == 3
    assert group.order == 16
    # word length is the Hamming weight
    assert word_length(group, (1, 1, 0, 1)) == 3


def test_cyclic_product_word_length():
    group = cyclic_product_group((4, 4))
    oracle = bfs_oracle(group, 8)
    for g, d in oracle.items():
        assert word_length(group, g) == d
