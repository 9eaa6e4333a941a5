import random
from itertools import combinations

import pytest

from chordalkit.domset_fpt import RedBlueInstance
from chordalkit.domset_hfree import INF, PartitionCapError, _Dp, fill_tables, solve_rbds_hfree
from chordalkit.generators import gen_random_chordal
from chordalkit.graph import Graph, TreeRepresentation, find_induced_h_ell, graph_from_models
from chordalkit.oracles import brute_rbds

from conftest import size_of


def hfree_instance(seed: int, ell: int, n_range=(6, 10)):
    """First H_ell-free instance at or after ``seed``, with every blue dominable."""
    while True:
        rng = random.Random(seed)
        n = rng.randint(*n_range)
        gi = gen_random_chordal(
            n, seed, leafage_target=rng.randint(2, 4), red_blue=True,
            tree_size=rng.randint(4, 12), max_model=rng.randint(1, 4),
        )
        if find_induced_h_ell(gi.graph, ell) is None:
            blue = frozenset(v for v in gi.blue if gi.graph.adj[v] & gi.red)
            red = frozenset(range(n)) - blue
            return seed, RedBlueInstance(gi.graph, red, blue, None, gi.tr)
        seed += 1


def least_dominating(dp: _Dp, pool, fixed, need):
    pool = sorted(pool)
    for size in range(len(pool) + 1):
        for extra in combinations(pool, size):
            chosen = set(fixed) | set(extra)
            if need <= dp.nbhd(chosen):
                return len(chosen)
    return INF


def t1_semantic(dp: _Dp, node, key):
    need = dp.classes.inter[node] & dp.blue
    return least_dominating(dp, dp.inter_r(node) - dp.contain_r(node), key, need)


def t2_semantic(dp: _Dp, node, key):
    need = (dp.classes.under[node] & dp.blue) | (dp.nbhd(key) & dp.contain_b(node))
    return least_dominating(dp, dp.under_r(node), (), need)


def minimum_solutions(inst: RedBlueInstance):
    opt = brute_rbds(inst.g, inst.red, inst.blue).size
    reds = sorted(inst.red)
    for pick in combinations(reds, opt):
        covered = set().union(*[inst.g.adj[r] for r in pick]) if pick else set()
        if inst.blue <= covered:
            yield set(pick)


def test_leaf_entries():
    models = {0: {0}, 1: {0, 1}, 2: {1}}
    g = graph_from_models(3, models)
    tr = TreeRepresentation.build([0, 1], [(0, 1)], models, 0)
    inst = RedBlueInstance(g, frozenset({0, 1}), frozenset({2}), None, tr)
    tables, _ = fill_tables(inst, 2)
    assert tables.value1(1, (1,)) == 1
    assert tables.value2(1, ()) == 0


def test_internal_node_with_nothing_below_costs_its_key():
    # node 0 has child 1, and no model lies in the subtree of 1 except through 0
    models = {0: {0, 1}, 1: {0}}
    g = graph_from_models(2, models)
    tr = TreeRepresentation.build([0, 1], [(0, 1)], models, 0)
    inst = RedBlueInstance(g, frozenset({0}), frozenset({1}), None, tr)
    tables, _ = fill_tables(inst, 2)
    assert tables.value1(0, (0,)) == 1


def test_single_child_fully_dominated_by_key():
    # red x spans both nodes and sees the blue hanging below
    models = {0: {0, 1}, 1: {1}, 2: {0}}
    g = graph_from_models(3, models)
    tr = TreeRepresentation.build([0, 1], [(0, 1)], models, 0)
    inst = RedBlueInstance(g, frozenset({0}), frozenset({1, 2}), None, tr)
    tables, _ = fill_tables(inst, 2)
    assert tables.value1(0, (0,)) == 1 + 0


def test_no_key_and_no_demand_sums_child_minima():
    # root node 0 with two leaf children, each holding a red and a blue of its own
    models = {0: {1}, 1: {1}, 2: {2}, 3: {2}, 4: {0}}
    g = graph_from_models(5, models)
    tr = TreeRepresentation.build([0, 1, 2], [(0, 1), (0, 2)], models, 0)
    inst = RedBlueInstance(g, frozenset({0, 2, 4}), frozenset({1, 3}), None, tr)
    tables, _ = fill_tables(inst, 2)
    assert tables.value2(0, ()) == 2


def test_single_demanded_blue_takes_the_child_minimum():
    # red y lies below node 0 and sees the blue containing node 0
    models = {0: {1}, 1: {0, 1}, 2: {0}}
    g = graph_from_models(3, models)
    tr = TreeRepresentation.build([0, 1], [(0, 1)], models, 0)
    inst = RedBlueInstance(g, frozenset({0, 2}), frozenset({1}), None, tr)
    tables, _ = fill_tables(inst, 2)
    assert tables.value2(0, (0,)) == 1


def test_partition_cap_is_enforced():
    # one red below a node containing many blues it sees
    blues = 6
    models = {0: {1}}
    models.update({1 + i: {0, 1} for i in range(blues)})
    g = graph_from_models(1 + blues, models)
    tr = TreeRepresentation.build([0, 1], [(0, 1)], models, 0)
    inst = RedBlueInstance(g, frozenset({0}), frozenset(range(1, 1 + blues)), None, tr)
    with pytest.raises(PartitionCapError):
        solve_rbds_hfree(inst, 1, partition_cap=3, check_free=False)
    assert solve_rbds_hfree(inst, 1, partition_cap=blues, check_free=False).size == 1


def test_rejects_graph_with_forbidden_split_subgraph():
    net = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    from chordalkit.graph import build_tree_representation

    inst = RedBlueInstance(net, frozenset({0, 1, 2}), frozenset({3, 4, 5}), None, build_tree_representation(net))
    with pytest.raises(ValueError):
        solve_rbds_hfree(inst, 3)
    assert solve_rbds_hfree(inst, 4).size == 3


@pytest.mark.parametrize("seed", range(60))
def test_entries_are_sound_upper_bounds(seed):
    _, inst = hfree_instance(1000 + 37 * seed, 3)
    dp = _Dp(inst, 3, 16)
    tables = dp.run()
    for (node, key), (value, wit) in tables.t1.items():
        assert value >= t1_semantic(dp, node, key)
        assert len(wit) == value and set(key) <= wit
    for (node, key), (value, wit) in tables.t2.items():
        assert value >= t2_semantic(dp, node, key)
        assert len(wit) == value


@pytest.mark.parametrize("ell", [2, 3])
@pytest.mark.parametrize("seed", range(40))
def test_entries_are_tight_at_keys_read_off_a_minimum_solution(seed, ell):
    _, inst = hfree_instance(5000 + 41 * seed, ell)
    dp = _Dp(inst, ell, 16)
    tables = dp.run()
    for sol in minimum_solutions(inst):
        for node in dp.order:
            node_reds = sol & dp.contain_r(node)
            if node_reds:
                key = tuple(sorted(node_reds))
                assert tables.value1(node, key) <= len(sol & dp.inter_r(node))
                continue
            below = sol & dp.under_r(node)
            target = dp.nbhd(below) & dp.contain_b(node)
            for size in range(len(below) + 1):
                keys = [y for y in combinations(sorted(below), size) if target <= dp.nbhd(y)]
                if keys:
                    break
            for key in keys:
                assert tables.value2(node, key) <= len(below)


@pytest.mark.parametrize("seed", range(60))
def test_minimum_solutions_use_few_reds_per_node(seed):
    _, inst = hfree_instance(9000 + 29 * seed, 3)
    dp = _Dp(inst, 3, 16)
    for sol in minimum_solutions(inst):
        for node in dp.order:
            assert len(sol & dp.contain_r(node)) <= 3


def test_entries_are_not_minimal_over_every_split_of_demand():
    """The recurrence charges each demanded blue to a child meeting the key,
    so an entry may exceed the cheapest unrestricted dominator and a larger
    demand can be cheaper than a smaller one."""
    _, inst = hfree_instance(1063, 3, (6, 11))
    found_gap = False
    dp = _Dp(inst, 3, 16)
    tables = dp.run()
    for (node, key), (value, _) in tables.t2.items():
        if value > t2_semantic(dp, node, key):
            found_gap = True
    assert found_gap
    # key (3,) demands a subset of what key (2, 3) demands, yet costs more
    assert tables.value2(0, (3,)) == 2 > tables.value2(0, (2, 3)) == 1
    assert t2_semantic(dp, 0, (3,)) == 1
    assert solve_rbds_hfree(inst, 3).size == brute_rbds(inst.g, inst.red, inst.blue).size


@pytest.mark.parametrize("ell", [2, 3])
@pytest.mark.parametrize("seed", range(80))
def test_solver_matches_oracle(seed, ell):
    _, inst = hfree_instance(20000 + 53 * seed, ell, (3, 12))
    got = solve_rbds_hfree(inst, ell)
    assert size_of(got) == size_of(brute_rbds(inst.g, inst.red, inst.blue))
