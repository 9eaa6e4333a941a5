import random

import pytest

from chordalkit.certify import is_red_blue_dominating
from chordalkit.domset_fpt import (
    RedBlueInstance,
    RestrictedInstance,
    apply_reduction_rules,
    branch_to_restricted,
    ds_to_rbds,
    greedy_select_blue,
    greedy_select_red,
    is_restricted,
    measure,
    restricted_violations,
    solve_rbds,
    solve_restricted,
)
from chordalkit.domset_fpt import _counters
from chordalkit.graph import Graph, TreeRepresentation, build_tree_representation, leaf_count, tree_from_edges
from chordalkit.oracles import brute_ds, brute_rbds

from conftest import dominable_colouring, random_chordal, size_of

SPIDER_EDGES = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]


def restricted(edges, models, red, blue, k=None):
    nodes = {x for e in edges for x in e}
    tree = {x: frozenset(nb) for x, nb in tree_from_edges(nodes, edges).items()}
    return RestrictedInstance(tree, {v: frozenset(m) for v, m in models.items()}, frozenset(red), frozenset(blue), k)


def restricted_optimum(inst: RestrictedInstance):
    g, order = inst.to_graph()
    idx = {v: i for i, v in enumerate(order)}
    return size_of(brute_rbds(g, [idx[r] for r in inst.red], [idx[b] for b in inst.blue]))


def random_rbds(seed, n_hi=12):
    rng = random.Random(seed)
    gi = random_chordal(seed, 3, n_hi, red_blue=True)
    red, blue = gi.red, gi.blue
    if rng.random() < 0.8:
        red, blue = dominable_colouring(rng, gi)
    return RedBlueInstance(gi.graph, red, blue, None, gi.tr)


def test_single_vertex_becomes_red_blue_edge():
    g = Graph.from_edges(1, [])
    rb = ds_to_rbds(g, None, build_tree_representation(g))
    assert rb.g.n == 2 and rb.g.edges() == [(0, 1)]
    assert solve_rbds(rb).size == 1


def test_edge_becomes_four_vertices_with_optimum_one():
    g = Graph.from_edges(2, [(0, 1)])
    rb = ds_to_rbds(g, None, build_tree_representation(g))
    assert rb.g.n == 4
    assert brute_rbds(rb.g, rb.red, rb.blue).size == 1
    assert solve_rbds(rb).size == 1


@pytest.mark.parametrize("seed", range(40))
def test_ds_reduction_keeps_optimum_and_tree(seed):
    gi = random_chordal(seed, 1, 8)
    rb = ds_to_rbds(gi.graph, None, gi.tr)
    assert leaf_count(rb.tr.tree) <= leaf_count(gi.tr.tree)
    assert brute_rbds(rb.g, rb.red, rb.blue).size == brute_ds(gi.graph).size


def test_partition_is_validated():
    g = Graph.from_edges(2, [(0, 1)])
    tr = build_tree_representation(g)
    with pytest.raises(ValueError):
        RedBlueInstance(g, frozenset({0}), frozenset({0, 1}), None, tr)


def test_measure_of_interval_instance_is_two():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    inst = RedBlueInstance(g, frozenset({1}), frozenset({0, 2}), None, build_tree_representation(g))
    assert measure(inst) == 2


@pytest.mark.parametrize("leaves", [3, 4, 5])
def test_measure_of_bichromatic_star_centre(leaves):
    edges = [(0, i) for i in range(1, leaves + 1)]
    models = {0: {0, 1}, 1: {0, 2}}
    tr = TreeRepresentation.build(range(leaves + 1), edges, models, 0, allow_empty=True)
    g = Graph.from_edges(2, [(0, 1)])
    inst = RedBlueInstance(g, frozenset({0}), frozenset({1}), None, tr)
    assert measure(inst) == leaves + 2


def test_bichromatic_star_centre_branches_twice():
    models = {0: {0, 1}, 1: {0, 2}, 2: {3}}
    from chordalkit.graph import graph_from_models

    g = graph_from_models(3, models)
    tr = TreeRepresentation.build(range(4), [(0, 1), (0, 2), (0, 3)], models, 0)
    inst = RedBlueInstance(g, frozenset({0, 2}), frozenset({1}), None, tr)
    steps = []
    out = branch_to_restricted(inst, lambda before, after: steps.append((before, after)))
    assert len(out) == 2
    for leaf in out:
        f_t, _, _ = _counters(leaf.tree, leaf.models, leaf.red, leaf.blue)
        assert f_t == [] and is_restricted(leaf)
    assert all(after < before for before, after in steps)


def test_restricted_instance_branches_to_itself():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    inst = RedBlueInstance(g, frozenset({1}), frozenset({0, 2}), None, build_tree_representation(g))
    out = branch_to_restricted(inst)
    assert len(out) == 1
    assert out[0].models == dict(inst.tr.models) and out[0].red == inst.red


@pytest.mark.parametrize("seed", range(120))
def test_branching_lowers_measure_and_is_sound(seed):
    inst = random_rbds(seed, 11)
    steps = []
    leaves = branch_to_restricted(inst, lambda before, after: steps.append((before, after)))
    assert all(after < before for before, after in steps)
    for leaf in leaves:
        assert restricted_violations(leaf.tree, leaf.models, leaf.red, leaf.blue) == []
    f_t, f_r, f_b = _counters(inst.tr.tree, inst.tr.models, inst.red, inst.blue)
    assert len(f_t) + len(f_r) + len(f_b) <= 3 * leaf_count(inst.tr.tree)
    optima = [restricted_optimum(leaf) for leaf in leaves]
    best = min((o for o in optima if o is not None), default=None)
    assert best == size_of(brute_rbds(inst.g, inst.red, inst.blue))


@pytest.mark.parametrize("seed", range(80))
def test_every_rule_and_greedy_step_preserves_the_optimum(seed):
    inst = random_rbds(seed + 500, 10)
    checks = []

    def checker(before, after):
        a = restricted_optimum(before.freeze())
        b = restricted_optimum(after.freeze())
        spent = len(after.chosen) - len(before.chosen)
        if a is not None:
            assert b is not None and b + spent == a
        checks.append(1)

    best = None
    for leaf in branch_to_restricted(inst):
        sol = solve_restricted(leaf, checker=checker)
        if sol is not None and (best is None or sol.size < best.size):
            best = sol
    assert size_of(best) == size_of(brute_rbds(inst.g, inst.red, inst.blue))


def test_blue_without_red_neighbour_is_no():
    inst = restricted([(0, 1)], {0: {0}, 1: {1}}, red={0}, blue={1})
    assert apply_reduction_rules(inst) is None
    assert solve_restricted(inst) is None


def test_nested_blue_models_drop_the_outer_one():
    inst = restricted([(0, 1), (1, 2)], {"u": {1}, "v": {0, 1, 2}, "r": {1}}, red={"r"}, blue={"u", "v"})
    out = apply_reduction_rules(inst)
    assert out is not None and "v" not in out.blue and "u" in out.blue


def test_red_greedy_with_universal_centre_red_spends_one():
    models = {"r": {0, 1, 3, 5}, "b1": {1}, "b2": {3}, "b3": {5}, "c1": {2}, "c2": {4}, "c3": {6}}
    inst = restricted(SPIDER_EDGES, models, red={"r", "c1", "c2", "c3"}, blue={"b1", "b2", "b3"})
    partial, rest = greedy_select_red(inst)
    assert partial.chosen == {"r"} and partial.spent == 1
    assert not rest.blue


def test_blue_greedy_hit_by_one_critical_red_spends_one():
    # the far red sits on the root side and misses the centre blue
    models = {"B": {0, 1, 3, 5}, "far": {2}, "r2": {3, 4}, "r3": {6}}
    inst = restricted(SPIDER_EDGES, models, red={"far", "r2", "r3"}, blue={"B"})
    partial, rest = greedy_select_blue(inst)
    assert partial.chosen == {"r2"} and partial.spent == 1
    assert not rest.blue


def test_greedy_steps_reject_the_wrong_colour():
    models = {"B": {0, 1, 3, 5}, "r1": {1, 2}, "r2": {4}, "r3": {6}}
    inst = restricted(SPIDER_EDGES, models, red={"r1", "r2", "r3"}, blue={"B"})
    with pytest.raises(ValueError):
        greedy_select_red(inst)


def test_interval_instance_with_dominating_centre():
    inst = restricted([(0, 1), (1, 2)], {"r": {0, 1, 2}, "a": {0}, "b": {2}, "s": {0}}, red={"r", "s"}, blue={"a", "b"})
    assert solve_restricted(inst).size == 1
    empty = restricted([(0, 1)], {"r": {0}}, red={"r"}, blue=set())
    assert solve_restricted(empty).size == 0


def test_star_with_red_centre(star3):
    tr = build_tree_representation(star3)
    assert solve_rbds(RedBlueInstance(star3, frozenset({0}), frozenset({1, 2, 3}), None, tr)).vertices == {0}


def test_isolated_blue_is_no():
    g = Graph.from_edges(2, [])
    tr = build_tree_representation(g)
    assert solve_rbds(RedBlueInstance(g, frozenset({0}), frozenset({1}), None, tr)) is None


def test_non_restricted_input_rejected_by_restricted_solver():
    models = {"x": {0, 1}, "y": {0, 3}}
    inst = restricted([(0, 1), (0, 2), (0, 3)], models, red={"x"}, blue={"y"})
    with pytest.raises(ValueError):
        solve_restricted(inst)


@pytest.mark.parametrize("seed", range(150))
def test_solver_matches_oracle_for_every_budget(seed):
    inst = random_rbds(seed + 2000, 13)
    want = size_of(brute_rbds(inst.g, inst.red, inst.blue))
    got = solve_rbds(inst)
    assert size_of(got) == want
    if got is not None:
        assert got.vertices <= inst.red and is_red_blue_dominating(inst.g, inst.red, inst.blue, got.vertices)
    for k in range(inst.g.n + 2):
        from dataclasses import replace

        sol = solve_rbds(replace(inst, k=k))
        assert (sol is not None) == (want is not None and want <= k)
