import random

import pytest

from chordalkit.certify import is_connected_dominating_set, is_red_blue_dominating, is_steiner_vertex_set
from chordalkit.graph import (
    Graph,
    build_tree_representation,
    find_induced_h_ell,
    is_chordal,
    leaf_count,
    validate_tree_representation,
)
from chordalkit.oracles import OracleBudget, brute_cds, brute_ds, brute_rbds, brute_steiner
from chordalkit.variants import (
    ConnectedRbdsInstance,
    SteinerInstance,
    connected_rbds_to_rbds,
    contract_terminal_components,
    solve_cds,
    solve_connected_rbds,
    solve_ds,
    solve_steiner,
    steiner_to_connected_rbds,
    steiner_to_rbds_pendant,
)

from conftest import random_chordal, size_of

BIG = OracleBudget(max_n=24)


def rep(g):
    return build_tree_representation(g)


def random_connected_rbds(seed, n_hi=11):
    rng = random.Random(seed)
    gi = random_chordal(seed, 3, n_hi)
    red = frozenset(v for v in range(gi.graph.n) if rng.random() < 0.65)
    blue = frozenset(range(gi.graph.n)) - red
    return ConnectedRbdsInstance(gi.graph, red, blue, None, gi.tr)


def test_star_reduction_keeps_optimum(star3):
    inst = ConnectedRbdsInstance(star3, frozenset({0}), frozenset({1, 2, 3}), None, rep(star3))
    reduced = connected_rbds_to_rbds(inst).instance
    assert brute_rbds(reduced.g, reduced.red, reduced.blue).size == 1
    assert solve_connected_rbds(inst).size == 1


def test_red_path_dominating_blue_path():
    # reds 0..3 form a path, blue i hangs off red i
    edges = [(i, i + 1) for i in range(3)] + [(i, 4 + i) for i in range(4)]
    g = Graph.from_edges(8, edges)
    inst = ConnectedRbdsInstance(g, frozenset(range(4)), frozenset(range(4, 8)), None, rep(g))
    assert solve_connected_rbds(inst).size == brute_rbds(g, inst.red, inst.blue, connected=True).size == 4


@pytest.mark.parametrize("seed", range(100))
def test_connected_reduction_keeps_optimum_and_leaf_bound(seed):
    inst = random_connected_rbds(seed)
    reduced = connected_rbds_to_rbds(inst)
    rb = reduced.instance
    assert validate_tree_representation(rb.g, rb.tr).ok
    if len(rb.tr.tree) > 1:
        assert leaf_count(rb.tr.tree) <= leaf_count(inst.tr.tree)
    want = size_of(brute_rbds(inst.g, inst.red, inst.blue, connected=True))
    assert size_of(solve_connected_rbds(inst)) == want
    if rb.g.n <= 16:
        sol = brute_rbds(rb.g, rb.red, rb.blue)
        assert size_of(sol) == want
        if sol is not None and inst.blue:
            lifted = reduced.lift(sol.vertices)
            assert is_red_blue_dominating(inst.g, inst.red, inst.blue, lifted)
            assert inst.g.is_connected_set(lifted)


def test_adjacent_terminals_contract_to_one():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    out = contract_terminal_components(SteinerInstance(g, frozenset({0, 1}), 5, rep(g)))
    assert len(out.instance.terminals) == 1 and out.instance.k == 4
    assert out.lift(out.instance.terminals) == {0, 1}


def test_triangle_of_terminals_contracts_to_one():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    out = contract_terminal_components(SteinerInstance(g, frozenset({0, 1, 2}), 6, rep(g)))
    assert len(out.instance.terminals) == 1 and out.instance.k == 4
    assert out.instance.g.n == 2


@pytest.mark.parametrize("seed", range(60))
def test_contraction_keeps_optimum(seed):
    rng = random.Random(seed)
    gi = random_chordal(seed, 3, 12)
    g = gi.graph
    terms = frozenset(rng.sample(range(g.n), rng.randint(1, min(g.n, 5))))
    out = contract_terminal_components(SteinerInstance(g, terms, None, gi.tr))
    small = out.instance
    assert is_chordal(small.g) is not None and validate_tree_representation(small.g, small.tr).ok
    shrink = g.n - small.g.n
    a, b = brute_steiner(g, terms), brute_steiner(small.g, small.terminals)
    assert size_of(a) == (None if b is None else b.size + shrink)
    if b is not None:
        assert is_steiner_vertex_set(g, terms, out.lift(b.vertices))


def test_path_terminals_to_connected_red_blue():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    bridge = steiner_to_connected_rbds(SteinerInstance(g, frozenset({0, 2}), 3, rep(g)))
    crb = bridge.instance
    assert crb.k == 1
    sol = brute_rbds(crb.g, crb.red, crb.blue, connected=True)
    assert sol.size == 1
    assert bridge.lift(sol.vertices) == {0, 1, 2}


def test_twin_reduction_needs_independent_terminals():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        steiner_to_connected_rbds(SteinerInstance(g, frozenset({0, 1}), 2, rep(g)))


def test_pendant_reduction_on_a_path():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    bridge = steiner_to_rbds_pendant(SteinerInstance(g, frozenset({0, 2}), 3, rep(g)))
    crb = bridge.instance
    assert crb.k == 3
    sol = brute_rbds(crb.g, crb.red, crb.blue, connected=True)
    assert sol.vertices == {0, 1, 2}
    assert solve_connected_rbds(crb).size == 3


def test_single_terminal_steiner_is_one():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert solve_steiner(g, {2}, None, rep(g)).vertices == {2}
    pend = steiner_to_rbds_pendant(SteinerInstance(g, frozenset({2}), 1, rep(g))).instance
    assert solve_connected_rbds(pend).size == 1


@pytest.mark.parametrize("seed", range(80))
def test_reductions_keep_h_freeness_bounds(seed):
    rng = random.Random(seed)
    gi = random_chordal(seed + 300, 3, 10)
    g = gi.graph
    if find_induced_h_ell(g, 3) is not None:
        return
    red = frozenset(v for v in range(g.n) if rng.random() < 0.6)
    crb = ConnectedRbdsInstance(g, red, frozenset(range(g.n)) - red, None, gi.tr)
    assert find_induced_h_ell(connected_rbds_to_rbds(crb).instance.g, 3) is None
    terms = frozenset(rng.sample(range(g.n), rng.randint(1, min(g.n, 4))))
    small = contract_terminal_components(SteinerInstance(g, terms, None, gi.tr)).instance
    assert find_induced_h_ell(small.g, 4) is None
    assert find_induced_h_ell(steiner_to_rbds_pendant(small).instance.g, 5) is None


def test_connected_domination_of_a_star(star3):
    assert solve_cds(star3, None, rep(star3)).vertices == {0}
    assert solve_cds(star3, 0, rep(star3)) is None


def test_steiner_on_a_path():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert solve_steiner(g, {0, 2}, None, rep(g)).vertices == {0, 1, 2}
    assert solve_steiner(g, {0, 2}, 2, rep(g)) is None


def test_disconnected_inputs_are_no():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert solve_cds(g, None, rep(g)) is None
    assert solve_steiner(g, {0, 3}, None, rep(g)) is None
    assert solve_steiner(g, {0, 1}, None, rep(g)).size == 2


def test_hfree_method_needs_a_free_graph():
    net = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    with pytest.raises(ValueError):
        solve_ds(net, None, rep(net), "hfree", 3)
    with pytest.raises(ValueError):
        solve_ds(net, None, rep(net), "hfree")
    assert solve_ds(net, None, rep(net), "hfree", 4).size == 3


@pytest.mark.parametrize("method", ["fpt", "hfree"])
@pytest.mark.parametrize("seed", range(50))
def test_drivers_match_oracles_for_every_budget(seed, method):
    rng = random.Random(seed)
    gi = random_chordal(seed + 700, 3, 10)
    g, tr = gi.graph, gi.tr
    ell = 3 if method == "hfree" else None
    if method == "hfree" and find_induced_h_ell(g, 3) is not None:
        return
    terms = frozenset(rng.sample(range(g.n), rng.randint(0, min(g.n, 4))))
    red = frozenset(v for v in range(g.n) if rng.random() < 0.6)
    crb = ConnectedRbdsInstance(g, red, frozenset(range(g.n)) - red, None, tr)
    cases = [
        (lambda k: solve_ds(g, k, tr, method, ell), brute_ds(g), lambda s: True),
        (lambda k: solve_cds(g, k, tr, method, ell), brute_cds(g), lambda s: is_connected_dominating_set(g, s)),
        (lambda k: solve_steiner(g, terms, k, tr, method, ell), brute_steiner(g, terms),
         lambda s: is_steiner_vertex_set(g, terms, s)),
        (lambda k: solve_connected_rbds(ConnectedRbdsInstance(g, crb.red, crb.blue, k, tr), method, ell),
         brute_rbds(g, crb.red, crb.blue, connected=True),
         lambda s: not crb.blue or (is_red_blue_dominating(g, crb.red, crb.blue, s) and g.is_connected_set(s))),
    ]
    for solve, want, check in cases:
        assert size_of(solve(None)) == size_of(want)
        for k in range(g.n + 1):
            sol = solve(k)
            assert (sol is not None) == (want is not None and want.size <= k)
            if sol is not None:
                assert sol.size <= k and check(sol.vertices)
