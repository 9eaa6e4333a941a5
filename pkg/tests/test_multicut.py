import random

import pytest

from chordalkit.certify import is_multicut
from chordalkit.generators import gen_multicut_from_vc, random_pairs
from chordalkit.graph import Graph, build_tree_representation, find_induced_h_ell
from chordalkit.multicut import MulticutInstance, solve_interval_multicut, solve_multicut_xp
from chordalkit.oracles import brute_mc, brute_vertex_cover

from conftest import random_chordal, size_of


def xp(g, pairs, k=None, tr=None):
    return solve_multicut_xp(MulticutInstance.make(g, pairs, k, tr or build_tree_representation(g)))


def test_path_pair_needs_one_inner_vertex():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert xp(g, [(0, 3)]).size == 1
    assert xp(g, [(0, 3)], 0) is None
    assert solve_interval_multicut(g, [(0, 3)], build_tree_representation(g)).size == 1


def test_adjacent_pair_is_no():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert xp(g, [(0, 1)]) is None
    assert solve_interval_multicut(g, [(0, 1)], build_tree_representation(g)) is None


def test_no_pairs_is_empty():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert xp(g, []).size == 0


def test_terminals_are_never_deleted():
    # the only inner vertex of 0-1-2 is itself a terminal of another pair
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert xp(g, [(0, 2), (1, 3)]) is None
    assert brute_mc(g, [(0, 2), (1, 3)]) is None


def test_pair_order_is_irrelevant():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert xp(g, [(4, 0)]).size == xp(g, [(0, 4)]).size == 1


@pytest.mark.parametrize("seed", range(80))
def test_interval_solver_agrees_with_xp_and_oracle(seed):
    rng = random.Random(seed)
    gi = random_chordal(seed + 900, 3, 12, leaves=(2, 2))
    g = gi.graph
    pairs = random_pairs(rng, g, rng.randint(1, 5))
    a = solve_interval_multicut(g, pairs, gi.tr)
    assert size_of(a) == size_of(xp(g, pairs, tr=gi.tr)) == size_of(brute_mc(g, pairs))
    if a is not None:
        assert is_multicut(g, pairs, a.vertices)


def test_interval_solver_rejects_branching_host():
    edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
    g = Graph.from_edges(7, edges)
    with pytest.raises(ValueError):
        solve_interval_multicut(g, [(2, 4)], build_tree_representation(g))


@pytest.mark.parametrize("seed", range(150))
def test_xp_matches_oracle_for_small_leafage(seed):
    rng = random.Random(seed)
    gi = random_chordal(seed + 1200, 3, 12, leaves=(2, 4))
    g = gi.graph
    pairs = random_pairs(rng, g, rng.randint(1, 6))
    want = brute_mc(g, pairs)
    got = xp(g, pairs, tr=gi.tr)
    assert size_of(got) == size_of(want)
    if want is not None:
        ends = {v for p in pairs for v in p}
        assert not got.vertices & ends and is_multicut(g, pairs, got.vertices)
        assert xp(g, pairs, want.size, gi.tr).size == want.size
        if want.size:
            assert xp(g, pairs, want.size - 1, gi.tr) is None


@pytest.mark.parametrize("seed", range(30))
def test_vertex_cover_stars_need_cover_plus_one(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
    src = Graph.from_edges(n, edges)
    inst = gen_multicut_from_vc(src)
    vc = brute_vertex_cover(src).size
    assert find_induced_h_ell(inst.graph, 3) is None
    sol = xp(inst.graph, inst.pairs, tr=inst.tr)
    assert sol.size == vc + 1 == brute_mc(inst.graph, inst.pairs).size
