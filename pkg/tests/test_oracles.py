import random

import pytest

from chordalkit.graph import Graph
from chordalkit.oracles import (
    OracleBudget,
    OracleLimitError,
    brute_cds,
    brute_domination,
    brute_ds,
    brute_mc,
    brute_mwc,
    brute_rbds,
    brute_steiner,
    brute_vertex_cover,
)

from conftest import random_chordal, size_of

SUBDIVIDED_STAR = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_domination_examples(star3):
    assert brute_ds(star3).size == 1
    assert brute_domination("ds", star3).size == 1
    assert brute_rbds(Graph.from_edges(2, []), [0], [1]) is None
    assert brute_cds(path(5)).size == 3
    assert brute_steiner(path(3), [0, 2]).size == 3
    assert brute_domination("steiner", path(3), terminals=[0, 2]).size == 3


def test_cut_examples(path3):
    assert brute_mwc(path3, [0, 2]).vertices == {1}
    assert brute_mwc(path3, [0, 1]) is None
    # deleting the centre separates all three leaves at once
    assert brute_mwc(SUBDIVIDED_STAR, [2, 4, 6]).size == 1
    assert brute_mc(path(4), [(0, 3)]).size == 1
    assert brute_mc(path3, [(0, 1)]) is None


def test_crossing_pairs_on_a_path():
    p = path(6)
    # windows 0..4 and 1..5 share the deletable vertices 2 and 3
    assert brute_mc(p, [(0, 4), (1, 5)]).size == 1
    # disjoint windows need one vertex each
    assert brute_mc(p, [(0, 2), (3, 5)]).size == 2


def test_cap_is_enforced():
    with pytest.raises(OracleLimitError):
        brute_ds(path(17))
    assert brute_ds(path(17), OracleBudget(max_n=17)).size == 6


def relabel(g: Graph, perm):
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


@pytest.mark.parametrize("seed", range(40))
def test_oracles_ignore_vertex_names(seed):
    gi = random_chordal(seed, 3, 10, red_blue=True)
    g = gi.graph
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    h = relabel(g, perm)
    mapped = lambda vs: [perm[v] for v in vs]
    assert brute_ds(g).size == brute_ds(h).size
    assert size_of(brute_cds(g)) == size_of(brute_cds(h))
    assert size_of(brute_rbds(g, gi.red, gi.blue)) == size_of(brute_rbds(h, mapped(gi.red), mapped(gi.blue)))
    terms = list(range(0, g.n, 3))
    assert size_of(brute_mwc(g, terms)) == size_of(brute_mwc(h, mapped(terms)))
    assert brute_vertex_cover(g).size == brute_vertex_cover(h).size


@pytest.mark.parametrize("seed", range(60))
def test_adding_an_edge_never_helps_cuts_or_hurts_domination(seed):
    rng = random.Random(seed)
    gi = random_chordal(seed, 4, 10)
    g = gi.graph
    non_edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    if not non_edges:
        return
    h = Graph.from_edges(g.n, g.edges() + [rng.choice(non_edges)])
    assert brute_ds(h).size <= brute_ds(g).size
    terms = rng.sample(range(g.n), 2)
    before, after = brute_mwc(g, terms), brute_mwc(h, terms)
    if before is None:
        assert after is None
    elif after is not None:
        assert after.size >= before.size
    pairs = [tuple(terms)]
    before, after = brute_mc(g, pairs), brute_mc(h, pairs)
    if after is not None:
        assert before is not None and after.size >= before.size
