import pytest

from chordalkit.graph import Graph, build_tree_representation, validate_tree_representation
from chordalkit.io import (
    FormatError,
    format_colors,
    format_graph,
    format_pairs,
    format_terminals,
    format_tree_rep,
    parse_colors,
    parse_graph,
    parse_pairs,
    parse_terminals,
    parse_tree_rep,
)

from conftest import random_chordal


@pytest.mark.parametrize("seed", range(25))
def test_graph_and_representation_round_trip(seed):
    gi = random_chordal(seed)
    g = parse_graph(format_graph(gi.graph))
    assert g.adj == gi.graph.adj
    tr = parse_tree_rep(format_tree_rep(gi.tr), g.n)
    assert validate_tree_representation(g, tr).ok
    assert {v: len(m) for v, m in tr.models.items()} == {v: len(m) for v, m in gi.tr.models.items()}


def test_non_integer_tree_nodes_are_renumbered():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    tr = build_tree_representation(g)
    text = format_tree_rep(tr)
    assert validate_tree_representation(g, parse_tree_rep(text, 3)).ok


def test_comments_and_blank_lines_are_skipped():
    g = parse_graph("c hello\n# note\n\np 3 2\ne 1 2\n#x\ne 2 3\n")
    assert g.edges() == [(0, 1), (1, 2)]


def test_side_files_round_trip():
    red, blue = frozenset({0, 2}), frozenset({1, 3})
    assert parse_colors(format_colors(red, blue), 4) == (red, blue)
    assert parse_terminals(format_terminals({3, 1}), 4) == {1, 3}
    assert parse_pairs(format_pairs([(2, 0), (1, 3)]), 4) == ((0, 2), (1, 3))
    assert parse_pairs("tp 3 1\n", 4) == ((0, 2),)


@pytest.mark.parametrize(
    "text,line",
    [
        ("p 3 1\ne 1 x\n", 2),
        ("p 3 1\ne 1 4\n", 2),
        ("p 3 1\ne 2 2\n", 2),
        ("e 1 2\n", 1),
        ("p 3 1\np 3 1\n", 2),
        ("p 3 1\nq 1 2\n", 2),
        ("p 3 2\ne 1 2\n", 0),
        ("", 0),
    ],
)
def test_graph_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as info:
        parse_graph(text, "in.graph")
    assert info.value.line == line and info.value.source == "in.graph"
    assert str(info.value).startswith(f"in.graph:{line}:")


@pytest.mark.parametrize(
    "text,line",
    [
        ("tn 1\nm 1 1\nm 1 1\nm 2 1\n", 3),
        ("tn 1\nte 1 2\nm 1 1\nm 2 1\n", 0),
        ("tn 1\nm 1 1\n", 0),
        ("tn 1\ntn 1\n", 2),
        ("tn 1\nm 1 7\nm 2 1\n", 0),
        ("tn 1\nm 1\n", 2),
    ],
)
def test_tree_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as info:
        parse_tree_rep(text, 2)
    assert info.value.line == line


def test_colour_errors():
    with pytest.raises(FormatError) as info:
        parse_colors("r 1\nb 1\n", 2)
    assert info.value.line == 2
    with pytest.raises(FormatError):
        parse_colors("r 1\n", 2)
    with pytest.raises(FormatError):
        parse_colors("g 1\n", 1)


def test_pair_errors():
    with pytest.raises(FormatError) as info:
        parse_pairs("tp 1 2\ntp 2 2\n", 3)
    assert info.value.line == 2
    with pytest.raises(FormatError):
        parse_terminals("t 9\n", 3)
