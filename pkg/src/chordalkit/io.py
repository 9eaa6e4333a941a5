"""Text formats.  Vertices are 1-indexed on disk and 0-indexed in memory.

* graph: ``p <n> <m>`` then ``e <u> <v>`` lines;
* tree representation: ``tn <node>``, ``te <a> <b>``, ``m <vertex> <node>...``;
* colouring: ``r <v>`` / ``b <v>``, each vertex exactly once;
* terminals: ``t <v>``;
* pairs: ``tp <u> <v>``.

Blank lines and lines starting with ``c`` or ``#`` are comments.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .graph import Graph, TreeRepresentation, tree_edges


class FormatError(ValueError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "#") or parts[0].startswith("#"):
            continue
        yield number, parts


def _int(tok: str, source: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(source, line, f"expected an integer, got {tok!r}") from None


def _vertex(tok: str, n: int | None, source: str, line: int) -> int:
    v = _int(tok, source, line)
    if v < 1 or (n is not None and v > n):
        raise FormatError(source, line, f"vertex {v} out of range 1..{n}")
    return v - 1


def _node(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def parse_graph(text: str, source: str = "<graph>") -> Graph:
    n = expected_m = None
    edges: set[tuple[int, int]] = set()
    for line, parts in _lines(text):
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise FormatError(source, line, "second header line")
            if len(parts) != 3:
                raise FormatError(source, line, "header must be 'p <n> <m>'")
            n, expected_m = _int(parts[1], source, line), _int(parts[2], source, line)
            if n < 0 or expected_m < 0:
                raise FormatError(source, line, "negative size")
        elif tag == "e":
            if n is None:
                raise FormatError(source, line, "edge before header")
            if len(parts) != 3:
                raise FormatError(source, line, "edge must be 'e <u> <v>'")
            u, v = _vertex(parts[1], n, source, line), _vertex(parts[2], n, source, line)
            if u == v:
                raise FormatError(source, line, "self-loop")
            edges.add((min(u, v), max(u, v)))
        else:
            raise FormatError(source, line, f"unknown line tag {tag!r}")
    if n is None:
        raise FormatError(source, 0, "missing 'p <n> <m>' header")
    if len(edges) != expected_m:
        raise FormatError(source, 0, f"header promises {expected_m} edges, found {len(edges)}")
    return Graph.from_edges(n, sorted(edges))


def format_graph(g: Graph) -> str:
    out = [f"p {g.n} {g.m}"]
    out += [f"e {u + 1} {v + 1}" for u, v in sorted(g.edges())]
    return "\n".join(out) + "\n"


def parse_tree_rep(text: str, n: int, source: str = "<tree-rep>") -> TreeRepresentation:
    nodes: list = []
    seen: set = set()
    edges: list = []
    models: dict[int, set] = {}
    for line, parts in _lines(text):
        tag = parts[0]
        if tag == "tn":
            if len(parts) != 2:
                raise FormatError(source, line, "node must be 'tn <node>'")
            x = _node(parts[1])
            if x in seen:
                raise FormatError(source, line, f"duplicate node {x!r}")
            seen.add(x)
            nodes.append(x)
        elif tag == "te":
            if len(parts) != 3:
                raise FormatError(source, line, "tree edge must be 'te <a> <b>'")
            edges.append((_node(parts[1]), _node(parts[2])))
        elif tag == "m":
            if len(parts) < 3:
                raise FormatError(source, line, "model must be 'm <vertex> <node>...'")
            v = _vertex(parts[1], n, source, line)
            if v in models:
                raise FormatError(source, line, f"second model for vertex {v + 1}")
            models[v] = {_node(t) for t in parts[2:]}
        else:
            raise FormatError(source, line, f"unknown line tag {tag!r}")
    for a, b in edges:
        for x in (a, b):
            if x not in seen:
                raise FormatError(source, 0, f"tree edge uses undeclared node {x!r}")
    for v, m in models.items():
        missing = m - seen
        if missing:
            raise FormatError(source, 0, f"model of vertex {v + 1} uses undeclared node {sorted(map(str, missing))[0]}")
    absent = [v + 1 for v in range(n) if v not in models]
    if absent:
        raise FormatError(source, 0, f"no model for vertex {absent[0]}")
    if not nodes:
        raise FormatError(source, 0, "empty host tree")
    used = set().union(*models.values()) if models else set()
    return TreeRepresentation.build(nodes, edges, models, nodes[0], allow_empty=used != seen)


def format_tree_rep(tr: TreeRepresentation) -> str:
    # Non-integer node ids are renumbered so every token stays whitespace-free.
    plain = all(isinstance(x, int) for x in tr.tree)
    order = tr.nodes()
    name = {x: (x if plain else i + 1) for i, x in enumerate(order)}
    out = [f"tn {name[x]}" for x in order]
    rank = {x: i for i, x in enumerate(order)}
    out += [f"te {name[a]} {name[b]}" for a, b in tree_edges(tr.tree)]
    for v in sorted(tr.models):
        nodes = " ".join(str(name[x]) for x in sorted(tr.models[v], key=rank.__getitem__))
        out.append(f"m {v + 1} {nodes}")
    return "\n".join(out) + "\n"


def parse_colors(text: str, n: int, source: str = "<colors>") -> tuple[frozenset[int], frozenset[int]]:
    red: set[int] = set()
    blue: set[int] = set()
    for line, parts in _lines(text):
        if parts[0] not in ("r", "b") or len(parts) != 2:
            raise FormatError(source, line, "colour line must be 'r <v>' or 'b <v>'")
        v = _vertex(parts[1], n, source, line)
        if v in red or v in blue:
            raise FormatError(source, line, f"vertex {v + 1} coloured twice")
        (red if parts[0] == "r" else blue).add(v)
    if len(red) + len(blue) != n:
        missing = min(set(range(n)) - red - blue) + 1
        raise FormatError(source, 0, f"vertex {missing} has no colour")
    return frozenset(red), frozenset(blue)


def format_colors(red: Iterable[int], blue: Iterable[int]) -> str:
    tagged = [(v, "r") for v in red] + [(v, "b") for v in blue]
    return "".join(f"{tag} {v + 1}\n" for v, tag in sorted(tagged))


def parse_terminals(text: str, n: int, source: str = "<terminals>") -> frozenset[int]:
    out: set[int] = set()
    for line, parts in _lines(text):
        if parts[0] != "t" or len(parts) != 2:
            raise FormatError(source, line, "terminal line must be 't <v>'")
        out.add(_vertex(parts[1], n, source, line))
    return frozenset(out)


def format_terminals(terminals: Iterable[int]) -> str:
    return "".join(f"t {v + 1}\n" for v in sorted(terminals))


def parse_pairs(text: str, n: int, source: str = "<pairs>") -> tuple[tuple[int, int], ...]:
    out: set[tuple[int, int]] = set()
    for line, parts in _lines(text):
        if parts[0] != "tp" or len(parts) != 3:
            raise FormatError(source, line, "pair line must be 'tp <u> <v>'")
        u, v = _vertex(parts[1], n, source, line), _vertex(parts[2], n, source, line)
        if u == v:
            raise FormatError(source, line, "pair with equal endpoints")
        out.add((min(u, v), max(u, v)))
    return tuple(sorted(out))


def format_pairs(pairs: Iterable[tuple[int, int]]) -> str:
    return "".join(f"tp {u + 1} {v + 1}\n" for u, v in sorted(pairs))


def read(path: str | Path) -> str:
    return Path(path).read_text()
