"""Solution record and structural witness checks shared by solvers and oracles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph


@dataclass(frozen=True)
class Solution:
    size: int
    vertices: frozenset[int]

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Solution":
        vs = frozenset(vertices)
        return cls(len(vs), vs)


class CertificationError(AssertionError):
    """A solver produced a witness that fails its own structural check."""


def is_dominating_set(g: Graph, d: Iterable[int]) -> bool:
    d = set(d)
    covered = set(d) | g.neighborhood_of_set(d)
    return len(covered) == g.n


def is_red_blue_dominating(g: Graph, red: Iterable[int], blue: Iterable[int], d: Iterable[int]) -> bool:
    d = set(d)
    if not d <= set(red):
        return False
    return set(blue) <= g.neighborhood_of_set(d)


def connected_after_removal(g: Graph, removed: Iterable[int], a: int, b: int) -> bool:
    removed = set(removed)
    if a in removed or b in removed:
        return False
    seen, stack = {a}, [a]
    while stack:
        x = stack.pop()
        if x == b:
            return True
        for y in g.adj[x]:
            if y not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def is_multiway_cut(g: Graph, terminals: Iterable[int], s: Iterable[int]) -> bool:
    s, terms = set(s), set(terminals)
    if s & terms:
        return False
    alive = set(range(g.n)) - s
    for comp in g.components(alive):
        if len(terms.intersection(comp)) > 1:
            return False
    return True


def is_multicut(g: Graph, pairs: Iterable[tuple[int, int]], s: Iterable[int]) -> bool:
    s = set(s)
    pairs = list(pairs)
    if any(p in s or q in s for p, q in pairs):
        return False
    alive = set(range(g.n)) - s
    comp_of = {}
    for i, comp in enumerate(g.components(alive)):
        for v in comp:
            comp_of[v] = i
    return all(comp_of[p] != comp_of[q] for p, q in pairs)


def is_steiner_vertex_set(g: Graph, terminals: Iterable[int], s: Iterable[int]) -> bool:
    s = set(s)
    return set(terminals) <= s and g.is_connected_set(s)


def is_connected_dominating_set(g: Graph, d: Iterable[int]) -> bool:
    d = set(d)
    return is_dominating_set(g, d) and bool(d or g.n == 0) and g.is_connected_set(d)


def require(ok: bool, what: str) -> None:
    if not ok:
        raise CertificationError(what)
