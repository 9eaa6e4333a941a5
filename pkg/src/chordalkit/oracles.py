"""Exponential-time reference solvers by increasing-size subset enumeration.

These are the ground truth the polynomial and FPT solvers are checked
against, so they deliberately share no code with them beyond the graph type.
Vertex sets are handled as bitmasks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .certify import Solution
from .graph import Graph


class OracleLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 16
    time_cap: float | None = None


DEFAULT_BUDGET = OracleBudget()


def _masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in g.adj[v]) for v in range(g.n)]


def _connected_mask(adj: list[int], mask: int) -> bool:
    if mask == 0:
        return True
    low = mask & -mask
    seen = low
    frontier = low
    while frontier:
        nxt = 0
        f = frontier
        while f:
            b = f & -f
            f ^= b
            nxt |= adj[b.bit_length() - 1]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def _search(
    candidates: Sequence[int],
    feasible: Callable[[int], bool],
    budget: OracleBudget,
    base: int = 0,
    start: int = 0,
) -> Solution | None:
    deadline = None if budget.time_cap is None else time.monotonic() + budget.time_cap
    for size in range(start, len(candidates) + 1):
        for pick in combinations(candidates, size):
            mask = base
            for v in pick:
                mask |= 1 << v
            if feasible(mask):
                return Solution.of(v for v in range(mask.bit_length()) if mask >> v & 1)
            if deadline is not None and time.monotonic() > deadline:
                raise OracleLimitError("time cap exceeded")
    return None


def _guard(g: Graph, budget: OracleBudget) -> None:
    if g.n > budget.max_n:
        raise OracleLimitError(f"{g.n} vertices exceeds oracle cap {budget.max_n}")


def brute_ds(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> Solution | None:
    _guard(g, budget)
    closed = [m | (1 << v) for v, m in enumerate(_masks(g))]
    full = (1 << g.n) - 1

    def ok(mask: int) -> bool:
        cov = 0
        m = mask
        while m:
            b = m & -m
            m ^= b
            cov |= closed[b.bit_length() - 1]
        return cov == full

    return _search(range(g.n), ok, budget)


def brute_rbds(
    g: Graph, red: Iterable[int], blue: Iterable[int], budget: OracleBudget = DEFAULT_BUDGET,
    connected: bool = False,
) -> Solution | None:
    _guard(g, budget)
    adj = _masks(g)
    reds = sorted(set(red))
    need = sum(1 << b for b in set(blue))

    def ok(mask: int) -> bool:
        cov = 0
        m = mask
        while m:
            b = m & -m
            m ^= b
            cov |= adj[b.bit_length() - 1]
        if cov & need != need:
            return False
        return not connected or _connected_mask(adj, mask)

    return _search(reds, ok, budget)


def brute_cds(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> Solution | None:
    """Minimum connected dominating set; ``None`` for disconnected graphs."""
    _guard(g, budget)
    if g.n == 0:
        return Solution.of(())
    adj = _masks(g)
    closed = [m | (1 << v) for v, m in enumerate(adj)]
    full = (1 << g.n) - 1

    def ok(mask: int) -> bool:
        cov = 0
        m = mask
        while m:
            b = m & -m
            m ^= b
            cov |= closed[b.bit_length() - 1]
        return cov == full and _connected_mask(adj, mask)

    return _search(range(g.n), ok, budget, start=1)


def brute_steiner(g: Graph, terminals: Iterable[int], budget: OracleBudget = DEFAULT_BUDGET) -> Solution | None:
    """Fewest vertices of a connected subgraph containing every terminal."""
    _guard(g, budget)
    adj = _masks(g)
    terms = sorted(set(terminals))
    base = sum(1 << t for t in terms)
    others = [v for v in range(g.n) if not base >> v & 1]
    return _search(others, lambda mask: _connected_mask(adj, mask), budget, base=base)


def brute_domination(kind: str, g: Graph, *, red=(), blue=(), terminals=(), budget=DEFAULT_BUDGET):
    if kind == "ds":
        return brute_ds(g, budget)
    if kind == "rbds":
        return brute_rbds(g, red, blue, budget)
    if kind == "crbds":
        return brute_rbds(g, red, blue, budget, connected=True)
    if kind == "cds":
        return brute_cds(g, budget)
    if kind == "steiner":
        return brute_steiner(g, terminals, budget)
    raise ValueError(f"unknown domination kind {kind!r}")


def _separates(adj: list[int], n: int, removed: int, groups: list[tuple[int, int]]) -> bool:
    """True if no vertex set pair in ``groups`` shares a component of G - removed."""
    alive = ((1 << n) - 1) & ~removed
    for a, b in groups:
        seen = a
        frontier = a
        while frontier:
            nxt = 0
            f = frontier
            while f:
                bit = f & -f
                f ^= bit
                nxt |= adj[bit.bit_length() - 1]
            nxt &= alive & ~seen
            if nxt & b:
                return False
            seen |= nxt
            frontier = nxt
    return True


def brute_mwc(g: Graph, terminals: Iterable[int], budget: OracleBudget = DEFAULT_BUDGET) -> Solution | None:
    """Minimum multiway cut with undeletable terminals."""
    _guard(g, budget)
    terms = sorted(set(terminals))
    tset = set(terms)
    if any(u in tset for t in terms for u in g.adj[t]):
        return None
    adj = _masks(g)
    others = [v for v in range(g.n) if v not in tset]
    # Separating each terminal from all later ones separates every pair.
    groups = [(1 << t, sum(1 << u for u in terms[i + 1:])) for i, t in enumerate(terms[:-1])]

    def ok(mask: int) -> bool:
        return _separates(adj, g.n, mask, groups)

    return _search(others, ok, budget)


def brute_mc(g: Graph, pairs: Iterable[tuple[int, int]], budget: OracleBudget = DEFAULT_BUDGET) -> Solution | None:
    """Minimum multicut with undeletable terminals."""
    _guard(g, budget)
    pairs = [(a, b) for a, b in pairs]
    if any(a == b or g.has_edge(a, b) for a, b in pairs):
        return None
    terms = {v for pair in pairs for v in pair}
    adj = _masks(g)
    others = [v for v in range(g.n) if v not in terms]
    groups = [(1 << a, 1 << b) for a, b in pairs]
    return _search(others, lambda mask: _separates(adj, g.n, mask, groups), budget)


def brute_vertex_cover(g: Graph, budget: OracleBudget = OracleBudget(max_n=24)) -> Solution | None:
    _guard(g, budget)
    edges = g.edges()

    def ok(mask: int) -> bool:
        return all(mask >> u & 1 or mask >> v & 1 for u, v in edges)

    return _search(range(g.n), ok, budget)
