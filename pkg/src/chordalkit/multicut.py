"""Multicut with undeletable terminals on chordal graphs of bounded leafage.

A pair is separated exactly when some tree edge between the two models is
destroyed (every vertex containing it is deleted).  The XP solver guesses,
for every maximal degree-2 path of the host tree, the first and last edge
the solution destroys there, deletes those vertex sets, and solves each
remaining component that still holds a pair on an interval representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .certify import CertificationError, Solution, is_multicut
from .graph import (
    Graph,
    TreeRepresentation,
    is_path_tree,
    maximal_degree2_paths,
    minimize_representation,
    spanning_subtree,
    induced_tree,
    tree_leaves,
    tree_path,
)


@dataclass(frozen=True)
class MulticutInstance:
    g: Graph
    pairs: tuple[tuple[int, int], ...]
    k: int | None
    tr: TreeRepresentation

    @classmethod
    def make(cls, g: Graph, pairs: Iterable[tuple[int, int]], k: int | None, tr: TreeRepresentation):
        norm = tuple(sorted({(min(a, b), max(a, b)) for a, b in pairs}))
        return cls(g, norm, k, tr)

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset(v for pair in self.pairs for v in pair)


def _pairs_feasible(g: Graph, pairs: Sequence[tuple[int, int]]) -> bool:
    return all(a != b and not g.has_edge(a, b) for a, b in pairs)


def interval_multicut_on_path(
    order: Sequence, models: dict, pairs: Sequence[tuple[int, int]], terminals: Iterable[int]
) -> frozenset | None:
    """Cheapest vertex set cutting ``pairs`` given models on the path ``order``.

    Returns the deleted vertex set, or ``None`` when some pair has no
    destroyable edge between its models.
    """
    terminals = set(terminals)
    pos = {x: i for i, x in enumerate(order)}
    span = {v: (min(pos[x] for x in m), max(pos[x] for x in m)) for v, m in models.items()}
    edge_ver = []
    for j in range(len(order) - 1):
        edge_ver.append(frozenset(v for v, (lo, hi) in span.items() if lo <= j and hi >= j + 1))
    destroyable = [not (ver & terminals) for ver in edge_ver]
    windows = []
    for a, b in pairs:
        (la, ra), (lb, rb) = span[a], span[b]
        if la > lb:
            (la, ra), (lb, rb) = (lb, rb), (la, ra)
        if ra >= lb:
            return None
        lo, hi = ra, lb - 1
        if not any(destroyable[lo:hi + 1]):
            return None
        windows.append((lo, hi))
    if not windows:
        return frozenset()
    edges = [j for j, ok in enumerate(destroyable) if ok]

    def gap_free(prev: int | None, nxt: int | None) -> bool:
        # No window may lie strictly between two consecutive destroyed edges.
        for lo, hi in windows:
            after_prev = prev is None or lo > prev
            before_next = nxt is None or hi < nxt
            if after_prev and before_next:
                return False
        return True

    best: dict[int, tuple[int, int | None]] = {}
    for idx, j in enumerate(edges):
        cands = []
        if gap_free(None, j):
            cands.append((len(edge_ver[j]), None))
        for i in edges[:idx]:
            if i in best and gap_free(i, j):
                cands.append((best[i][0] + len(edge_ver[j] - edge_ver[i]), i))
        if cands:
            best[j] = min(cands, key=lambda c: (c[0], -1 if c[1] is None else c[1]))
    finals = [(best[j][0], j) for j in best if gap_free(j, None)]
    if not finals:
        return None
    _, j = min(finals)
    chosen = []
    while j is not None:
        chosen.append(j)
        j = best[j][1]
    out = frozenset().union(*(edge_ver[j] for j in chosen))
    if len(out) != min(finals)[0]:
        raise AssertionError("destroyed-edge costs failed to telescope")
    return out


def _path_order(tree: dict) -> list:
    if len(tree) == 1:
        return list(tree)
    ends = tree_leaves(tree)
    return tree_path(tree, ends[0], ends[-1])


def solve_interval_multicut(g: Graph, pairs: Iterable[tuple[int, int]], tr: TreeRepresentation) -> Solution | None:
    """Exact multicut when the host tree is a path."""
    pairs = list(pairs)
    if not _pairs_feasible(g, pairs):
        return None
    nodes = spanning_subtree(tr.tree, set().union(*tr.models.values())) if g.n else set()
    tree = induced_tree(tr.tree, nodes) if nodes else {}
    if tree and not is_path_tree(tree):
        raise ValueError("interval multicut needs a path host tree")
    if not pairs:
        return Solution.of(())
    models = {v: tr.models[v] for v in range(g.n)}
    terminals = {v for pair in pairs for v in pair}
    cut = interval_multicut_on_path(_path_order(tree), models, pairs, terminals)
    if cut is None:
        return None
    if not is_multicut(g, pairs, cut):
        raise CertificationError("interval multicut witness leaves a pair connected")
    return Solution.of(cut)


def _guess_options(path: list, tr: TreeRepresentation, terminals: set) -> list:
    edges = list(zip(path, path[1:]))
    ok = [i for i, (a, b) in enumerate(edges) if not (tr.ver_edge(a, b) & terminals)]
    options: list = [()]
    for x in ok:
        for y in ok:
            if x <= y:
                options.append((edges[x], edges[y]) if x < y else (edges[x],))
    bound = (len(edges) + 1) ** 2
    if len(options) > bound:
        raise AssertionError("more guesses than the per-path bound allows")
    return options


def _solve_branch(
    g: Graph, tr: TreeRepresentation, pairs: list, terminals: set, deleted: set, limit: float
) -> frozenset | None:
    alive = set(range(g.n)) - deleted
    comp_of = {}
    comps = g.components(alive)
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    live: dict[int, list] = {}
    for a, b in pairs:
        if comp_of[a] == comp_of[b]:
            live.setdefault(comp_of[a], []).append((a, b))
    total = set(deleted)
    for ci, cpairs in sorted(live.items()):
        comp = comps[ci]
        models = {v: tr.models[v] for v in comp}
        nodes = spanning_subtree(tr.tree, set().union(*models.values()))
        sub = induced_tree(tr.tree, nodes)
        if not is_path_tree(sub):
            return None
        cut = interval_multicut_on_path(_path_order(sub), models, cpairs, terminals & set(comp))
        if cut is None:
            return None
        total |= cut
        if len(total) >= limit:
            return None
    return frozenset(total)


def solve_multicut_xp(inst: MulticutInstance) -> Solution | None:
    """Minimum multicut, or ``None`` if none exists within ``inst.k``."""
    g, pairs = inst.g, list(inst.pairs)
    if not _pairs_feasible(g, pairs):
        return None
    terminals = set(inst.terminals)
    if not pairs:
        return Solution.of(())
    tr = minimize_representation(inst.tr)
    paths = maximal_degree2_paths(tr.tree)
    per_path = [_guess_options(p, tr, terminals) for p in paths]
    longest = max((len(p) - 1 for p in paths), default=0)
    branch_bound = (longest + 1) ** (2 * len(paths))
    best: frozenset | None = None
    seen = 0
    for combo in product(*per_path):
        seen += 1
        if seen > branch_bound:
            raise AssertionError("branch count exceeds its bound")
        deleted: set = set()
        for guess in combo:
            for a, b in guess:
                deleted |= tr.ver_edge(a, b)
        limit = len(best) if best is not None else float("inf")
        if len(deleted) >= limit:
            continue
        got = _solve_branch(g, tr, pairs, terminals, deleted, limit)
        if got is not None and (best is None or len(got) < len(best)):
            best = got
    if best is None:
        return None
    if not is_multicut(g, pairs, best):
        raise CertificationError("multicut witness leaves a pair connected")
    if inst.k is not None and len(best) > inst.k:
        return None
    return Solution.of(best)
