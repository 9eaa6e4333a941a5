"""Multiway cut with undeletable terminals on chordal graphs, in polynomial time.

Bottom-up over the rooted host tree, ``A[x]`` holds the minimum multiway
cut of the subgraph whose models lie inside the subtree of ``x``.  At an
internal node the subtree is clipped at the topmost terminal of every leg,
and one directed cut instance per choice of "uncut" leg is solved by max
flow: tree arcs carry child table values, every non-terminal vertex gets a
gadget node whose unit sink arc pays for deleting it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .certify import CertificationError, Solution, is_multiway_cut
from .flow import INF, FlowNetwork
from .graph import (
    Graph,
    TreeRepresentation,
    children_map,
    depths,
    induced_tree,
    minimize_representation,
    rooted,
    spanning_subtree,
    subtree_nodes,
    tree_leaves,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MwcInstance:
    """One connected piece after cleanup, relabelled to ``0..n-1``."""

    g: Graph
    terminals: frozenset[int]
    tr: TreeRepresentation
    original: tuple[int, ...]
    leaf_terminal_ok: bool = True


@dataclass(frozen=True)
class TruncatedTree:
    root: Hashable
    nodes: frozenset
    parent: dict
    leaves: tuple  # eta_1..eta_q
    leaf_terminals: tuple  # p_1..p_q, p_i has top eta_i
    root_terminal: int | None


# ---------------------------------------------------------------------------
# Preprocessing


def _two_terminal_paths(g: Graph, terminals: set, v: int) -> bool:
    """True if ``v`` has internally disjoint paths to two distinct terminals."""
    net = FlowNetwork()
    src, snk = ("out", v), "T"
    for u in range(g.n):
        if u == v:
            continue
        if u in terminals:
            net.add_arc(("in", u), snk, 1)
            continue
        net.add_arc(("in", u), ("out", u), 1)
    for u in range(g.n):
        if u in terminals:
            continue
        tail = src if u == v else ("out", u)
        for w in g.adj[u]:
            if w != v:
                net.add_arc(tail, ("in", w), 1)
    net.node(src)
    net.node(snk)
    return net.max_flow(src, snk) >= 2


def relevant_vertices(g: Graph, terminals: Iterable[int]) -> set[int]:
    terms = set(terminals)
    keep = set(terms)
    for v in range(g.n):
        if v not in terms and _two_terminal_paths(g, terms, v):
            keep.add(v)
    return keep


def _leaf_terminal_property(tr: TreeRepresentation, terminals: set) -> bool:
    if not terminals:
        return True
    for leaf in tree_leaves(tr.tree):
        if not tr.ver(leaf) & terminals:
            return False
    return True


def preprocess_mwc(g: Graph, terminals: Iterable[int], tr: TreeRepresentation) -> list[MwcInstance] | None:
    """Split into cleaned components holding at least two terminals; ``None`` if NO."""
    terms = set(terminals)
    if any(u in terms for t in terms for u in g.adj[t]):
        return None
    keep = relevant_vertices(g, terms)
    out = []
    for comp in g.components(keep):
        comp_terms = terms.intersection(comp)
        if len(comp_terms) < 2:
            continue
        h, old = g.induced_subgraph(sorted(comp))
        local = {v: i for i, v in enumerate(old)}
        sub = tr.restricted(old, local)
        nodes = spanning_subtree(sub.tree, set().union(*sub.models.values()))
        shrunk = TreeRepresentation(induced_tree(sub.tree, nodes), sub.models, min(nodes, key=repr), True)
        small = minimize_representation(shrunk)
        lt = {local[t] for t in comp_terms}
        ok = _leaf_terminal_property(small, lt)
        if not ok:
            log.warning("leaf without terminal after cleanup; continuing with generalized truncation")
        out.append(MwcInstance(h, frozenset(lt), small, tuple(old), ok))
    return out


# ---------------------------------------------------------------------------
# Truncation and cut instances


@dataclass
class _Rooted:
    root: Hashable
    parent: dict
    depth: dict
    children: dict
    top: dict

    @classmethod
    def of(cls, tr: TreeRepresentation) -> "_Rooted":
        parent, order = rooted(tr.tree, tr.root)
        depth = depths(parent, order)
        top = {v: min(m, key=lambda x: (depth[x], repr(x))) for v, m in tr.models.items()}
        return cls(tr.root, parent, depth, children_map(parent), top)

    def is_ancestor(self, a, b) -> bool:
        """True if ``a`` is a proper ancestor of ``b``."""
        x = self.parent[b]
        while x is not None:
            if x == a:
                return True
            x = self.parent[x]
        return False


def _truncate(tr: TreeRepresentation, ro: _Rooted, alpha, terminals: set) -> tuple[TruncatedTree, set, list]:
    below = subtree_nodes(ro.children, alpha)
    local = [p for p in terminals if tr.models[p] <= below]
    root_terms = [p for p in local if alpha in tr.models[p]]
    if len(root_terms) > 1:
        raise ValueError("terminals are not independent")
    rest = [p for p in local if alpha not in tr.models[p]]
    minimal = [p for p in rest if not any(ro.is_ancestor(ro.top[c], ro.top[p]) for c in rest if c != p)]
    minimal.sort(key=lambda p: repr(ro.top[p]))
    nodes = {alpha}
    for p in minimal:
        x = ro.top[p]
        while x not in nodes:
            nodes.add(x)
            x = ro.parent[x]
    tt = TruncatedTree(
        alpha,
        frozenset(nodes),
        {x: ro.parent[x] for x in nodes if x != alpha},
        tuple(ro.top[p] for p in minimal),
        tuple(minimal),
        root_terms[0] if root_terms else None,
    )
    return tt, below, local


def truncate(tr: TreeRepresentation, alpha, terminals: Iterable[int]) -> TruncatedTree:
    """Subtree of ``alpha`` clipped at the topmost terminal of every leg."""
    return _truncate(tr, _Rooted.of(tr), alpha, set(terminals))[0]


@dataclass
class CutInstance:
    """Directed cut instance; ``parent`` orients the tree part toward ``sink``."""

    source: Hashable
    sink: Hashable
    parent: dict = field(default_factory=dict)
    cut_leaves: tuple = ()  # tree leaves fed by source arcs
    arcs: list = field(default_factory=list)  # (tail, head, weight, kind)

    def kinds(self) -> dict[str, list]:
        out: dict[str, list] = {"tree": [], "source": [], "conn": [], "sink": []}
        for arc in self.arcs:
            out[arc[3]].append(arc)
        return out


def _in_model(tr: TreeRepresentation, v: int | None, a, b) -> bool:
    return v is not None and a in tr.models[v] and b in tr.models[v]


def build_cut_instance(
    tr: TreeRepresentation, terminals: Iterable[int], alpha, i: int, table: dict, ro: _Rooted | None = None
) -> CutInstance:
    """Cut instance at ``alpha`` in which leg ``i`` stays uncut (``0``: all legs cut).

    For ``i > 0`` the truncated tree is extended below ``eta_i`` by the
    truncation of that subtree, whose root terminal is ``p_i``; the whole
    region then forms one instance, so each vertex has a single gadget.
    ``table[x]`` is the entry of the edge from ``x`` to its parent.
    """
    ro = ro or _Rooted.of(tr)
    terms = set(terminals)
    tt, below, _ = _truncate(tr, ro, alpha, terms)
    if tt.root_terminal is not None and i != 0:
        raise ValueError("only the all-legs instance exists when a root terminal is present")
    parent = dict(tt.parent)
    sources = [p for j, p in enumerate(tt.leaf_terminals, start=1) if j != i]
    protected: set = set()
    guarded = [tt.root_terminal]
    if i:
        eta = tt.leaves[i - 1]
        x = eta
        while x != alpha:
            protected.add(x)
            x = parent[x]
        inner, _, _ = _truncate(tr, ro, eta, terms)
        if inner.root_terminal != tt.leaf_terminals[i - 1]:
            raise AssertionError("uncut leg terminal is not the root terminal below it")
        parent.update(inner.parent)
        sources += list(inner.leaf_terminals)
        guarded.append(inner.root_terminal)
    region = set(parent) | {alpha}
    ci = CutInstance("s", ("node", alpha), parent, tuple(ro.top[p] for p in sources))
    for x in sorted(parent, key=repr):
        y = parent[x]
        if x in protected or any(_in_model(tr, g, x, y) for g in guarded):
            w = INF
        else:
            w = table[x]
        ci.arcs.append((("node", x), ("node", y), w, "tree"))
    for p in sources:
        ci.arcs.append(("s", ("node", ro.top[p]), INF, "source"))
    for v in sorted(tr.models):
        m = tr.models[v]
        if v in terms or not m <= below or not m & region:
            continue
        for x in sorted(m & region, key=repr):
            ci.arcs.append((("node", x), ("gamma", v), INF, "conn"))
        ci.arcs.append((("gamma", v), ("node", ro.top[v]), 1, "sink"))
    return ci


def min_cut(ci: CutInstance) -> tuple[float, list[int]]:
    """Minimum weight arc set (indices into ``ci.arcs``) separating source from sink."""
    net = FlowNetwork()
    net.node(ci.source)
    net.node(ci.sink)
    ids = [net.add_arc(u, v, w) for u, v, w, _ in ci.arcs]
    value = net.max_flow(ci.source, ci.sink)
    if value == INF:
        return INF, []
    by_id = {a: k for k, a in enumerate(ids)}
    return value, sorted(by_id[a] for a in net.cut_arcs())


# ---------------------------------------------------------------------------
# Table and witness


@dataclass
class _Entry:
    value: float
    witness: frozenset


def _witness_from_cut(tr: TreeRepresentation, ro: _Rooted, ci: CutInstance, cut: list[int], entries: dict) -> frozenset:
    picked = [ci.arcs[k] for k in cut]
    tree_cut = {u[1] for u, _, _, kind in picked if kind == "tree"}
    sink_cut = {u[1] for u, _, _, kind in picked if kind == "sink"}
    gammas = [u[1] for u, _, _, kind in ci.arcs if kind == "sink"]

    def crossing(x) -> set:
        return {v for v in gammas if x in tr.models[v] and ro.top[v] != x}

    chosen = set()
    for leaf in ci.cut_leaves:
        pick = None
        x = leaf
        while x in ci.parent:
            if x in tree_cut and crossing(x) <= sink_cut:
                pick = x
            x = ci.parent[x]
        if pick is None:
            raise CertificationError("no fully paid tree arc on a cut leg")
        chosen.add(pick)
    out: set = set()
    for x in chosen:
        out |= entries[x].witness
        out |= crossing(x)
    return frozenset(out)


def mwc_table(inst: MwcInstance) -> dict:
    """Entries ``{node: _Entry}`` for the edge from each node to its parent."""
    tr = inst.tr
    ro = _Rooted.of(tr)
    terms = set(inst.terminals)
    _, order = rooted(tr.tree, tr.root)
    entries: dict = {}
    for alpha in reversed(order):
        tt, _, local = _truncate(tr, ro, alpha, terms)
        if len(local) <= 1:
            entries[alpha] = _Entry(0, frozenset())
            continue
        options = [0] if tt.root_terminal is not None else range(len(tt.leaves) + 1)
        table = {x: e.value for x, e in entries.items()}
        best = None
        for i in options:
            ci = build_cut_instance(tr, terms, alpha, i, table, ro)
            w, cut = min_cut(ci)
            if best is None or w < best[0]:
                best = (w, ci, cut)
        w, ci, cut = best
        if w == INF:
            entries[alpha] = _Entry(INF, frozenset())
            continue
        wit = _witness_from_cut(tr, ro, ci, cut, entries)
        if len(wit) > w:
            raise CertificationError(f"assembled cut of size {len(wit)} exceeds table value {w}")
        entries[alpha] = _Entry(w, wit)
    return entries


def solve_mwc(g: Graph, terminals: Iterable[int], tr: TreeRepresentation, k: int | None = None) -> Solution | None:
    """Minimum multiway cut, or ``None`` when terminals touch or the budget is exceeded."""
    terms = set(terminals)
    pieces = preprocess_mwc(g, terms, tr)
    if pieces is None:
        return None
    chosen: set = set()
    for piece in pieces:
        top = mwc_table(piece)[piece.tr.root]
        if top.value == INF:
            return None
        chosen |= {piece.original[v] for v in top.witness}
    if not is_multiway_cut(g, terms, chosen):
        raise CertificationError("multiway cut witness leaves terminals connected")
    if k is not None and len(chosen) > k:
        return None
    return Solution.of(chosen)
