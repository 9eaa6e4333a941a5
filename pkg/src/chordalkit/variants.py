"""Connected domination and Steiner Tree via reductions to Red-Blue Dominating Set.

* ``connected_rbds_to_rbds``: connectivity is encoded by subdividing the
  host tree and asking for a blue vertex at every node and every edge of
  the part of the tree that blue models reach.
* ``contract_terminal_components``: adjacent terminals are merged.
* ``steiner_to_connected_rbds``: terminal neighbourhoods become cliques and
  each terminal gets a blue true twin (leafage route).
* ``steiner_to_rbds_pendant``: each terminal gets a pendant blue vertex
  (bounded induced-H route).

The drivers undo every reduction on the witness and certify the result on
the input graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Iterable, Literal

from .certify import (
    CertificationError,
    Solution,
    is_connected_dominating_set,
    is_dominating_set,
    is_red_blue_dominating,
    is_steiner_vertex_set,
)
from .domset_fpt import RedBlueInstance, ds_to_rbds, solve_rbds
from .domset_hfree import DEFAULT_PARTITION_CAP, solve_rbds_hfree
from .graph import (
    Graph,
    TreeRepresentation,
    find_induced_h_ell,
    graph_from_models,
    induced_tree,
    minimize_representation,
    spanning_subtree,
    tree_path,
)

Method = Literal["fpt", "hfree"]


def _node_key(x):
    return (0, x) if isinstance(x, int) else (1, repr(x))


@dataclass(frozen=True)
class ConnectedRbdsInstance:
    g: Graph
    red: frozenset[int]
    blue: frozenset[int]
    k: int | None
    tr: TreeRepresentation

    def __post_init__(self) -> None:
        if self.red & self.blue or (self.red | self.blue) != frozenset(range(self.g.n)):
            raise ValueError("red and blue must partition the vertex set")


@dataclass(frozen=True)
class SteinerInstance:
    g: Graph
    terminals: frozenset[int]
    k: int | None
    tr: TreeRepresentation


@dataclass(frozen=True)
class ReducedRbds:
    """A red-blue instance plus, per red vertex, the red vertex it copies."""

    instance: RedBlueInstance
    origin: dict

    def lift(self, chosen: Iterable[int]) -> frozenset[int]:
        return frozenset(self.origin[v] for v in chosen)


@dataclass(frozen=True)
class ContractedSteiner:
    """Contracted instance plus the original vertices behind each new vertex."""

    instance: SteinerInstance
    groups: tuple[tuple[int, ...], ...]

    def lift(self, chosen: Iterable[int]) -> frozenset[int]:
        return frozenset(v for c in chosen for v in self.groups[c])


@dataclass(frozen=True)
class SteinerAsConnected:
    instance: ConnectedRbdsInstance
    terminals: frozenset[int]
    add_terminals: bool

    def lift(self, chosen: Iterable[int]) -> frozenset[int]:
        out = frozenset(chosen)
        return out | self.terminals if self.add_terminals else out


# ---------------------------------------------------------------------------
# Connected red-blue domination


def _empty_rbds(k: int | None) -> ReducedRbds:
    tr = TreeRepresentation({0: frozenset()}, {}, 0, allow_empty=True)
    return ReducedRbds(RedBlueInstance(Graph(0, ()), frozenset(), frozenset(), k, tr), {})


def connected_rbds_to_rbds(inst: ConnectedRbdsInstance) -> ReducedRbds:
    """Equivalent red-blue instance whose solutions lift to connected ones."""
    if not inst.blue:
        return _empty_rbds(inst.k)
    tr = minimize_representation(inst.tr)
    blues_at = {x: frozenset(v for v in inst.blue if x in tr.models[v]) for x in tr.tree}
    core = spanning_subtree(tr.tree, {x for x in tr.tree if blues_at[x]})
    tree = {x: set(nb) for x, nb in induced_tree(tr.tree, core).items()}
    # Contract leaves whose blues all continue into the neighbour; restart after each.
    changed = True
    while changed and len(tree) > 1:
        changed = False
        for leaf in sorted(tree, key=_node_key):
            if len(tree[leaf]) != 1:
                continue
            (nb,) = tree[leaf]
            if blues_at[leaf] <= blues_at[nb]:
                tree[nb].discard(leaf)
                del tree[leaf]
                changed = True
                break
    kept = set(tree)
    edges = sorted({tuple(sorted((a, b), key=_node_key)) for a in tree for b in tree[a]}, key=lambda e: (_node_key(e[0]), _node_key(e[1])))
    # integer ids: kept nodes first, then one subdivision node per edge
    node_id = {x: i for i, x in enumerate(sorted(kept, key=_node_key))}
    edge_id = {e: len(node_id) + i for i, e in enumerate(edges)}
    th_nodes = list(range(len(node_id) + len(edge_id)))
    th_tree: dict = {x: set() for x in th_nodes}
    for (a, b), mid in edge_id.items():
        for end in (node_id[a], node_id[b]):
            th_tree[mid].add(end)
            th_tree[end].add(mid)
    models: dict = {}
    origin: dict = {}
    reds = [x for x in sorted(inst.red) if tr.models[x] & kept]
    for i, x in enumerate(reds):
        part = tr.models[x] & kept
        model = {node_id[a] for a in part} | {edge_id[a, b] for a, b in edges if a in part and b in part}
        models[i] = frozenset(model)
        origin[i] = x
    base = len(reds)
    for j, node in enumerate(th_nodes):
        models[base + j] = frozenset({node})
    n = base + len(th_nodes)
    h = graph_from_models(n, models)
    th = TreeRepresentation({x: frozenset(nb) for x, nb in th_tree.items()}, models, th_nodes[0])
    rb = RedBlueInstance(h, frozenset(range(base)), frozenset(range(base, n)), inst.k, th)
    return ReducedRbds(rb, origin)


def _solve_rbds(
    rb: RedBlueInstance, method: Method, ell: int | None, partition_cap: int = DEFAULT_PARTITION_CAP
) -> Solution | None:
    if method == "fpt":
        return solve_rbds(rb)
    if ell is None:
        raise ValueError("the hfree method needs ell")
    return solve_rbds_hfree(rb, ell, partition_cap, check_free=False)


def solve_connected_rbds(
    inst: ConnectedRbdsInstance,
    method: Method = "fpt",
    ell: int | None = None,
    partition_cap: int = DEFAULT_PARTITION_CAP,
) -> Solution | None:
    """Minimum connected red-blue dominating set, or ``None``."""
    if not inst.blue:
        return Solution.of(())
    red_inst = replace(inst, k=None)
    reduced = connected_rbds_to_rbds(red_inst)
    sol = _solve_rbds(reduced.instance, method, ell, partition_cap)
    if sol is None:
        return None
    chosen = reduced.lift(sol.vertices)
    if not is_red_blue_dominating(inst.g, inst.red, inst.blue, chosen) or not inst.g.is_connected_set(chosen):
        raise CertificationError("lifted red set is not a connected red-blue dominating set")
    if inst.k is not None and len(chosen) > inst.k:
        return None
    return Solution.of(chosen)


def solve_ds(
    g: Graph,
    k: int | None,
    tr: TreeRepresentation,
    method: Method = "fpt",
    ell: int | None = None,
    partition_cap: int = DEFAULT_PARTITION_CAP,
) -> Solution | None:
    """Minimum dominating set, or ``None``."""
    if method == "hfree":
        _require_free(g, ell)
    sol = _solve_rbds(ds_to_rbds(g, None, tr), method, ell, partition_cap)
    if sol is None:
        return None
    if not is_dominating_set(g, sol.vertices):
        raise CertificationError("dominating witness failed its check")
    if k is not None and sol.size > k:
        return None
    return sol


def cds_to_connected_rbds(g: Graph, k: int | None, tr: TreeRepresentation) -> ConnectedRbdsInstance:
    rb = ds_to_rbds(g, k, tr)
    return ConnectedRbdsInstance(rb.g, rb.red, rb.blue, k, rb.tr)


def solve_cds(
    g: Graph,
    k: int | None,
    tr: TreeRepresentation,
    method: Method = "fpt",
    ell: int | None = None,
    partition_cap: int = DEFAULT_PARTITION_CAP,
) -> Solution | None:
    """Minimum connected dominating set, or ``None``."""
    if g.n == 0:
        return Solution.of(())
    if method == "hfree":
        _require_free(g, ell)
    sol = solve_connected_rbds(cds_to_connected_rbds(g, None, tr), method, ell, partition_cap)
    if sol is None:
        return None
    if not is_connected_dominating_set(g, sol.vertices):
        raise CertificationError("connected dominating witness failed its check")
    if k is not None and sol.size > k:
        return None
    return sol


def _require_free(g: Graph, ell: int | None) -> None:
    if ell is None:
        raise ValueError("the hfree method needs ell")
    if find_induced_h_ell(g, ell) is not None:
        raise ValueError(f"graph contains an induced H_{ell}")


# ---------------------------------------------------------------------------
# Steiner Tree


def contract_terminal_components(inst: SteinerInstance) -> ContractedSteiner:
    """Merge every component of the terminal-induced subgraph into one terminal."""
    g = inst.g
    comps = g.components(inst.terminals)
    group_of: dict[int, tuple[int, ...]] = {}
    for comp in comps:
        members = tuple(sorted(comp))
        for v in members:
            group_of[v] = members
    groups: list[tuple[int, ...]] = []
    new_id: dict[int, int] = {}
    for v in range(g.n):
        members = group_of.get(v, (v,))
        if members[0] == v:
            new_id.update({u: len(groups) for u in members})
            groups.append(members)
    edges = {
        (min(new_id[u], new_id[v]), max(new_id[u], new_id[v]))
        for u, v in g.edges()
        if new_id[u] != new_id[v]
    }
    h = Graph.from_edges(len(groups), sorted(edges))
    models = {i: frozenset().union(*(inst.tr.models[v] for v in members)) for i, members in enumerate(groups)}
    tr = TreeRepresentation(inst.tr.tree, models, inst.tr.root, inst.tr.allow_empty)
    k = inst.k
    if k is not None:
        k -= sum(len(c) - 1 for c in comps)
    terms = frozenset(new_id[v] for v in inst.terminals)
    return ContractedSteiner(SteinerInstance(h, terms, k, tr), tuple(groups))


def _fresh_ids(tree):
    ints = [x for x in tree if isinstance(x, int)]
    nxt = max(ints, default=-1) + 1
    while True:
        yield nxt
        nxt += 1


def _closest_in(tree, start, targets):
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x in targets:
            return x
        for y in sorted(tree[x], key=_node_key):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    raise ValueError("target set unreachable in host tree")


def _independent_terminals(inst: SteinerInstance) -> None:
    for t in inst.terminals:
        if inst.g.adj[t] & inst.terminals:
            raise ValueError("terminals must be independent; contract terminal components first")


def steiner_to_connected_rbds(inst: SteinerInstance) -> SteinerAsConnected:
    """Simplicial terminals with blue true twins, budget ``k - |terminals|``."""
    _independent_terminals(inst)
    if len(inst.terminals) <= 1:
        raise ValueError("needs at least two terminals")
    g, tr = inst.g, inst.tr
    models = {v: set(tr.models[v]) for v in range(g.n)}
    for t in sorted(inst.terminals):
        anchor = sorted(tr.models[t], key=_node_key)[0]
        for x in sorted(g.adj[t]):
            if anchor not in models[x]:
                near = _closest_in(tr.tree, anchor, models[x])
                models[x] |= set(tree_path(tr.tree, near, anchor))
    terms = sorted(inst.terminals)
    n = g.n
    for i, t in enumerate(terms):
        models[n + i] = set(models[t])
    frozen = {v: frozenset(m) for v, m in models.items()}
    h = graph_from_models(n + len(terms), frozen)
    htr = TreeRepresentation(tr.tree, frozen, tr.root, tr.allow_empty)
    k = None if inst.k is None else inst.k - len(terms)
    crb = ConnectedRbdsInstance(h, frozenset(range(n)), frozenset(range(n, n + len(terms))), k, htr)
    return SteinerAsConnected(crb, inst.terminals, add_terminals=True)


def steiner_to_rbds_pendant(inst: SteinerInstance) -> SteinerAsConnected:
    """Pendant blue vertex per terminal on a fresh host-tree leaf, budget ``k``."""
    g, tr = inst.g, inst.tr
    tree = {x: set(nb) for x, nb in tr.tree.items()}
    models = {v: set(tr.models[v]) for v in range(g.n)}
    terms = sorted(inst.terminals)
    n = g.n
    fresh = _fresh_ids(tree)
    for i, t in enumerate(terms):
        anchor = sorted(tr.models[t], key=_node_key)[0]
        leaf = next(fresh)
        tree[leaf] = {anchor}
        tree[anchor].add(leaf)
        models[t].add(leaf)
        models[n + i] = {leaf}
    frozen = {v: frozenset(m) for v, m in models.items()}
    h = graph_from_models(n + len(terms), frozen)
    htr = TreeRepresentation({x: frozenset(nb) for x, nb in tree.items()}, frozen, tr.root, tr.allow_empty)
    crb = ConnectedRbdsInstance(h, frozenset(range(n)), frozenset(range(n, n + len(terms))), inst.k, htr)
    return SteinerAsConnected(crb, inst.terminals, add_terminals=False)


def solve_steiner(
    g: Graph,
    terminals: Iterable[int],
    k: int | None,
    tr: TreeRepresentation,
    method: Method = "fpt",
    ell: int | None = None,
    partition_cap: int = DEFAULT_PARTITION_CAP,
) -> Solution | None:
    """Fewest vertices of a connected subgraph holding every terminal, or ``None``."""
    terminals = frozenset(terminals)
    if method == "hfree":
        _require_free(g, ell)
    contracted = contract_terminal_components(SteinerInstance(g, terminals, None, tr))
    small = contracted.instance
    if len(small.terminals) <= 1:
        chosen = contracted.lift(small.terminals)
    else:
        if method == "fpt":
            bridge = steiner_to_connected_rbds(small)
            sol = solve_connected_rbds(bridge.instance, "fpt")
        else:
            bridge = steiner_to_rbds_pendant(small)
            # contraction raises the excluded H index by one, the pendants by one more
            sol = solve_connected_rbds(bridge.instance, "hfree", ell + 2, partition_cap)
        if sol is None:
            return None
        chosen = contracted.lift(bridge.lift(sol.vertices))
    if not is_steiner_vertex_set(g, terminals, chosen):
        raise CertificationError("Steiner witness is disconnected or misses a terminal")
    if k is not None and len(chosen) > k:
        return None
    return Solution.of(chosen)
