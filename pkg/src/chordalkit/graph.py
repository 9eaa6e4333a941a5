"""Graphs, tree representations of chordal graphs, and structural checks.

A tree representation pairs a host tree with one connected subtree (the
*model*) per vertex; two vertices are adjacent exactly when their models
share a node.  All solvers in the package navigate these representations,
so the tree helpers here take a plain adjacency mapping and never assume
anything about node identifiers beyond hashability.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

Node = Hashable
TreeAdj = Mapping[Node, frozenset]


class NotChordalError(ValueError):
    """Raised when an operation needs a chordal graph and gets something else."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[frozenset[int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count does not match vertex count")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
    ) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs), tuple(labels) if labels else None)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def neighborhood_of_set(self, vs: Iterable[int]) -> set[int]:
        """Open neighbourhood union N(X) (may include members of X)."""
        out: set[int] = set()
        for v in vs:
            out |= self.adj[v]
        return out

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v + 1)

    def induced_subgraph(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(H, old)`` where vertex ``i`` of ``H`` is ``old[i]`` of ``self``."""
        old = sorted(set(keep))
        new_of = {v: i for i, v in enumerate(old)}
        adj = tuple(frozenset(new_of[u] for u in self.adj[v] if u in new_of) for v in old)
        labels = tuple(self.label(v) for v in old) if self.labels else None
        return Graph(len(old), adj, labels), old

    def components(self, alive: Iterable[int] | None = None) -> list[list[int]]:
        keep = set(range(self.n)) if alive is None else set(alive)
        seen: set[int] = set()
        comps = []
        for s in sorted(keep):
            if s in seen:
                continue
            seen.add(s)
            comp, queue = [], deque([s])
            while queue:
                v = queue.popleft()
                comp.append(v)
                for u in self.adj[v]:
                    if u in keep and u not in seen:
                        seen.add(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected_set(self, vs: Iterable[int]) -> bool:
        vs = set(vs)
        return len(vs) <= 1 or len(self.components(vs)) == 1


# ---------------------------------------------------------------------------
# Tree helpers (operate on plain adjacency maps)


def tree_from_edges(nodes: Iterable[Node], edges: Iterable[tuple[Node, Node]]) -> dict:
    adj: dict = {x: set() for x in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return {x: frozenset(s) for x, s in adj.items()}


def tree_edges(tree: TreeAdj) -> list[tuple[Node, Node]]:
    out = []
    for a in _sorted(tree):
        for b in _sorted(tree[a]):
            if _key(a) < _key(b):
                out.append((a, b))
    return out


def tree_leaves(tree: TreeAdj) -> list[Node]:
    """Nodes of degree at most one (a one-node tree has one leaf)."""
    return [x for x in _sorted(tree) if len(tree[x]) <= 1]


def leaf_count(tree: TreeAdj) -> int:
    return len(tree_leaves(tree))


def branching_nodes(tree: TreeAdj) -> list[Node]:
    return [x for x in _sorted(tree) if len(tree[x]) >= 3]


def is_path_tree(tree: TreeAdj) -> bool:
    return all(len(nb) <= 2 for nb in tree.values())


def rooted(tree: TreeAdj, root: Node) -> tuple[dict, list]:
    """BFS from ``root``; returns ``(parent, order)`` with parent[root] = None."""
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in _sorted(tree[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)
    return parent, order


def depths(parent: Mapping, order: Sequence) -> dict:
    depth = {}
    for x in order:
        p = parent[x]
        depth[x] = 0 if p is None else depth[p] + 1
    return depth


def children_map(parent: Mapping) -> dict:
    kids: dict = {x: [] for x in parent}
    for x, p in parent.items():
        if p is not None:
            kids[p].append(x)
    for x in kids:
        kids[x].sort(key=_key)
    return kids


def subtree_nodes(children: Mapping, root: Node) -> set:
    out, stack = set(), [root]
    while stack:
        x = stack.pop()
        out.add(x)
        stack.extend(children[x])
    return out


def tree_path(tree: TreeAdj, a: Node, b: Node) -> list:
    """Node sequence of the unique a-b path."""
    parent, _ = rooted(tree, a)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def is_connected_in_tree(tree: TreeAdj, nodes: Iterable[Node]) -> bool:
    nodes = set(nodes)
    if not nodes:
        return False
    start = next(iter(nodes))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in tree[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def spanning_subtree(tree: TreeAdj, nodes: Iterable[Node]) -> set:
    """Smallest connected node set containing ``nodes``."""
    nodes = set(nodes)
    if len(nodes) <= 1:
        return nodes
    keep = set(tree)
    changed = True
    while changed:
        changed = False
        for x in list(keep):
            if x not in nodes and sum(1 for y in tree[x] if y in keep) <= 1:
                keep.discard(x)
                changed = True
    return keep


def induced_tree(tree: TreeAdj, nodes: Iterable[Node]) -> dict:
    nodes = set(nodes)
    return {x: frozenset(y for y in tree[x] if y in nodes) for x in nodes}


def maximal_degree2_paths(tree: TreeAdj) -> list[list]:
    """Maximal paths whose interior nodes have degree two.

    The returned node sequences have edge sets partitioning the tree's edges.
    """
    if len(tree) <= 1:
        return []
    if is_path_tree(tree):
        ends = tree_leaves(tree)
        return [tree_path(tree, ends[0], ends[-1])]
    anchors = [x for x in _sorted(tree) if len(tree[x]) != 2]
    used: set = set()
    paths = []
    for a in anchors:
        for b in _sorted(tree[a]):
            if frozenset((a, b)) in used:
                continue
            path, prev, cur = [a, b], a, b
            while len(tree[cur]) == 2:
                nxt = next(y for y in tree[cur] if y != prev)
                path.append(nxt)
                prev, cur = cur, nxt
            for x, y in zip(path, path[1:]):
                used.add(frozenset((x, y)))
            paths.append(path)
    return paths


def _key(x):
    return (0, x) if isinstance(x, int) else (1, repr(x))


def _sorted(xs):
    return sorted(xs, key=_key)


# ---------------------------------------------------------------------------
# Tree representations


@dataclass(frozen=True)
class TreeRepresentation:
    """Host tree plus one node set per vertex.

    ``allow_empty`` marks a representation in which some tree nodes belong
    to no model (a source of non-minimality that validation tolerates).
    """

    tree: Mapping[Node, frozenset]
    models: Mapping[Hashable, frozenset]
    root: Node
    allow_empty: bool = False

    @classmethod
    def build(
        cls,
        nodes: Iterable[Node],
        edges: Iterable[tuple[Node, Node]],
        models: Mapping[Hashable, Iterable[Node]],
        root: Node | None = None,
        allow_empty: bool = False,
    ) -> "TreeRepresentation":
        tree = tree_from_edges(nodes, edges)
        if root is None:
            root = _sorted(tree)[0]
        return cls(tree, {v: frozenset(m) for v, m in models.items()}, root, allow_empty)

    def nodes(self) -> list:
        return _sorted(self.tree)

    def edges(self) -> list[tuple[Node, Node]]:
        return tree_edges(self.tree)

    def leaves(self) -> list:
        return tree_leaves(self.tree)

    @property
    def leafage_upper_bound(self) -> int:
        return leaf_count(self.tree)

    def ver(self, node: Node) -> set:
        return {v for v, m in self.models.items() if node in m}

    def ver_edge(self, a: Node, b: Node) -> set:
        return {v for v, m in self.models.items() if a in m and b in m}

    def rerooted(self, root: Node) -> "TreeRepresentation":
        return TreeRepresentation(self.tree, self.models, root, self.allow_empty)

    def restricted(self, vertices: Iterable[Hashable], relabel: Mapping | None = None) -> "TreeRepresentation":
        """Keep only the given vertices' models (optionally renaming vertices)."""
        vs = list(vertices)
        if relabel is None:
            models = {v: self.models[v] for v in vs}
        else:
            models = {relabel[v]: self.models[v] for v in vs}
        return TreeRepresentation(self.tree, models, self.root, True)


def graph_from_models(n: int, models: Mapping[int, Iterable[Node]], labels=None) -> Graph:
    """Intersection graph of ``models`` over vertices ``0..n-1``."""
    by_node: dict = {}
    for v in range(n):
        for x in models[v]:
            by_node.setdefault(x, []).append(v)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for members in by_node.values():
        for v in members:
            nbrs[v].update(members)
    for v in range(n):
        nbrs[v].discard(v)
    return Graph(n, tuple(frozenset(s) for s in nbrs), tuple(labels) if labels else None)


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok


def validate_tree_representation(g: Graph, tr: TreeRepresentation) -> ValidationReport:
    report = ValidationReport()
    bad = report.violations
    tree = tr.tree
    for x, nbrs in tree.items():
        for y in nbrs:
            if y not in tree or x not in tree[y]:
                bad.append(Violation("asymmetric tree adjacency", (x, y)))
    n_edges = sum(len(nb) for nb in tree.values()) // 2
    if tree and (n_edges != len(tree) - 1 or not is_connected_in_tree(tree, tree)):
        bad.append(Violation("host is not a tree", (len(tree), n_edges)))
    if tr.root not in tree:
        bad.append(Violation("root not a tree node", (tr.root,)))
    for v in range(g.n):
        if v not in tr.models:
            bad.append(Violation("missing model", (v,)))
            continue
        m = tr.models[v]
        stray = [x for x in m if x not in tree]
        if stray:
            bad.append(Violation("model uses unknown node", (v, stray[0])))
        elif not m or not is_connected_in_tree(tree, m):
            bad.append(Violation("model not a subtree", (v, tuple(_sorted(m)))))
    if bad:
        return report
    for u, v in combinations(range(g.n), 2):
        meet = bool(tr.models[u] & tr.models[v])
        if meet and not g.has_edge(u, v):
            bad.append(Violation("phantom adjacency", (u, v)))
        elif g.has_edge(u, v) and not meet:
            bad.append(Violation("missing adjacency", (u, v)))
    if not tr.allow_empty:
        used = set().union(*tr.models.values()) if tr.models else set()
        for x in _sorted(tree):
            if x not in used:
                bad.append(Violation("empty tree node", (x,)))
    return report


# ---------------------------------------------------------------------------
# Chordality


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS visiting order via partition refinement."""
    if g.n == 0:
        return []
    classes: list[list[int]] = [list(range(g.n))]
    order: list[int] = []
    while classes:
        v = classes[0].pop(0)
        if not classes[0]:
            classes.pop(0)
        order.append(v)
        nbrs = g.adj[v]
        refined: list[list[int]] = []
        for cls in classes:
            inside = [u for u in cls if u in nbrs]
            outside = [u for u in cls if u not in nbrs]
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        classes = refined
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        first = min(later, key=pos.__getitem__)
        if any(u != first and u not in g.adj[first] for u in later):
            return False
    return True


def is_chordal(g: Graph) -> list[int] | None:
    """Return a perfect elimination ordering, or ``None`` if ``g`` is not chordal."""
    peo = lex_bfs(g)[::-1]
    return peo if is_perfect_elimination_ordering(g, peo) else None


def build_tree_representation(g: Graph, peo: Sequence[int] | None = None) -> TreeRepresentation:
    """Clique tree of a chordal graph.

    Nodes are ``0..c-1`` indexing the maximal cliques; the tree is a maximum
    weight spanning tree of the clique intersection graph.
    """
    if peo is None:
        peo = is_chordal(g)
        if peo is None:
            raise NotChordalError("graph is not chordal")
    elif not is_perfect_elimination_ordering(g, peo):
        raise ValueError("invalid perfect elimination ordering")
    if g.n == 0:
        return TreeRepresentation({0: frozenset()}, {}, 0, allow_empty=True)
    pos = {v: i for i, v in enumerate(peo)}
    candidates = [frozenset({v} | {u for u in g.adj[v] if pos[u] > pos[v]}) for v in peo]
    # C_v is non-maximal iff it is contained in C_u for an earlier u whose
    # first later neighbour is v and whose clique is exactly one larger.
    non_max: set[int] = set()
    for i, v in enumerate(peo):
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if later:
            first = min(later, key=pos.__getitem__)
            j = pos[first]
            if len(candidates[j]) <= len(candidates[i]) - 1:
                non_max.add(j)
    cliques = [c for i, c in enumerate(candidates) if i not in non_max]
    cliques = sorted(set(cliques), key=lambda c: sorted(c))
    c = len(cliques)
    edges = []
    if c > 1:
        best = {j: (len(cliques[0] & cliques[j]), 0) for j in range(1, c)}
        while best:
            j = max(best, key=lambda x: (best[x][0], -x))
            w, i = best.pop(j)
            edges.append((i, j))
            for x in best:
                wx = len(cliques[j] & cliques[x])
                if wx > best[x][0]:
                    best[x] = (wx, j)
    models: dict[int, set[int]] = {v: set() for v in range(g.n)}
    for idx, cl in enumerate(cliques):
        for v in cl:
            models[v].add(idx)
    return TreeRepresentation.build(range(c), edges, models, root=0)


def representation_for(g: Graph) -> TreeRepresentation:
    return build_tree_representation(g)


def minimize_representation(tr: TreeRepresentation) -> TreeRepresentation:
    """Contract edges with comparable ``ver`` sets until none remain.

    Empty nodes are contracted as a special case.  The node kept is the
    endpoint with the larger ``ver`` set, so identifiers stay stable.
    """
    tree = {x: set(nb) for x, nb in tr.tree.items()}
    models = {v: set(m) for v, m in tr.models.items()}
    ver: dict = {x: set() for x in tree}
    for v, m in models.items():
        for x in m:
            ver[x].add(v)
    root = tr.root
    changed = True
    while changed and len(tree) > 1:
        changed = False
        for a in _sorted(tree):
            for b in _sorted(tree[a]):
                if ver[a] <= ver[b]:
                    drop, keep = a, b
                elif ver[b] <= ver[a]:
                    drop, keep = b, a
                else:
                    continue
                for y in tree[drop]:
                    if y != keep:
                        tree[y].discard(drop)
                        tree[y].add(keep)
                        tree[keep].add(y)
                tree[keep].discard(drop)
                del tree[drop]
                for v in ver[drop]:
                    models[v].discard(drop)
                    models[v].add(keep)
                del ver[drop]
                if root == drop:
                    root = keep
                changed = True
                break
            if changed:
                break
    return TreeRepresentation(
        {x: frozenset(nb) for x, nb in tree.items()},
        {v: frozenset(m) for v, m in models.items()},
        root,
        allow_empty=not models,
    )


# ---------------------------------------------------------------------------
# Induced H_ell detection


@dataclass(frozen=True)
class HOccurrence:
    clique_vertices: tuple[int, ...]
    independent_vertices: tuple[int, ...]


def _cliques_of_size(g: Graph, size: int) -> Iterable[tuple[int, ...]]:
    def extend(clique: list[int], cands: list[int]):
        if len(clique) == size:
            yield tuple(clique)
            return
        for i, v in enumerate(cands):
            rest = [u for u in cands[i + 1:] if u in g.adj[v]]
            if len(clique) + 1 + len(rest) >= size:
                yield from extend(clique + [v], rest)

    yield from extend([], list(range(g.n)))


def find_induced_h_ell(g: Graph, ell: int) -> HOccurrence | None:
    """Brute-force search for an induced split graph H_ell."""
    if ell < 1:
        raise ValueError("ell must be positive")
    for clique in _cliques_of_size(g, ell):
        cset = set(clique)
        private = []
        for c in clique:
            private.append([x for x in range(g.n) if x not in cset and g.adj[x] & cset == {c}])
        if any(not p for p in private):
            continue
        picked: list[int] = []

        def choose(i: int) -> bool:
            if i == ell:
                return True
            for x in private[i]:
                if all(x not in g.adj[y] for y in picked):
                    picked.append(x)
                    if choose(i + 1):
                        return True
                    picked.pop()
            return False

        if choose(0):
            return HOccurrence(tuple(clique), tuple(picked))
    return None


def is_h_occurrence(g: Graph, occ: HOccurrence) -> bool:
    c, i = occ.clique_vertices, occ.independent_vertices
    if len(c) != len(i) or len(set(c) | set(i)) != 2 * len(c):
        return False
    if any(not g.has_edge(a, b) for a, b in combinations(c, 2)):
        return False
    if any(g.has_edge(a, b) for a, b in combinations(i, 2)):
        return False
    return all(g.has_edge(c[s], i[t]) == (s == t) for s in range(len(c)) for t in range(len(i)))
