"""FPT Red-Blue Dominating Set on chordal graphs parameterized by leafage.

The solver works on tree representations only: the graph is the
intersection graph of the models, so every transformation is a change of
host tree and models.  The pipeline is

1. branch until each model holds at most one branching node and every
   branching node is monochromatic (each branch lowers a potential built
   from the leaf count and three "bad structure" counters);
2. on each such restricted instance, alternate reduction rules with a
   greedy selection at a deepest branching node until the tree is a path;
3. finish with an interval sweep.

Red vertices keep their identity through every step, so a chosen red set
is directly a witness for the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Hashable, Iterable, Mapping

from .certify import CertificationError, Solution, is_red_blue_dominating
from .covering import hitting_set_exact, set_cover_exact
from .graph import (
    Graph,
    TreeRepresentation,
    branching_nodes,
    children_map,
    depths,
    graph_from_models,
    is_path_tree,
    leaf_count,
    maximal_degree2_paths,
    rooted,
    subtree_nodes,
    tree_leaves,
    tree_path,
)

INF = math.inf
Vertex = Hashable


@dataclass(frozen=True)
class RedBlueInstance:
    g: Graph
    red: frozenset[int]
    blue: frozenset[int]
    k: int | None
    tr: TreeRepresentation

    def __post_init__(self) -> None:
        if self.red & self.blue or (self.red | self.blue) != frozenset(range(self.g.n)):
            raise ValueError("red and blue must partition the vertex set")


@dataclass(frozen=True)
class RestrictedInstance:
    """Model-level red-blue instance; the graph is implied by the models."""

    tree: Mapping[int, frozenset]
    models: Mapping[Vertex, frozenset]
    red: frozenset
    blue: frozenset
    k: int | None

    def to_graph(self) -> tuple[Graph, list]:
        order = sorted(self.models, key=repr)
        idx = {v: i for i, v in enumerate(order)}
        g = graph_from_models(len(order), {idx[v]: self.models[v] for v in order})
        return g, order


@dataclass
class PartialSolution:
    chosen: set = field(default_factory=set)

    @property
    def spent(self) -> int:
        return len(self.chosen)


def ds_to_rbds(g: Graph, k: int | None, tr: TreeRepresentation) -> RedBlueInstance:
    """Red copy ``v`` and blue copy ``v + n`` per vertex, both with the original model."""
    n = g.n
    edges = []
    for v in range(n):
        edges.append((v, v + n))
    for u, v in g.edges():
        edges += [(u, v), (u, v + n), (u + n, v), (u + n, v + n)]
    labels = None
    if g.labels:
        labels = [f"{g.label(v)}_R" for v in range(n)] + [f"{g.label(v)}_B" for v in range(n)]
    h = Graph.from_edges(2 * n, edges, labels)
    models = {}
    for v in range(n):
        models[v] = tr.models[v]
        models[v + n] = tr.models[v]
    tr2 = TreeRepresentation(tr.tree, models, tr.root, tr.allow_empty)
    return RedBlueInstance(h, frozenset(range(n)), frozenset(range(n, 2 * n)), k, tr2)


# ---------------------------------------------------------------------------
# Mutable working state


@dataclass
class _State:
    tree: dict
    models: dict
    red: set
    blue: set
    k: int | None
    chosen: set = field(default_factory=set)
    fresh_vertex: int = 0

    @classmethod
    def from_restricted(cls, inst: RestrictedInstance) -> "_State":
        return cls(
            {x: set(nb) for x, nb in inst.tree.items()},
            dict(inst.models),
            set(inst.red),
            set(inst.blue),
            inst.k,
        )

    def copy(self) -> "_State":
        return _State(
            {x: set(nb) for x, nb in self.tree.items()},
            dict(self.models),
            set(self.red),
            set(self.blue),
            self.k,
            set(self.chosen),
            self.fresh_vertex,
        )

    def freeze(self) -> RestrictedInstance:
        return RestrictedInstance(
            {x: frozenset(nb) for x, nb in self.tree.items()},
            dict(self.models),
            frozenset(self.red),
            frozenset(self.blue),
            self.k,
        )

    def new_node(self) -> int:
        return max(self.tree) + 1

    def new_blue(self, model: Iterable[int]) -> None:
        self.fresh_vertex += 1
        x = ("x", self.fresh_vertex)
        self.models[x] = frozenset(model)
        self.blue.add(x)

    def delete(self, v: Vertex) -> None:
        del self.models[v]
        self.red.discard(v)
        self.blue.discard(v)

    def containing(self, node: int, color: set) -> list:
        return [v for v in color if node in self.models[v]]

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return bool(self.models[u] & self.models[v])

    def red_neighbors(self, b: Vertex) -> list:
        mb = self.models[b]
        return [r for r in self.red if self.models[r] & mb]

    def blue_neighbors(self, r: Vertex) -> list:
        mr = self.models[r]
        return [b for b in self.blue if self.models[b] & mr]

    def contract(self, path_nodes: set) -> int:
        """Replace a connected node set by one fresh node; returns the new id."""
        new = self.new_node()
        outside = set()
        for x in path_nodes:
            outside |= self.tree[x] - path_nodes
        for x in path_nodes:
            del self.tree[x]
        self.tree[new] = set(outside)
        for y in outside:
            self.tree[y] = (self.tree[y] - path_nodes) | {new}
        return new

    def add_leaf(self, at: int) -> int:
        new = self.new_node()
        self.tree[new] = {at}
        self.tree[at].add(new)
        return new


def _sorted_vertices(vs: Iterable[Vertex]) -> list:
    return sorted(vs, key=repr)


# ---------------------------------------------------------------------------
# Measure and restricted-form checks


def _consecutive_branching_pairs(tree: Mapping) -> list[tuple[int, int, list]]:
    pairs = []
    for path in maximal_degree2_paths(tree):
        a, b = path[0], path[-1]
        if len(tree[a]) >= 3 and len(tree[b]) >= 3:
            if a > b:
                a, b, path = b, a, path[::-1]
            pairs.append((a, b, path))
    pairs.sort(key=lambda t: (t[0], t[1], t[2]))
    return pairs


def _counters(tree: Mapping, models: Mapping, red: Iterable, blue: Iterable):
    red, blue = list(red), list(blue)
    f_t = []
    for gamma in branching_nodes(tree):
        if any(gamma in models[v] for v in red) and any(gamma in models[v] for v in blue):
            f_t.append(gamma)
    f_r, f_b = [], []
    for a, b, path in _consecutive_branching_pairs(tree):
        if any(a in models[v] and b in models[v] for v in red):
            f_r.append((a, b, path))
        if any(a in models[v] and b in models[v] for v in blue):
            f_b.append((a, b, path))
    return f_t, f_r, f_b


def measure_of(tree: Mapping, models: Mapping, red: Iterable, blue: Iterable) -> int:
    f_t, f_r, f_b = _counters(tree, models, red, blue)
    return leaf_count(tree) + 2 * (len(f_t) + len(f_r) + len(f_b))


def measure(inst: RedBlueInstance | RestrictedInstance) -> int:
    """Leaf count plus twice the number of bichromatic branching nodes and
    red/blue-spanned consecutive branching pairs."""
    if isinstance(inst, RedBlueInstance):
        return measure_of(inst.tr.tree, inst.tr.models, inst.red, inst.blue)
    return measure_of(inst.tree, inst.models, inst.red, inst.blue)


def restricted_violations(tree: Mapping, models: Mapping, red: Iterable, blue: Iterable) -> list[str]:
    bn = set(branching_nodes(tree))
    out = []
    for v, m in models.items():
        if len(m & bn) > 1:
            out.append(f"model of {v!r} holds {len(m & bn)} branching nodes")
    red, blue = list(red), list(blue)
    for gamma in sorted(bn):
        if any(gamma in models[v] for v in red) and any(gamma in models[v] for v in blue):
            out.append(f"branching node {gamma} is bichromatic")
    return out


def is_restricted(inst: RestrictedInstance) -> bool:
    return not restricted_violations(inst.tree, inst.models, inst.red, inst.blue)


# ---------------------------------------------------------------------------
# Branching into restricted instances


def _branch_case(st: _State) -> list[_State] | None:
    """One branching step; ``None`` when the state is already restricted."""
    f_t, f_r, f_b = _counters(st.tree, st.models, st.red, st.blue)
    if f_t:
        gamma = f_t[0]
        first = st.copy()
        delta = first.add_leaf(gamma)
        for v in first.containing(gamma, first.red):
            first.models[v] = first.models[v] | {delta}
        for v in first.containing(gamma, first.blue):
            first.delete(v)
        first.new_blue({delta})
        second = st.copy()
        for v in second.containing(gamma, second.red):
            second.delete(v)
        return [first, second]
    if f_r:
        a, b, path = f_r[0]
        p = set(path)
        first = st.copy()
        spanning = {v for v in first.red if a in first.models[v] and b in first.models[v]}
        meeting_red = [v for v in first.red if first.models[v] & p]
        meeting_blue = [v for v in first.blue if first.models[v] & p]
        gamma = first.contract(p)
        delta = first.add_leaf(gamma)
        for v in meeting_red:
            extra = {gamma, delta} if v in spanning else {gamma}
            first.models[v] = (first.models[v] - p) | extra
        for v in meeting_blue:
            first.delete(v)
        first.new_blue({delta})
        second = st.copy()
        for v in spanning:
            second.delete(v)
        return [first, second]
    if f_b:
        a, b, path = f_b[0]
        p = set(path)
        interior = p - {a, b}
        out = []
        if interior:
            first = st.copy()
            for v in [v for v in first.blue if a in first.models[v] and b in first.models[v]]:
                first.delete(v)
            first.new_blue(interior)
            out.append(first)
        if not any(st.models[v] <= p for v in st.blue):
            second = st.copy()
            meeting_red = [v for v in second.red if second.models[v] & p]
            meeting_blue = [v for v in second.blue if second.models[v] & p]
            gamma = second.contract(p)
            for v in meeting_red:
                second.delete(v)
            for v in meeting_blue:
                second.models[v] = (second.models[v] - p) | {gamma}
            out.append(second)
        return out
    return None


def _state_from_instance(inst: RedBlueInstance) -> _State:
    tree = {x: set(nb) for x, nb in inst.tr.tree.items()}
    if not all(isinstance(x, int) for x in tree):
        raise TypeError("tree node identifiers must be integers")
    return _State(tree, dict(inst.tr.models), set(inst.red), set(inst.blue), inst.k)


def _branch_states(st: _State, on_step: Callable | None = None) -> list[_State]:
    out = []
    stack = [st]
    while stack:
        cur = stack.pop()
        kids = _branch_case(cur)
        if kids is None:
            out.append(cur)
            continue
        before = measure_of(cur.tree, cur.models, cur.red, cur.blue)
        for kid in kids:
            after = measure_of(kid.tree, kid.models, kid.red, kid.blue)
            if after >= before:
                raise AssertionError(f"measure did not decrease ({before} -> {after})")
            if on_step is not None:
                on_step(before, after)
        stack.extend(reversed(kids))
    return out


def branch_to_restricted(inst: RedBlueInstance, on_step: Callable | None = None) -> list[RestrictedInstance]:
    """All restricted instances produced by exhaustive branching.

    ``on_step(before, after)`` is called with the measure on every edge of
    the branching tree.
    """
    return [s.freeze() for s in _branch_states(_state_from_instance(inst), on_step)]


# ---------------------------------------------------------------------------
# Reduction rules


class _No(Exception):
    pass


@dataclass
class _Rooting:
    root: int
    parent: dict
    depth: dict
    children: dict
    alpha: int | None
    beta: int | None
    above: list  # nodes from alpha's parent up to beta (or the root)


def _rooting(st: _State) -> _Rooting:
    root = tree_leaves(st.tree)[0]
    parent, order = rooted(st.tree, root)
    depth = depths(parent, order)
    children = children_map(parent)
    bn = [x for x in st.tree if len(st.tree[x]) >= 3]
    alpha = beta = None
    above: list = []
    if bn:
        alpha = max(bn, key=lambda x: (depth[x], -x))
        x = parent[alpha]
        while x is not None:
            above.append(x)
            if len(st.tree[x]) >= 3:
                beta = x
                break
            x = parent[x]
    return _Rooting(root, parent, depth, children, alpha, beta, above)


def _top(st: _State, ro: _Rooting, v: Vertex) -> int:
    return min(st.models[v], key=lambda x: (ro.depth[x], x))


def _rule_blue_without_red(st: _State) -> None:
    if st.k is not None and st.k < 0:
        raise _No
    for b in st.blue:
        if not st.red_neighbors(b):
            raise _No


def _rule_nested(st: _State) -> bool:
    blues = sorted(st.blue, key=lambda v: (len(st.models[v]), repr(v)))
    for i, u in enumerate(blues):
        mu = st.models[u]
        for v in blues[i + 1:]:
            if mu <= st.models[v]:
                st.delete(v)
                return True
    reds = sorted(st.red, key=lambda v: (len(st.models[v]), repr(v)))
    for i, u in enumerate(reds):
        mu = st.models[u]
        for v in reds[i + 1:]:
            if mu <= st.models[v]:
                st.delete(u)
                return True
    return False


def _select(st: _State, reds: Iterable[Vertex]) -> None:
    reds = list(reds)
    covered = set()
    for r in reds:
        covered.update(st.blue_neighbors(r))
    for r in reds:
        st.delete(r)
        st.chosen.add(r)
    for b in covered:
        st.delete(b)
    if st.k is not None:
        st.k -= len(reds)


def _rule_leg_greedy(st: _State, ro: _Rooting) -> bool:
    if ro.alpha is None:
        return False
    alpha = ro.alpha
    below = subtree_nodes(ro.children, alpha) - {alpha}
    alpha_reds = st.containing(alpha, st.red)
    cands = []
    for b in st.blue:
        mb = st.models[b]
        if mb <= below and not any(st.models[r] & mb for r in alpha_reds):
            cands.append(b)
    if not cands:
        return False
    v = max(cands, key=lambda b: (ro.depth[_top(st, ro, b)], -_top(st, ro, b), repr(b)))
    nbrs = st.red_neighbors(v)
    if not nbrs:
        raise _No
    vr = min(nbrs, key=lambda r: (ro.depth[_top(st, ro, r)], repr(r)))
    _select(st, [vr])
    return True


def _plumbing(st: _State) -> bool:
    changed = False
    for r in list(st.red):
        if not st.blue_neighbors(r):
            st.delete(r)
            changed = True
    if changed:
        return True
    if len(st.tree) > 1:
        for lam in sorted(x for x in st.tree if len(st.tree[x]) <= 1):
            has_red = any(lam in st.models[v] for v in st.red)
            has_blue = any(lam in st.models[v] for v in st.blue)
            if has_red and has_blue:
                continue
            for v in list(st.models):
                m = st.models[v]
                if lam in m:
                    if len(m) == 1:
                        if v in st.blue:
                            raise _No
                        st.delete(v)
                    else:
                        st.models[v] = m - {lam}
            for y in st.tree[lam]:
                st.tree[y].discard(lam)
            del st.tree[lam]
            return True
        used = set()
        for m in st.models.values():
            used |= m
        for x in sorted(st.tree):
            if x not in used and len(st.tree[x]) == 2:
                a, b = sorted(st.tree[x])
                del st.tree[x]
                st.tree[a] = (st.tree[a] - {x}) | {b}
                st.tree[b] = (st.tree[b] - {x}) | {a}
                return True
    return False


def apply_reduction_rules(inst: RestrictedInstance) -> RestrictedInstance | None:
    """Exhaustive rule application; ``None`` means a trivial NO-instance."""
    st = _State.from_restricted(inst)
    try:
        _reduce(st)
    except _No:
        return None
    return st.freeze()


def _reduce(st: _State, checker: Callable | None = None) -> None:
    while True:
        _rule_blue_without_red(st)
        before = st.copy() if checker else None
        if _rule_nested(st) or _rule_leg_greedy(st, _rooting(st)) or _plumbing(st):
            if checker:
                checker(before, st)
            continue
        return


# ---------------------------------------------------------------------------
# Greedy selection at the deepest branching node


def _distance_from(st: _State, source: int) -> dict:
    parent, order = rooted(st.tree, source)
    return depths(parent, order)


def greedy_select_red_state(st: _State, ro: _Rooting) -> int:
    """Greedy step when every vertex containing alpha is red; returns spent."""
    alpha = ro.alpha
    dist = _distance_from(st, alpha)
    path = set(ro.above) | {alpha}
    blues_on_path = [b for b in st.blue if st.models[b] & path]
    blues_on_path.sort(key=lambda b: (min(dist[x] for x in st.models[b]), repr(b)))
    alpha_reds = _sorted_vertices(st.containing(alpha, st.red))
    critical = []
    for child in ro.children[alpha]:
        leg = subtree_nodes(ro.children, child)
        inside = [b for b in st.blue if st.models[b] <= leg]
        if inside:
            critical.append(max(inside, key=lambda b: (ro.depth[_top(st, ro, b)], repr(b))))
    results = []
    for i in range(len(blues_on_path) + 1):
        targets = critical + ([blues_on_path[i - 1]] if i else [])
        fams = [[b for b in targets if st.adjacent(r, b)] for r in alpha_reds]
        res = set_cover_exact(range(len(targets)), [[targets.index(b) for b in f] for f in fams])
        results.append(res)
    if results[0] is None:
        raise _No
    base = results[0][0]
    q = max(i for i, res in enumerate(results) if res is not None and res[0] == base)
    picked = [alpha_reds[j] for j in results[q][1]]
    _select(st, picked)
    return len(picked)


def greedy_select_blue_state(st: _State, ro: _Rooting) -> int:
    """Greedy step when every vertex containing alpha is blue; returns spent."""
    alpha = ro.alpha
    below = subtree_nodes(ro.children, alpha)
    under_blue = [b for b in st.blue if st.models[b] <= below - {alpha}]
    if under_blue:
        raise AssertionError("blue vertices strictly below alpha survived the reduction rules")
    dist = _distance_from(st, alpha)
    path = set(ro.above)
    reds_on_path = [r for r in st.red if st.models[r] & path]
    reds_on_path.sort(key=lambda r: (min(dist[x] for x in st.models[r]), repr(r)))
    below_red = [r for r in st.red if st.models[r] <= below]
    inter_blue = _sorted_vertices(b for b in st.blue if st.models[b] & below)
    critical = []
    for child in ro.children[alpha]:
        leg = subtree_nodes(ro.children, child)
        inside = [r for r in below_red if st.models[r] <= leg]
        if inside:
            critical.append(min(inside, key=lambda r: (ro.depth[_top(st, ro, r)], repr(r))))

    def solve(blues: list):
        sets = [[c for c in critical if st.adjacent(c, b)] for b in blues]
        return hitting_set_exact(range(len(critical)), [[critical.index(c) for c in s] for s in sets])

    if not reds_on_path:
        chosen = solve(inter_blue)
        if chosen is None:
            raise _No
        picked = [critical[j] for j in chosen[1]]
    else:
        results = []
        for r in reds_on_path:
            results.append(solve([b for b in inter_blue if not st.adjacent(r, b)]))
        results.append(solve(inter_blue))
        if results[0] is None:
            raise _No
        base = results[0][0]
        q = max(i for i, res in enumerate(results) if res is not None and res[0] == base)
        picked = [critical[j] for j in results[q][1]]
    # Some optimum uses exactly ``picked`` among the reds below alpha.
    for r in below_red:
        if r not in picked:
            st.delete(r)
    _select(st, picked)
    return len(picked)


def greedy_select_red(inst: RestrictedInstance) -> tuple[PartialSolution, RestrictedInstance]:
    st = _State.from_restricted(inst)
    ro = _rooting(st)
    if ro.alpha is None or st.containing(ro.alpha, st.blue):
        raise ValueError("needs a branching node contained only in red models")
    greedy_select_red_state(st, ro)
    return PartialSolution(set(st.chosen)), st.freeze()


def greedy_select_blue(inst: RestrictedInstance) -> tuple[PartialSolution, RestrictedInstance]:
    st = _State.from_restricted(inst)
    ro = _rooting(st)
    if ro.alpha is None or st.containing(ro.alpha, st.red):
        raise ValueError("needs a branching node contained only in blue models")
    greedy_select_blue_state(st, ro)
    return PartialSolution(set(st.chosen)), st.freeze()


def _interval_sweep(st: _State) -> None:
    if not st.blue:
        return
    ends = tree_leaves(st.tree)
    order = tree_path(st.tree, ends[0], ends[-1]) if len(st.tree) > 1 else list(st.tree)
    pos = {x: i for i, x in enumerate(order)}
    span = {v: (min(pos[x] for x in m), max(pos[x] for x in m)) for v, m in st.models.items()}
    blues = sorted(st.blue, key=lambda b: (span[b][1], repr(b)))
    reds = list(st.red)
    picked: list = []
    covered: set = set()
    for b in blues:
        if b in covered:
            continue
        lb, rb = span[b]
        nbrs = [r for r in reds if span[r][0] <= rb and span[r][1] >= lb]
        if not nbrs:
            raise _No
        r = max(nbrs, key=lambda r: (span[r][1], repr(r)))
        picked.append(r)
        lr, rr = span[r]
        covered.update(c for c in st.blue if span[c][0] <= rr and span[c][1] >= lr)
    _select(st, picked)


def _solve_state(st: _State, checker: Callable | None = None) -> bool:
    try:
        while True:
            _reduce(st, checker)
            if not st.blue:
                break
            if is_path_tree(st.tree):
                _interval_sweep(st)
                break
            ro = _rooting(st)
            before = st.copy() if checker else None
            if st.containing(ro.alpha, st.blue):
                greedy_select_blue_state(st, ro)
            else:
                greedy_select_red_state(st, ro)
            if checker:
                checker(before, st)
        if st.k is not None and st.k < 0:
            return False
        return True
    except _No:
        return False


def solve_restricted(inst: RestrictedInstance, checker: Callable | None = None) -> Solution | None:
    """Optimum of a restricted instance, or ``None`` when NO (or over budget).

    ``checker(before, after)`` receives working states around every rule
    firing and greedy step (used by debug tests to compare optima).
    """
    violations = restricted_violations(inst.tree, inst.models, inst.red, inst.blue)
    if violations:
        raise ValueError(f"not a restricted instance: {violations[0]}")
    st = _State.from_restricted(inst)
    if not _solve_state(st, checker):
        return None
    return Solution.of(st.chosen)


def solve_rbds(inst: RedBlueInstance) -> Solution | None:
    """Minimum red-blue dominating set, or ``None`` if none within ``inst.k``."""
    best: Solution | None = None
    relaxed = replace(inst, k=None)
    for leaf in branch_to_restricted(relaxed):
        sol = solve_restricted(leaf)
        if sol is not None and (best is None or sol.size < best.size):
            best = sol
    if best is None:
        return None
    if not is_red_blue_dominating(inst.g, inst.red, inst.blue, best.vertices):
        raise CertificationError("red-blue witness does not dominate every blue vertex")
    if inst.k is not None and best.size > inst.k:
        return None
    return best
