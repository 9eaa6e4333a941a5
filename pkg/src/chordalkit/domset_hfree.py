"""n^O(l) Red-Blue Dominating Set on chordal graphs with no induced H_l.

Two tables are filled bottom-up over a host tree rooted at an added node
that no model contains:

* ``t1[node, X]``: fewest reds meeting the subtree, containing exactly the
  node-reds ``X`` (nonempty, at most ``l``), dominating every blue that
  meets the subtree;
* ``t2[node, Y]``: fewest reds strictly below the node dominating the blues
  strictly below plus the node-blues adjacent to ``Y``.

Excluding an induced H_l bounds how many node-reds an optimum uses and how
many reds a minimal dominator of node-blues needs, which is what keeps the
keys small.  Every entry carries a witness set whose size equals its value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

from .certify import CertificationError, Solution, is_red_blue_dominating
from .domset_fpt import RedBlueInstance
from .graph import TreeRepresentation, children_map, find_induced_h_ell, rooted

INF = math.inf
DEFAULT_PARTITION_CAP = 16


class PartitionCapError(RuntimeError):
    """Too many demanded blues for literal partition enumeration."""


Key = tuple[int, ...]


@dataclass
class VertexClasses:
    inter: dict
    under: dict
    contain: dict

    @classmethod
    def of(cls, tree: dict, models: dict, root) -> "VertexClasses":
        parent, order = rooted(tree, root)
        children = children_map(parent)
        sub: dict = {}
        for x in reversed(order):
            nodes = {x}
            for c in children.get(x, ()):
                nodes |= sub[c]
            sub[x] = nodes
        inter, under, contain = {}, {}, {}
        for x in order:
            inter[x] = frozenset(v for v, m in models.items() if m & sub[x])
            under[x] = frozenset(v for v, m in models.items() if m <= sub[x] and x not in m)
            contain[x] = frozenset(v for v, m in models.items() if x in m)
        return cls(inter, under, contain)


@dataclass
class DpTables:
    t1: dict = field(default_factory=dict)  # (node, key) -> (value, witness)
    t2: dict = field(default_factory=dict)

    def value1(self, node, key: Key) -> float:
        return self.t1.get((node, key), (INF, None))[0]

    def value2(self, node, key: Key) -> float:
        return self.t2.get((node, key), (INF, None))[0]


def _subsets(pool: Iterable[int], lo: int, hi: int):
    items = sorted(pool)
    for size in range(lo, min(hi, len(items)) + 1):
        yield from combinations(items, size)


def _best(cands) -> tuple[float, frozenset | None]:
    best: tuple[float, frozenset | None] = (INF, None)
    for value, wit in cands:
        if value < best[0]:
            best = (value, wit)
    return best


class _Dp:
    def __init__(self, inst: RedBlueInstance, ell: int, partition_cap: int):
        self.g = inst.g
        self.red = set(inst.red)
        self.blue = set(inst.blue)
        self.ell = ell
        self.cap = partition_cap
        tree = {x: set(nb) for x, nb in inst.tr.tree.items()}
        root = ("root",)
        anchor = inst.tr.root if inst.tr.root in tree else sorted(tree, key=repr)[0]
        tree[root] = {anchor}
        tree[anchor].add(root)
        self.root = root
        self.tree = tree
        parent, self.order = rooted(tree, root)
        self.children = {x: sorted(c, key=repr) for x, c in children_map(parent).items()}
        models = {v: inst.tr.models[v] for v in range(inst.g.n)}
        self.classes = VertexClasses.of(tree, models, root)
        self.tables = DpTables()

    # vertex-class shorthands
    def contain_r(self, x):
        return self.classes.contain[x] & self.red

    def contain_b(self, x):
        return self.classes.contain[x] & self.blue

    def under_r(self, x):
        return self.classes.under[x] & self.red

    def inter_r(self, x):
        return self.classes.inter[x] & self.red

    def nbhd(self, reds: Iterable[int]) -> set:
        out: set = set()
        for r in reds:
            out |= self.g.adj[r]
        return out & self.blue

    # per-child minima
    def m1(self, alpha, beta):
        pool = self.contain_r(beta) - self.contain_r(alpha)
        return _best(self.tables.t1.get((beta, z), (INF, None)) for z in _subsets(pool, 1, self.ell))

    def m2(self, alpha, beta, extra: frozenset = frozenset()):
        need = (self.contain_b(beta) - self.contain_b(alpha)) | extra
        cands = []
        for z in _subsets(self.under_r(beta), 0, self.ell):
            if need <= self.nbhd(z):
                cands.append(self.tables.t2.get((beta, z), (INF, None)))
        return _best(cands)

    def m_forced(self, alpha, beta, forced: Key):
        pool = self.contain_r(beta) - self.contain_r(alpha)
        cands = []
        for z in _subsets(pool, 0, self.ell - len(forced)):
            key = tuple(sorted(forced + z))
            cands.append(self.tables.t1.get((beta, key), (INF, None)))
        return _best(cands)

    def free_child(self, alpha, beta):
        return _best([self.m1(alpha, beta), self.m2(alpha, beta)])

    # updates
    def update_t1(self, alpha, x: Key, free: dict):
        xs = set(x)
        total = len(x)
        wit = set(x)
        for beta in self.children.get(alpha, ()):
            xi = tuple(sorted(xs & self.contain_r(beta)))
            if xi:
                value, sub = self.m_forced(alpha, beta, xi)
                value -= len(xi)
            else:
                value, sub = free[beta]
            if value == INF:
                return INF, None
            total += value
            wit |= sub
        return total, frozenset(wit)

    def update_t2(self, alpha, y: Key, free: dict):
        kids = self.children.get(alpha, ())
        parts = {beta: tuple(v for v in y if v in self.inter_r(beta)) for beta in kids}
        in_i = [beta for beta in kids if parts[beta]]
        total, wit = 0, set()
        for beta in kids:
            if not parts[beta]:
                value, sub = free[beta]
                if value == INF:
                    return INF, None
                total += value
                wit |= sub
        demand = sorted(self.nbhd(y) & self.contain_b(alpha))
        if len(demand) > self.cap:
            raise PartitionCapError(f"{len(demand)} demanded blues exceed the partition cap {self.cap}")
        allowed = []
        for b in demand:
            opts = [beta for beta in in_i if b in self.nbhd(parts[beta])]
            allowed.append(opts)
        memo: dict = {}
        best: tuple[float, frozenset | None] = (INF, None)
        for choice in product(*allowed):
            assign = {beta: set() for beta in in_i}
            for b, beta in zip(demand, choice):
                assign[beta].add(b)
            run, run_wit = 0, set()
            for beta in in_i:
                key = (beta, frozenset(assign[beta]))
                if key not in memo:
                    memo[key] = _best([self.m1(alpha, beta), self.m2(alpha, beta, key[1])])
                value, sub = memo[key]
                if value == INF:
                    run = INF
                    break
                run += value
                run_wit |= sub
            if run < best[0]:
                best = (run, frozenset(run_wit))
        if best[0] == INF:
            return INF, None
        return total + best[0], frozenset(wit | best[1])

    def run(self) -> DpTables:
        t = self.tables
        for alpha in reversed(self.order):
            kids = self.children.get(alpha, ())
            if not kids:
                t.t2[(alpha, ())] = (0, frozenset())
                for x in _subsets(self.contain_r(alpha), 1, self.ell):
                    t.t1[(alpha, x)] = (len(x), frozenset(x))
                continue
            free = {beta: self.free_child(alpha, beta) for beta in kids}
            for x in _subsets(self.contain_r(alpha), 1, self.ell):
                value, wit = self.update_t1(alpha, x, free)
                if value < INF:
                    t.t1[(alpha, x)] = (value, wit)
            for y in _subsets(self.under_r(alpha), 0, self.ell):
                value, wit = self.update_t2(alpha, y, free)
                if value < INF:
                    t.t2[(alpha, y)] = (value, wit)
        for (node, key), (value, wit) in list(t.t1.items()) + list(t.t2.items()):
            if len(wit) != value:
                raise CertificationError(f"table witness at {node!r} has size {len(wit)}, value {value}")
        return t


def fill_tables(inst: RedBlueInstance, ell: int, partition_cap: int = DEFAULT_PARTITION_CAP) -> tuple[DpTables, object]:
    """Filled tables and the added root node."""
    dp = _Dp(inst, ell, partition_cap)
    return dp.run(), dp.root


def solve_rbds_hfree(
    inst: RedBlueInstance, ell: int, partition_cap: int = DEFAULT_PARTITION_CAP, check_free: bool = True
) -> Solution | None:
    """Minimum red-blue dominating set of an H_ell-free chordal instance, or ``None``."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if check_free and find_induced_h_ell(inst.g, ell) is not None:
        raise ValueError(f"graph contains an induced H_{ell}")
    if not inst.blue:
        return Solution.of(())
    tables, root = fill_tables(inst, ell, partition_cap)
    value, wit = tables.t2.get((root, ()), (INF, None))
    if value == INF:
        return None
    if not is_red_blue_dominating(inst.g, inst.red, inst.blue, wit):
        raise CertificationError("table witness does not dominate every blue vertex")
    if inst.k is not None and value > inst.k:
        return None
    return Solution.of(wit)
