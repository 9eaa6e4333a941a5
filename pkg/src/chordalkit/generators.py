"""Instance generators: random chordal graphs and the hardness constructions.

Every generator returns a :class:`GeneratedInstance` whose ``claims`` were
checked before it was handed out (chordality, representation validity,
leaf bounds, and, for the constructions with known solutions, the
certified witness).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Iterable

from .certify import CertificationError, is_multicut
from .graph import (
    Graph,
    TreeRepresentation,
    find_induced_h_ell,
    graph_from_models,
    is_chordal,
    leaf_count,
    tree_from_edges,
    validate_tree_representation,
)


@dataclass
class GeneratedInstance:
    kind: str
    graph: Graph
    tr: TreeRepresentation
    red: frozenset[int] = frozenset()
    blue: frozenset[int] = frozenset()
    terminals: frozenset[int] = frozenset()
    pairs: tuple[tuple[int, int], ...] = ()
    k: int | None = None
    claims: dict[str, Any] = field(default_factory=dict)
    witness: frozenset[int] | None = None
    meta: dict[str, Any] = field(default_factory=dict)


def _certify(inst: GeneratedInstance, check_chordal: bool = True) -> GeneratedInstance:
    report = validate_tree_representation(inst.graph, inst.tr)
    if not report.ok:
        raise CertificationError(f"generated representation invalid: {report.violations[:3]}")
    inst.claims["valid_representation"] = True
    if check_chordal:
        if is_chordal(inst.graph) is None:
            raise CertificationError("generated graph is not chordal")
        inst.claims["chordal"] = True
    inst.claims["leaf_count"] = inst.tr.leafage_upper_bound
    return inst


# ---------------------------------------------------------------------------
# Random chordal graphs from subtree models


def random_host_tree(rng: random.Random, size: int, max_leaves: int) -> dict:
    max_leaves = max(2, max_leaves)
    deg = {0: 0}
    edges = []
    for x in range(1, size):
        leaves = sum(1 for d in deg.values() if d <= 1)
        allowed = []
        for y, d in deg.items():
            if len(deg) == 1:
                after = 2
            elif d == 1:
                after = leaves
            else:
                after = leaves + 1
            if after <= max_leaves:
                allowed.append(y)
        y = rng.choice(sorted(allowed))
        edges.append((x, y))
        deg[x] = 1
        deg[y] += 1
    return tree_from_edges(range(size), edges)


def random_subtree(rng: random.Random, tree: dict, size: int) -> frozenset:
    start = rng.choice(sorted(tree))
    nodes = {start}
    frontier = set(tree[start])
    while len(nodes) < size and frontier:
        x = rng.choice(sorted(frontier))
        nodes.add(x)
        frontier.discard(x)
        frontier |= {y for y in tree[x] if y not in nodes}
    return frozenset(nodes)


def gen_random_chordal(
    n: int,
    seed: int,
    leafage_target: int = 3,
    red_blue: bool = False,
    terminals: bool = False,
    tree_size: int | None = None,
    max_model: int | None = None,
) -> GeneratedInstance:
    """Random chordal graph with a representation of at most ``leafage_target`` leaves."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    size = tree_size if tree_size is not None else rng.randint(1, max(1, n))
    tree = random_host_tree(rng, size, leafage_target)
    cap = max_model if max_model is not None else max(1, (size + 1) // 2)
    models = {v: random_subtree(rng, tree, rng.randint(1, cap)) for v in range(n)}
    g = graph_from_models(n, models)
    tr = TreeRepresentation(tree, models, 0, allow_empty=True)
    inst = GeneratedInstance("random", g, tr, meta={"seed": seed, "leafage_target": leafage_target})
    if red_blue:
        red = {v for v in range(n) if rng.random() < 0.5}
        inst.red = frozenset(red)
        inst.blue = frozenset(set(range(n)) - red)
    if terminals:
        count = rng.randint(0, max(0, min(n, 4)))
        inst.terminals = frozenset(rng.sample(range(n), count))
    _certify(inst)
    if leaf_count(tree) > max(2, leafage_target):
        raise CertificationError("host tree exceeds the leaf target")
    inst.claims["leafage_target"] = leafage_target
    return inst


def random_pairs(rng: random.Random, g: Graph, count: int) -> tuple[tuple[int, int], ...]:
    """Distinct non-adjacent vertex pairs (fewer if not enough exist)."""
    cands = [(u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)]
    rng.shuffle(cands)
    return tuple(sorted(cands[:count]))


# ---------------------------------------------------------------------------
# Multicolored Clique -> Multicut with undeletable terminals


@dataclass(frozen=True)
class MccInput:
    g: Graph
    q: int
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.parts) != self.q or self.q < 1:
            raise ValueError("need exactly q parts")
        sizes = {len(p) for p in self.parts}
        if len(sizes) != 1 or 0 in sizes:
            raise ValueError("parts must be nonempty and of equal size")
        flat = [v for p in self.parts for v in p]
        if sorted(flat) != list(range(self.g.n)):
            raise ValueError("parts must partition the vertex set")
        for p in self.parts:
            if any(self.g.has_edge(u, v) for u, v in combinations(p, 2)):
                raise ValueError("each part must be independent")

    @property
    def n(self) -> int:
        return len(self.parts[0])

    def position(self, v: int) -> tuple[int, int]:
        """(part index, 1-based index inside the part)."""
        for i, p in enumerate(self.parts):
            if v in p:
                return i, p.index(v) + 1
        raise KeyError(v)


@dataclass(frozen=True)
class MccParameters:
    m: int
    central: int
    k: int


def mcc_parameters(n: int, q: int, edges: int, scaled_m: int | None = None) -> MccParameters:
    """Gadget scale, central clique size and budget.

    ``scaled_m`` replaces the default scale; it must still exceed the edge
    slack and keep the central clique larger than the budget, which are the
    two facts the equivalence argument relies on.
    """
    slack = edges - q * (q - 1) // 2
    m = (n + 1) ** 2 * q ** 2 if scaled_m is None else scaled_m
    k = q * (n + 1) * m + slack
    if m <= slack:
        raise ValueError(f"scale {m} must exceed the edge slack {slack}")
    if 2 * m * m <= k:
        raise ValueError(f"central clique {2 * m * m} must exceed the budget {k}")
    return MccParameters(m, 2 * m * m, k)


def smallest_scale(n: int, q: int, edges: int) -> int:
    m = 1
    while True:
        try:
            mcc_parameters(n, q, edges, m)
            return m
        except ValueError:
            m += 1


@dataclass
class _MccLayout:
    """Vertex ids of every gadget, in deterministic lexicographic order."""

    p: dict = field(default_factory=dict)  # (i, side, a) -> vertex
    clique: dict = field(default_factory=dict)  # (i, side, a) -> list of vertices
    edge_vertex: dict = field(default_factory=dict)  # (u, v) -> vertex
    central: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    def new(self, label: str) -> int:
        self.labels.append(label)
        return len(self.labels) - 1


SIDES = ("alpha", "beta")


def _mcc_edges(mcc: MccInput) -> list[tuple[int, int]]:
    return sorted((min(u, v), max(u, v)) for u, v in mcc.g.edges())


def gen_multicut_from_mcc(mcc: MccInput, scaled_m: int | None = None, certify: bool = True) -> GeneratedInstance:
    """Multicut instance that has a solution of size ``k`` iff ``mcc`` has a multicolored clique."""
    n, q = mcc.n, mcc.q
    gedges = _mcc_edges(mcc)
    params = mcc_parameters(n, q, len(gedges), scaled_m)
    m = params.m
    lay = _MccLayout()
    leg_len = 3 * n + 2
    centre = 2 * q * leg_len
    models: dict[int, set] = {}

    def leg(i: int, side: str) -> int:
        return (2 * i + SIDES.index(side)) * leg_len

    # Each copy of the auxiliary graph lies on one leg: p_a on [3a-3, 3a-2], K_a on [3a-2, 3a].
    for i in range(q):
        for side in SIDES:
            base = leg(i, side)
            for a in range(1, n + 2):
                v = lay.new(f"p[{i + 1},{side},{a}]")
                lay.p[i, side, a] = v
                models[v] = {base + 3 * a - 3, base + 3 * a - 2}
            for a in range(1, n + 1):
                members = []
                for c in range(a * m):
                    v = lay.new(f"K[{i + 1},{side},{a}].{c}")
                    members.append(v)
                    models[v] = {base + 3 * a - 2, base + 3 * a - 1, base + 3 * a}
                lay.clique[i, side, a] = members
    for u, v in gedges:
        (i, ai), (j, aj) = mcc.position(u), mcc.position(v)
        x = lay.new(f"e[{u},{v}]")
        lay.edge_vertex[u, v] = x
        model = {centre}
        for part, idx in ((i, ai), (j, aj)):
            model |= {leg(part, "alpha") + s for s in range(3 * idx - 1, 3 * n + 2)}
            b = n + 2 - idx
            model |= {leg(part, "beta") + s for s in range(3 * b - 2, 3 * n + 2)}
        models[x] = model
    for c in range(params.central):
        v = lay.new(f"K.{c}")
        lay.central.append(v)
        models[v] = {centre} | {leg(i, side) + 3 * n + 1 for i in range(q) for side in SIDES}
    total = len(lay.labels)
    tree_edges = []
    for i in range(q):
        for side in SIDES:
            base = leg(i, side)
            tree_edges += [(base + s, base + s + 1) for s in range(leg_len - 1)]
            tree_edges.append((base + leg_len - 1, centre))
    tree = tree_from_edges(range(centre + 1), tree_edges)
    frozen = {v: frozenset(models[v]) for v in range(total)}
    h = graph_from_models(total, frozen, lay.labels)
    tr = TreeRepresentation(tree, frozen, centre)
    # a runs to n + 1 so that the top p of every alpha copy is a terminal too;
    # otherwise deleting it plus every edge-vertex is a cheap cut.
    pairs = tuple(
        sorted((lay.p[i, "alpha", a], lay.p[i, "beta", n + 2 - a]) for i in range(q) for a in range(1, n + 2))
    )
    inst = GeneratedInstance(
        "mcc-multicut", h, tr, pairs=pairs, k=params.k,
        meta={"n": n, "q": q, "m": m, "central": params.central, "layout": lay, "mcc": mcc},
    )
    if certify:
        explicit = _mcc_explicit_graph(mcc, lay)
        if explicit.adj != h.adj:
            raise CertificationError("representation graph differs from the explicit construction")
        _certify(inst)
        if leaf_count(tree) > 2 * q:
            raise CertificationError("host tree exceeds 2q leaves")
    inst.claims["leafage_bound"] = 2 * q
    return inst


def _mcc_explicit_graph(mcc: MccInput, lay: _MccLayout) -> Graph:
    """The same graph built from adjacency rules alone."""
    n, q = mcc.n, mcc.q
    edges: list[tuple[int, int]] = []

    def complete(xs, ys):
        edges.extend((x, y) for x in xs for y in ys if x != y)

    for i in range(q):
        for side in SIDES:
            for a in range(1, n + 1):
                ka = lay.clique[i, side, a]
                edges.extend(combinations(ka, 2))
                complete([lay.p[i, side, a], lay.p[i, side, a + 1]], ka)
    ordered = sorted(lay.edge_vertex)
    for u, v in ordered:
        x = lay.edge_vertex[u, v]
        for part, idx in (mcc.position(u), mcc.position(v)):
            complete([x], [lay.p[part, "alpha", a] for a in range(idx + 1, n + 2)])
            complete([x], [y for a in range(idx, n + 1) for y in lay.clique[part, "alpha", a]])
            b = n + 2 - idx
            complete([x], [lay.p[part, "beta", a] for a in range(b, n + 2)])
            complete([x], [y for a in range(b, n + 1) for y in lay.clique[part, "beta", a]])
    vertices_e = [lay.edge_vertex[e] for e in ordered]
    # Edge-vertices share the central tree node, so they form a clique.
    edges.extend(combinations(vertices_e, 2))
    edges.extend(combinations(lay.central, 2))
    tops = [lay.p[i, side, n + 1] for i in range(q) for side in SIDES]
    complete(lay.central, tops + vertices_e)
    return Graph.from_edges(len(lay.labels), edges, lay.labels)


def mcc_solution_to_multicut(inst: GeneratedInstance, clique: Iterable[int]) -> frozenset[int]:
    """Multicut of size exactly ``k`` built from a multicolored clique."""
    mcc: MccInput = inst.meta["mcc"]
    lay: _MccLayout = inst.meta["layout"]
    clique = sorted(clique)
    picks: dict[int, int] = {}
    for v in clique:
        i, a = mcc.position(v)
        if i in picks:
            raise ValueError("two clique vertices in the same part")
        picks[i] = a
    if len(picks) != mcc.q:
        raise ValueError("need one vertex per part")
    if any(not mcc.g.has_edge(u, v) for u, v in combinations(clique, 2)):
        raise ValueError("input is not a clique")
    inside = {(min(u, v), max(u, v)) for u, v in combinations(clique, 2)}
    s = {x for e, x in lay.edge_vertex.items() if e not in inside}
    n = mcc.n
    for i, a in picks.items():
        s |= set(lay.clique[i, "alpha", a])
        s |= set(lay.clique[i, "beta", n + 1 - a])
    s = frozenset(s)
    if len(s) != inst.k:
        raise CertificationError(f"clique multicut has size {len(s)}, budget {inst.k}")
    if s & {v for pair in inst.pairs for v in pair}:
        raise CertificationError("clique multicut contains a terminal")
    if not is_multicut(inst.graph, inst.pairs, s):
        raise CertificationError("clique multicut leaves a pair connected")
    return s


def random_mcc(q: int, n: int, seed: int, density: float = 0.5) -> MccInput:
    rng = random.Random(seed)
    parts = tuple(tuple(range(i * n, (i + 1) * n)) for i in range(q))
    edges = [
        (u, v)
        for i, j in combinations(range(q), 2)
        for u in parts[i]
        for v in parts[j]
        if rng.random() < density
    ]
    return MccInput(Graph.from_edges(q * n, edges), q, parts)


def has_multicolored_clique(mcc: MccInput) -> tuple[int, ...] | None:
    for choice in product(*mcc.parts):
        if all(mcc.g.has_edge(u, v) for u, v in combinations(choice, 2)):
            return choice
    return None


def has_multicolored_independent_set(g: Graph, parts: Iterable[Iterable[int]]) -> tuple[int, ...] | None:
    for choice in product(*[tuple(p) for p in parts]):
        if not any(g.has_edge(u, v) for u, v in combinations(choice, 2)):
            return choice
    return None


# ---------------------------------------------------------------------------
# Multicolored Independent Set -> Dominating Set on split graphs


def _split_representation(clique_size: int, neighbourhoods: list[frozenset[int]]) -> TreeRepresentation:
    """Star host tree: a hub for the clique and one leaf per independent vertex."""
    hub = 0
    tree_edges = [(hub, 1 + w) for w in range(len(neighbourhoods))]
    models: dict[int, set] = {v: {hub} for v in range(clique_size)}
    for w, nb in enumerate(neighbourhoods):
        models[clique_size + w] = {1 + w}
        for v in nb:
            models[v].add(1 + w)
    return TreeRepresentation.build(range(1 + len(neighbourhoods)), tree_edges, models, hub)


def gen_domset_from_mis(g: Graph, q: int, parts: Iterable[Iterable[int]], steiner: bool = False) -> GeneratedInstance:
    """Split graph with a dominating set of size ``q`` iff a multicolored independent set exists.

    With ``steiner`` every non-clique vertex becomes a terminal and the
    budget counts them as well.
    """
    parts = [tuple(sorted(p)) for p in parts]
    if len(parts) != q:
        raise ValueError("need exactly q parts")
    part_of = {v: i for i, p in enumerate(parts) for v in p}
    if sorted(part_of) != list(range(g.n)):
        raise ValueError("parts must partition the vertex set")
    for p in parts:
        if any(g.has_edge(u, v) for u, v in combinations(p, 2)):
            raise ValueError("each part must be independent")
    nbhds: list[frozenset[int]] = []
    labels = [f"c{v}" for v in range(g.n)]
    for i, p in enumerate(parts):
        nbhds += [frozenset(p), frozenset(p)]
        labels += [f"x{i + 1}", f"y{i + 1}"]
    for u, v in g.edges():
        i, j = part_of[u], part_of[v]
        nbhds.append(frozenset((set(parts[i]) | set(parts[j])) - {u, v}))
        labels.append(f"w[{u},{v}]")
    edges = list(combinations(range(g.n), 2))
    for w, nb in enumerate(nbhds):
        edges += [(g.n + w, v) for v in nb]
    h = Graph.from_edges(g.n + len(nbhds), edges, labels)
    tr = _split_representation(g.n, nbhds)
    independent = frozenset(range(g.n, h.n))
    if steiner:
        inst = GeneratedInstance("mis-steiner", h, tr, terminals=independent, k=q + len(independent))
    else:
        inst = GeneratedInstance("mis-domset", h, tr, k=q)
    inst.meta.update({"q": q, "parts": parts, "clique": tuple(range(g.n))})
    _certify(inst)
    if h.n <= 40 and find_induced_h_ell(h, 2 * q + 2) is not None:
        raise CertificationError(f"output contains an induced H_{2 * q + 2}")
    inst.claims["h_free_index"] = 2 * q + 2
    return inst


# ---------------------------------------------------------------------------
# Vertex Cover -> Multicut on a subdivided star


def gen_multicut_from_vc(g: Graph, q: int | None = None) -> GeneratedInstance:
    """Subdivided star: centre 0, arm ``v`` is middle ``1 + 2v`` then leaf ``2 + 2v``.

    The extra arm (index ``g.n``) pairs its leaf with the centre, which keeps
    the centre undeletable at the price of one deletion, so the optimum is
    the vertex cover number plus one.
    """
    arms = g.n + 1
    n = 1 + 2 * arms
    edges = []
    for v in range(arms):
        edges += [(0, 1 + 2 * v), (1 + 2 * v, 2 + 2 * v)]
    labels = ["r"] + [x for v in range(arms) for x in (f"m{v}", f"f{v}" if v < g.n else "w")]
    h = Graph.from_edges(n, edges, labels)
    # Tree representation: each tree edge of the star becomes one node.
    models: dict[int, set] = {0: {("c", v) for v in range(arms)}}
    tree_nodes = []
    tree_es = []
    for v in range(arms):
        a, b = ("c", v), ("m", v)
        tree_nodes += [a, b]
        tree_es.append((a, b))
        if v:
            tree_es.append((("c", 0), a))
        models[1 + 2 * v] = {a, b}
        models[2 + 2 * v] = {b}
    ids = {x: i for i, x in enumerate(tree_nodes)}
    tr = TreeRepresentation.build(
        range(len(tree_nodes)),
        [(ids[a], ids[b]) for a, b in tree_es],
        {v: {ids[x] for x in m} for v, m in models.items()},
        0,
    )
    pairs = sorted((2 + 2 * u, 2 + 2 * v) for u, v in g.edges()) + [(0, 2 + 2 * g.n)]
    k = None if q is None else q + 1
    inst = GeneratedInstance("vc-multicut", h, tr, pairs=tuple(pairs), k=k, meta={"vc_graph": g})
    _certify(inst)
    if len(h.edges()) != h.n - 1 or len(h.components()) != 1:
        raise CertificationError("subdivided star is not a tree")
    inst.claims["acyclic"] = True
    inst.claims["h_free_index"] = 3
    return inst


# ---------------------------------------------------------------------------
# Bipartite Vertex Cover -> Multiway Cut


def gen_mwc_from_bipartite_vc(g: Graph, side_a: Iterable[int]) -> GeneratedInstance:
    """Side B becomes a clique, each a in A gets a pendant terminal, and one
    terminal sees all of B.  Vertex covers of ``g`` are exactly the
    multiway cuts."""
    side_a = frozenset(side_a)
    side_b = frozenset(range(g.n)) - side_a
    for u, v in g.edges():
        if (u in side_a) == (v in side_a):
            raise ValueError("supplied sides are not a bipartition")
    a_list = sorted(side_a)
    pend = {a: g.n + i for i, a in enumerate(a_list)}
    hub_terminal = g.n + len(a_list)
    n = hub_terminal + 1
    edges = list(g.edges()) + list(combinations(sorted(side_b), 2))
    edges += [(a, pend[a]) for a in a_list] + [(b, hub_terminal) for b in side_b]
    labels = [f"v{v}" for v in range(g.n)] + [f"t{a}" for a in a_list] + ["t"]
    h = Graph.from_edges(n, edges, labels)
    # Hub node c, then per a: node la (meets its B-neighbours), leaf ma (pendant).
    hub = 0
    la = {a: 1 + 2 * i for i, a in enumerate(a_list)}
    ma = {a: 2 + 2 * i for i, a in enumerate(a_list)}
    tree_es = [(hub, la[a]) for a in a_list] + [(la[a], ma[a]) for a in a_list]
    models: dict[int, set] = {b: {hub} for b in side_b}
    for a in a_list:
        models[a] = {la[a], ma[a]}
        models[pend[a]] = {ma[a]}
        for b in g.adj[a]:
            models[b].add(la[a])
    models[hub_terminal] = {hub}
    tr = TreeRepresentation.build(range(1 + 2 * len(a_list)), tree_es, models, hub)
    terms = frozenset(pend.values()) | {hub_terminal}
    inst = GeneratedInstance("bvc-mwc", h, tr, terminals=terms, meta={"vc_graph": g, "side_a": side_a})
    return _certify(inst)


def random_bipartite(rng: random.Random, na: int, nb: int, density: float = 0.4) -> tuple[Graph, frozenset[int]]:
    edges = [(a, na + b) for a in range(na) for b in range(nb) if rng.random() < density]
    return Graph.from_edges(na + nb, edges), frozenset(range(na))
