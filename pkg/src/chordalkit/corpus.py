"""Seeded solver-versus-oracle corpus.

Each kind pairs a generator of random chordal cases with a solver, a
brute-force oracle and a structural witness check.  A case passes when the
optimum agrees with the oracle, the decision agrees for every budget
``0..n+1``, and every returned witness re-verifies.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .certify import (
    Solution,
    is_connected_dominating_set,
    is_dominating_set,
    is_multicut,
    is_multiway_cut,
    is_red_blue_dominating,
    is_steiner_vertex_set,
)
from .domset_fpt import RedBlueInstance, solve_rbds
from .domset_hfree import solve_rbds_hfree
from .generators import gen_random_chordal, random_pairs
from .graph import Graph, TreeRepresentation, find_induced_h_ell
from .multicut import MulticutInstance, solve_multicut_xp
from .multiway_cut import solve_mwc
from .oracles import brute_cds, brute_ds, brute_mc, brute_mwc, brute_rbds, brute_steiner
from .variants import ConnectedRbdsInstance, solve_cds, solve_connected_rbds, solve_ds, solve_steiner

KINDS = ("rbds", "ds", "cds", "crbds", "steiner", "mwc", "mc", "hfree")
HFREE_ELL = 3


@dataclass
class Case:
    kind: str
    seed: int
    g: Graph
    tr: TreeRepresentation
    red: frozenset[int] = frozenset()
    blue: frozenset[int] = frozenset()
    terminals: frozenset[int] = frozenset()
    pairs: tuple[tuple[int, int], ...] = ()


@dataclass
class CaseResult:
    kind: str
    seed: int
    n: int
    optimum: int | None
    oracle: int | None
    budgets_checked: int
    mismatch: str | None = None
    seconds: float = 0.0


@dataclass
class CorpusSummary:
    results: list[CaseResult] = field(default_factory=list)

    @property
    def mismatches(self) -> list[CaseResult]:
        return [r for r in self.results if r.mismatch]

    def by_kind(self) -> dict[str, dict]:
        out: dict[str, dict] = {}
        for r in self.results:
            row = out.setdefault(r.kind, {"cases": 0, "mismatches": 0, "yes": 0, "seconds": 0.0})
            row["cases"] += 1
            row["mismatches"] += bool(r.mismatch)
            row["yes"] += r.oracle is not None
            row["seconds"] += r.seconds
        return out


# ---------------------------------------------------------------------------
# Case generation


def _base(seed: int, max_n: int, min_n: int = 3, leaf_range=(2, 5)):
    rng = random.Random(seed)
    n = rng.randint(min(min_n, max_n), max_n)
    gi = gen_random_chordal(
        n,
        seed,
        leafage_target=rng.randint(*leaf_range),
        red_blue=True,
        tree_size=rng.randint(2, max(2, 2 * n)),
        max_model=rng.randint(1, 5),
    )
    return rng, gi


def _colouring(rng: random.Random, gi) -> tuple[frozenset[int], frozenset[int]]:
    # A blue with no red neighbour forces NO; keep only a few of those.
    blue = frozenset(v for v in gi.blue if gi.graph.adj[v] & gi.red or rng.random() < 0.05)
    return frozenset(range(gi.graph.n)) - blue, blue


def _independent_terminals(rng: random.Random, g: Graph, count: int) -> frozenset[int]:
    order = list(range(g.n))
    rng.shuffle(order)
    picked: list[int] = []
    for v in order:
        if len(picked) == count:
            break
        if not g.adj[v] & set(picked):
            picked.append(v)
    return frozenset(picked)


def make_case(kind: str, seed: int, max_n: int) -> Case:
    if kind not in KINDS:
        raise ValueError(f"unknown corpus kind {kind!r}")
    if kind == "hfree":
        for attempt in range(1000):
            rng, gi = _base(seed * 1000 + attempt, max_n)
            if find_induced_h_ell(gi.graph, HFREE_ELL) is None:
                red, blue = _colouring(rng, gi)
                return Case(kind, seed, gi.graph, gi.tr, red, blue)
        raise RuntimeError("no H-free instance found")
    leaf_range = (2, 4) if kind == "mc" else (2, 5)
    rng, gi = _base(seed, max_n, leaf_range=leaf_range)
    g = gi.graph
    case = Case(kind, seed, g, gi.tr)
    if kind in ("rbds", "crbds"):
        case.red, case.blue = _colouring(rng, gi)
    elif kind == "steiner":
        case.terminals = frozenset(rng.sample(range(g.n), rng.randint(0, min(g.n, 5))))
    elif kind == "mwc":
        case.terminals = _independent_terminals(rng, g, rng.randint(2, min(g.n, 5)))
    elif kind == "mc":
        case.pairs = random_pairs(rng, g, rng.randint(1, 6))
    return case


# ---------------------------------------------------------------------------
# Solvers, oracles, checks


def _solve(case: Case, k: int | None) -> Solution | None:
    g, tr = case.g, case.tr
    if case.kind == "rbds":
        return solve_rbds(RedBlueInstance(g, case.red, case.blue, k, tr))
    if case.kind == "hfree":
        return solve_rbds_hfree(RedBlueInstance(g, case.red, case.blue, k, tr), HFREE_ELL)
    if case.kind == "ds":
        return solve_ds(g, k, tr)
    if case.kind == "cds":
        return solve_cds(g, k, tr)
    if case.kind == "crbds":
        return solve_connected_rbds(ConnectedRbdsInstance(g, case.red, case.blue, k, tr))
    if case.kind == "steiner":
        return solve_steiner(g, case.terminals, k, tr)
    if case.kind == "mwc":
        return solve_mwc(g, case.terminals, tr, k)
    if case.kind == "mc":
        return solve_multicut_xp(MulticutInstance.make(g, case.pairs, k, tr))
    raise ValueError(case.kind)


def _oracle(case: Case) -> Solution | None:
    g = case.g
    if case.kind in ("rbds", "hfree"):
        return brute_rbds(g, case.red, case.blue)
    if case.kind == "crbds":
        return brute_rbds(g, case.red, case.blue, connected=True)
    if case.kind == "ds":
        return brute_ds(g)
    if case.kind == "cds":
        return brute_cds(g)
    if case.kind == "steiner":
        return brute_steiner(g, case.terminals)
    if case.kind == "mwc":
        return brute_mwc(g, case.terminals)
    if case.kind == "mc":
        return brute_mc(g, case.pairs)
    raise ValueError(case.kind)


def verify_witness(case: Case, vs: frozenset[int]) -> bool:
    g = case.g
    if case.kind in ("rbds", "hfree"):
        return vs <= case.red and is_red_blue_dominating(g, case.red, case.blue, vs)
    if case.kind == "crbds":
        return vs <= case.red and is_red_blue_dominating(g, case.red, case.blue, vs) and (
            not case.blue or g.is_connected_set(vs)
        )
    if case.kind == "ds":
        return is_dominating_set(g, vs)
    if case.kind == "cds":
        return is_connected_dominating_set(g, vs)
    if case.kind == "steiner":
        return is_steiner_vertex_set(g, case.terminals, vs)
    if case.kind == "mwc":
        return not vs & case.terminals and is_multiway_cut(g, case.terminals, vs)
    if case.kind == "mc":
        ends = {v for p in case.pairs for v in p}
        return not vs & ends and is_multicut(g, case.pairs, vs)
    raise ValueError(case.kind)


Solver = Callable[[Case, "int | None"], "Solution | None"]


def run_case(case: Case, solver: Solver | None = None) -> CaseResult:
    solver = solver or _solve
    start = time.perf_counter()
    want = _oracle(case)
    want_size = None if want is None else want.size
    got = solver(case, None)
    got_size = None if got is None else got.size
    result = CaseResult(case.kind, case.seed, case.g.n, got_size, want_size, 0)
    problems = []
    if got_size != want_size:
        problems.append(f"optimum {got_size} != oracle {want_size}")
    if got is not None and not verify_witness(case, got.vertices):
        problems.append("witness fails its check")
    for k in range(case.g.n + 2):
        sol = solver(case, k)
        result.budgets_checked += 1
        expect = want_size is not None and want_size <= k
        if (sol is not None) != expect:
            problems.append(f"budget {k}: got {'YES' if sol is not None else 'NO'}")
        elif sol is not None and (sol.size > k or not verify_witness(case, sol.vertices)):
            problems.append(f"budget {k}: bad witness")
    result.mismatch = "; ".join(problems) or None
    result.seconds = time.perf_counter() - start
    return result


def _job(args: tuple[str, int, int]) -> CaseResult:
    kind, seed, max_n = args
    case = make_case(kind, seed, max_n)
    try:
        return run_case(case)
    except Exception as exc:  # a crash counts as a mismatch, not a harness failure
        return CaseResult(kind, seed, case.g.n, None, None, 0, f"{type(exc).__name__}: {exc}")


def worker_count() -> int:
    raw = os.environ.get("CHORDALKIT_THREADS", "1")
    try:
        wanted = max(1, int(raw))
    except ValueError:
        raise ValueError(f"CHORDALKIT_THREADS must be an integer, got {raw!r}") from None
    return min(wanted, os.cpu_count() or 1)


def run_corpus(
    kinds: list[str],
    seeds: int,
    max_n: int,
    seed_base: int = 0,
    solver: Solver | None = None,
) -> CorpusSummary:
    if not kinds:
        raise ValueError("no corpus kinds given")
    for kind in kinds:
        if kind not in KINDS:
            raise ValueError(f"unknown corpus kind {kind!r}")
    jobs = [(kind, seed_base + s, max_n) for kind in kinds for s in range(seeds)]
    summary = CorpusSummary()
    workers = worker_count()
    if solver is not None:
        for kind, seed, n in jobs:
            summary.results.append(run_case(make_case(kind, seed, n), solver))
    elif workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            summary.results.extend(pool.map(_job, jobs))
    else:
        summary.results.extend(_job(j) for j in jobs)
    return summary
