"""Command line interface: ``solve``, ``oracle``, ``corpus`` and ``gen``.

Exit codes: 0 for YES (or a clean corpus run), 1 for NO (or a corpus
mismatch), 2 for malformed input, usage errors and solver failures.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .certify import CertificationError, Solution
from .corpus import KINDS, Case, make_case, run_corpus, verify_witness
from .domset_fpt import RedBlueInstance, solve_rbds
from .domset_hfree import DEFAULT_PARTITION_CAP, PartitionCapError, solve_rbds_hfree
from .generators import (
    GeneratedInstance,
    gen_domset_from_mis,
    gen_multicut_from_mcc,
    gen_multicut_from_vc,
    gen_mwc_from_bipartite_vc,
    has_multicolored_clique,
    has_multicolored_independent_set,
    mcc_solution_to_multicut,
    random_bipartite,
    random_mcc,
    smallest_scale,
)
from .graph import (
    Graph,
    TreeRepresentation,
    build_tree_representation,
    find_induced_h_ell,
    is_chordal,
    validate_tree_representation,
)
from .io import (
    FormatError,
    format_colors,
    format_graph,
    format_pairs,
    format_terminals,
    format_tree_rep,
    parse_colors,
    parse_graph,
    parse_pairs,
    parse_terminals,
    parse_tree_rep,
    read,
)
from .multicut import MulticutInstance, solve_multicut_xp
from .multiway_cut import solve_mwc
from .oracles import (
    OracleBudget,
    OracleLimitError,
    brute_cds,
    brute_ds,
    brute_mc,
    brute_mwc,
    brute_rbds,
    brute_steiner,
    brute_vertex_cover,
)
from .variants import ConnectedRbdsInstance, solve_cds, solve_connected_rbds, solve_ds, solve_steiner

SCHEMA = "chordalkit.result/1"
PROBLEMS = ("ds", "rbds", "cds", "crbds", "steiner", "mwc", "mc")
HFREE_PROBLEMS = ("ds", "rbds", "cds", "crbds", "steiner")
EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    """Bad input that should end the command with exit code 2."""


@dataclass
class Loaded:
    g: Graph
    tr: TreeRepresentation
    case: Case
    checks: dict


def _read(path: str) -> str:
    try:
        return read(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(args, problem: str, need_tree: bool = True) -> Loaded:
    g = parse_graph(_read(args.graph), args.graph)
    checks: dict = {}
    if need_tree:
        if is_chordal(g) is None:
            raise InputError("graph is not chordal")
        checks["chordal"] = True
    if args.tree_rep:
        tr = parse_tree_rep(_read(args.tree_rep), g.n, args.tree_rep)
        report = validate_tree_representation(g, tr)
        if not report.ok:
            first = report.violations[0]
            raise InputError(f"tree representation does not match the graph: {first.kind} {first.witness}")
        checks["representation"] = "validated"
    elif need_tree:
        tr = build_tree_representation(g)
        checks["representation"] = "built"
    else:
        tr = None
    case = Case(problem, 0, g, tr)
    if problem in ("rbds", "crbds"):
        if not args.colors:
            raise InputError(f"{problem} needs --colors")
        case.red, case.blue = parse_colors(_read(args.colors), g.n, args.colors)
    if problem in ("steiner", "mwc"):
        if not args.terminals:
            raise InputError(f"{problem} needs --terminals")
        case.terminals = parse_terminals(_read(args.terminals), g.n, args.terminals)
    if problem == "mc":
        if not args.pairs:
            raise InputError("mc needs --pairs")
        case.pairs = parse_pairs(_read(args.pairs), g.n, args.pairs)
    return Loaded(g, tr, case, checks)


def _solver(problem: str, method: str, ell: int | None, cap: int) -> Callable[[Case], Solution | None]:
    def run(case: Case) -> Solution | None:
        g, tr = case.g, case.tr
        if problem == "rbds":
            inst = RedBlueInstance(g, case.red, case.blue, None, tr)
            return solve_rbds(inst) if method == "fpt" else solve_rbds_hfree(inst, ell, cap)
        if problem == "crbds":
            return solve_connected_rbds(ConnectedRbdsInstance(g, case.red, case.blue, None, tr), method, ell, cap)
        if problem == "ds":
            return solve_ds(g, None, tr, method, ell, cap)
        if problem == "cds":
            return solve_cds(g, None, tr, method, ell, cap)
        if problem == "steiner":
            return solve_steiner(g, case.terminals, None, tr, method, ell, cap)
        if problem == "mwc":
            return solve_mwc(g, case.terminals, tr)
        if problem == "mc":
            return solve_multicut_xp(MulticutInstance.make(g, case.pairs, None, tr))
        raise InputError(f"unknown problem {problem!r}")

    return run


def _oracle(problem: str, budget: OracleBudget) -> Callable[[Case], Solution | None]:
    def run(case: Case) -> Solution | None:
        g = case.g
        if problem == "rbds":
            return brute_rbds(g, case.red, case.blue, budget)
        if problem == "crbds":
            return brute_rbds(g, case.red, case.blue, budget, connected=True)
        if problem == "ds":
            return brute_ds(g, budget)
        if problem == "cds":
            return brute_cds(g, budget)
        if problem == "steiner":
            return brute_steiner(g, case.terminals, budget)
        if problem == "mwc":
            return brute_mwc(g, case.terminals, budget)
        if problem == "mc":
            return brute_mc(g, case.pairs, budget)
        if problem == "vc":
            return brute_vertex_cover(g, budget)
        raise InputError(f"unknown problem {problem!r}")

    return run


def _report(args, problem: str, method: str, loaded: Loaded, sol: Solution | None, seconds: float) -> int:
    budget = args.budget
    optimum = None if sol is None else sol.size
    yes = sol is not None and (budget is None or sol.size <= budget)
    if sol is not None:
        if problem == "vc":
            ok = all(u in sol.vertices or v in sol.vertices for u, v in loaded.g.edges())
        else:
            ok = verify_witness(loaded.case, sol.vertices)
        if not ok:
            raise CertificationError("witness failed re-verification")
        loaded.checks["witness_verified"] = True
    if args.json:
        out = {
            "schema": SCHEMA,
            "version": __version__,
            "problem": problem,
            "method": method,
            "n": loaded.g.n,
            "m": loaded.g.m,
            "budget": budget,
            "verdict": "YES" if yes else "NO",
            "optimum": optimum,
            "witness": sorted(v + 1 for v in sol.vertices) if yes else None,
            "timing": {"seconds": round(seconds, 6)},
            "checks": loaded.checks,
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    elif yes:
        print(f"YES {sol.size}")
        print(" ".join(str(v + 1) for v in sorted(sol.vertices)))
    else:
        print("NO" if optimum is None else f"NO (optimum {optimum})")
    return EXIT_YES if yes else EXIT_NO


def cmd_solve(args) -> int:
    problem = args.problem
    method = "fpt" if args.ell is None else "hfree"
    if method == "hfree" and problem not in HFREE_PROBLEMS:
        raise InputError(f"--ell does not apply to {problem}")
    if args.ell is not None and args.ell < 1:
        raise InputError("--ell must be positive")
    if args.partition_cap < 1:
        raise InputError("--partition-cap must be positive")
    loaded = _load(args, problem)
    if method == "hfree":
        if find_induced_h_ell(loaded.g, args.ell) is not None:
            raise InputError(f"graph contains an induced H_{args.ell}")
        loaded.checks["h_free"] = args.ell
    start = time.perf_counter()
    sol = _solver(problem, method, args.ell, args.partition_cap)(loaded.case)
    return _report(args, problem, method, loaded, sol, time.perf_counter() - start)


def cmd_oracle(args) -> int:
    loaded = _load(args, args.problem, need_tree=False)
    start = time.perf_counter()
    sol = _oracle(args.problem, OracleBudget(max_n=args.max_n))(loaded.case)
    return _report(args, args.problem, "brute-force", loaded, sol, time.perf_counter() - start)


def cmd_corpus(args) -> int:
    kinds = [k for chunk in args.kinds for k in chunk.split(",") if k]
    if not kinds:
        raise InputError("no corpus kinds given")
    unknown = [k for k in kinds if k not in KINDS]
    if unknown:
        raise InputError(f"unknown corpus kind {unknown[0]!r}; choose from {', '.join(KINDS)}")
    if args.seeds < 1 or args.max_n < 1:
        raise InputError("--seeds and --max-n must be positive")
    start = time.perf_counter()
    summary = run_corpus(kinds, args.seeds, args.max_n, args.seed_base)
    seconds = time.perf_counter() - start
    rows = summary.by_kind()
    bad = summary.mismatches
    if args.json:
        out = {
            "schema": "chordalkit.corpus/1",
            "version": __version__,
            "seeds": args.seeds,
            "max_n": args.max_n,
            "seed_base": args.seed_base,
            "kinds": rows,
            "mismatches": [
                {"kind": r.kind, "seed": r.seed, "n": r.n, "detail": r.mismatch} for r in bad
            ],
            "timing": {"seconds": round(seconds, 6)},
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for kind in kinds:
            row = rows[kind]
            print(f"{kind:8s} cases={row['cases']} yes={row['yes']} mismatches={row['mismatches']} seconds={row['seconds']:.2f}")
        for r in bad:
            print(f"MISMATCH {r.kind} seed={r.seed} n={r.n}: {r.mismatch}")
    return EXIT_NO if bad else EXIT_YES


# ---------------------------------------------------------------------------
# Generators


def _random_part_graph(rng: random.Random, q: int, size: int, density: float) -> tuple[Graph, list[list[int]]]:
    parts = [list(range(i * size, (i + 1) * size)) for i in range(q)]
    edges = [
        (u, v)
        for i, j in combinations(range(q), 2)
        for u in parts[i]
        for v in parts[j]
        if rng.random() < density
    ]
    return Graph.from_edges(q * size, edges), parts


def _write_instance(prefix: str, inst: GeneratedInstance, manifest: dict) -> dict:
    base = Path(prefix)
    base.parent.mkdir(parents=True, exist_ok=True)
    files = {"graph": f"{base}.graph", "tree_rep": f"{base}.tree"}
    Path(files["graph"]).write_text(format_graph(inst.graph))
    Path(files["tree_rep"]).write_text(format_tree_rep(inst.tr))
    if inst.red or inst.blue:
        files["colors"] = f"{base}.colors"
        Path(files["colors"]).write_text(format_colors(inst.red, inst.blue))
    if inst.terminals:
        files["terminals"] = f"{base}.terminals"
        Path(files["terminals"]).write_text(format_terminals(inst.terminals))
    if inst.pairs:
        files["pairs"] = f"{base}.pairs"
        Path(files["pairs"]).write_text(format_pairs(inst.pairs))
    claims = {k: v for k, v in inst.claims.items() if isinstance(v, (bool, int, str))}
    manifest = {
        "schema": "chordalkit.instance/1",
        "version": __version__,
        "generator": inst.kind,
        "n": inst.graph.n,
        "m": inst.graph.m,
        "budget": inst.k,
        "claims": claims,
        "files": files,
        **manifest,
    }
    if inst.witness is not None:
        manifest["witness"] = sorted(v + 1 for v in inst.witness)
    Path(f"{base}.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    extra: dict = {"seed": args.seed}
    if args.kind == "mcc":
        mcc = random_mcc(args.q, args.n, args.seed, args.density)
        scale = None
        if args.scaled == "auto":
            scale = smallest_scale(mcc.n, mcc.q, mcc.g.m)
        elif args.scaled is not None:
            try:
                scale = int(args.scaled)
            except ValueError:
                raise InputError(f"--scaled takes an integer, got {args.scaled!r}") from None
        try:
            inst = gen_multicut_from_mcc(mcc, scale)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        clique = has_multicolored_clique(mcc)
        if clique is not None:
            inst.witness = mcc_solution_to_multicut(inst, clique)
        extra.update(q=args.q, parts=args.n, scale=inst.meta["m"], central=inst.meta["central"],
                     source_edges=mcc.g.m, expected="YES" if clique else "NO", problem="mc")
    elif args.kind == "mis":
        g, parts = _random_part_graph(rng, args.q, args.n, args.density)
        inst = gen_domset_from_mis(g, args.q, parts, steiner=args.steiner)
        found = has_multicolored_independent_set(g, parts)
        extra.update(q=args.q, parts=args.n, expected="YES" if found else "NO",
                     problem="steiner" if args.steiner else "ds")
    elif args.kind == "vc":
        edges = [(u, v) for u, v in combinations(range(args.n), 2) if rng.random() < args.density]
        g = Graph.from_edges(args.n, edges)
        cover = brute_vertex_cover(g)
        inst = gen_multicut_from_vc(g, cover.size)
        extra.update(vertex_cover=cover.size, expected_optimum=cover.size + 1, problem="mc")
    elif args.kind == "bvc":
        g, side_a = random_bipartite(rng, args.n, args.nb or args.n, args.density)
        inst = gen_mwc_from_bipartite_vc(g, side_a)
        cover = brute_vertex_cover(g)
        inst.k = cover.size
        extra.update(vertex_cover=cover.size, expected_optimum=cover.size, problem="mwc")
    else:
        case = make_case(args.problem, args.seed, args.n)
        inst = GeneratedInstance(f"random-{args.problem}", case.g, case.tr, case.red, case.blue,
                                 case.terminals, case.pairs)
        extra.update(problem="rbds" if args.problem == "hfree" else args.problem)
    manifest = _write_instance(args.out, inst, extra)
    print(json.dumps(manifest, indent=2, sort_keys=True) if args.json else manifest["files"]["graph"])
    return EXIT_YES


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chordalkit", description="Exact solvers for domination and cut problems on chordal graphs.")
    parser.add_argument("--version", action="version", version=f"chordalkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("--graph", required=True, help="graph file ('p n m' / 'e u v')")
        p.add_argument("--tree-rep", help="tree representation file; built from the graph when omitted")
        p.add_argument("--colors", help="colour file ('r v' / 'b v')")
        p.add_argument("--terminals", help="terminal file ('t v')")
        p.add_argument("--pairs", help="terminal pair file ('tp u v')")
        p.add_argument("--budget", type=int, help="decide whether a solution of at most this size exists")
        p.add_argument("--json", action="store_true", help="print a versioned JSON record")

    solve = sub.add_parser("solve", help="solve an instance exactly")
    solve.add_argument("problem", choices=PROBLEMS)
    inputs(solve)
    solve.add_argument("--ell", type=int, help="use the H_ell-free dynamic program")
    solve.add_argument("--partition-cap", type=int, default=DEFAULT_PARTITION_CAP,
                       help="largest demanded blue set enumerated by the H_ell-free program")
    solve.set_defaults(func=cmd_solve)

    oracle = sub.add_parser("oracle", help="solve a small instance by exhaustive search")
    oracle.add_argument("problem", choices=PROBLEMS + ("vc",))
    inputs(oracle)
    oracle.add_argument("--max-n", type=int, default=20, help="refuse larger graphs")
    oracle.set_defaults(func=cmd_oracle)

    corpus = sub.add_parser("corpus", help="compare solvers with the oracles on seeded random instances")
    corpus.add_argument("--seeds", type=int, required=True)
    corpus.add_argument("--max-n", type=int, required=True)
    corpus.add_argument("--kinds", nargs="+", required=True, help=f"comma or space separated, from {','.join(KINDS)}")
    corpus.add_argument("--seed-base", type=int, default=0)
    corpus.add_argument("--json", action="store_true")
    corpus.set_defaults(func=cmd_corpus)

    gen = sub.add_parser("gen", help="write a generated instance and its JSON manifest")
    gen.add_argument("kind", choices=("mcc", "mis", "vc", "bvc", "random"))
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output path prefix")
    gen.add_argument("--q", type=int, default=2, help="number of colour classes (mcc, mis)")
    gen.add_argument("--n", type=int, default=2, help="class size (mcc, mis), vertex count (vc, random), side A size (bvc)")
    gen.add_argument("--nb", type=int, help="side B size (bvc)")
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--scaled", nargs="?", const="auto", help="shrink the mcc gadget scale; no value picks the smallest valid one")
    gen.add_argument("--steiner", action="store_true", help="mis: emit the Steiner variant")
    gen.add_argument("--problem", choices=KINDS, default="rbds", help="random: instance kind")
    gen.add_argument("--json", action="store_true")
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, PartitionCapError, OracleLimitError) as exc:
        print(f"chordalkit: error: {exc}", file=sys.stderr)
    except CertificationError as exc:
        print(f"chordalkit: internal check failed: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"chordalkit: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
