"""Command-line interface.

Subcommands: gen, orbits, reduce, rcc, run, bench. Exit codes: 0 on
success, 2 for input/contract errors, 3 for resource-cap errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import automorphism, graph as graphs, rcc
from .errors import ContractError, ResourceError
from .harness import (
    RunConfig,
    bench_suite,
    emit_report,
    run_instance,
)
from .hamiltonian import full_hamiltonian, reduced_hamiltonian
from .optimizer import OptimizerConfig, default_multistart


def _make_graph(kind: str, nodes: int, branching: int, height: int):
    if kind == "binary":
        return graphs.full_rary_tree(2, nodes)
    if kind == "balanced":
        return graphs.balanced_tree(branching, height)
    if kind == "star":
        return graphs.star_graph(nodes)
    if kind == "path":
        return graphs.path_graph(nodes)
    raise ContractError(f"unknown graph kind {kind!r}")


def _load_graph(path: str):
    return graphs.parse_edge_list(Path(path).read_text())


def cmd_gen(args) -> int:
    g = _make_graph(args.kind, args.nodes, args.branching, args.height)
    text = graphs.serialize_edge_list(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_orbits(args) -> int:
    g = _load_graph(args.graph)
    gens = automorphism.find_automorphism_generators(g)
    classes = automorphism.edge_equivalence_classes(g, gens)
    if args.oracle:
        elements = automorphism.brute_force_automorphisms(g)
        oracle = automorphism.edge_classes_from_elements(g, elements)
        if oracle.classes != classes.classes:
            print("oracle mismatch: generator search and brute force disagree",
                  file=sys.stderr)
            return 2
    print(classes.to_json())
    return 0


def cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    gens = automorphism.find_automorphism_generators(g)
    classes = automorphism.edge_equivalence_classes(g, gens)
    h = reduced_hamiltonian(g, classes, args.convention)
    text = h.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if args.full_out:
        Path(args.full_out).write_text(full_hamiltonian(g, args.convention).to_json() + "\n")
    return 0


def cmd_rcc(args) -> int:
    g = _load_graph(args.graph)
    gens = automorphism.find_automorphism_generators(g)
    classes = automorphism.edge_equivalence_classes(g, gens)
    reps = classes.representatives
    if args.minimal:
        depth = rcc.minimal_depth(g, reps)
        print(f"representatives: {len(reps)}")
        print(f"minimal depth with lexicographic representatives: p = {depth}")
        try:
            best_depth, best_reps = rcc.minimal_depth_over_representatives(g, classes)
            print(f"minimal depth over representative choices: p = {best_depth}")
            print(f"  witnessed by: {list(best_reps)}")
        except ResourceError:
            print("minimal depth over representative choices: skipped (too many combinations)")
        return 0
    report = rcc.combined_coverage(g, reps, args.p)
    print(f"p = {report.p}")
    print(f"covered   ({len(report.covered)}): {sorted(report.covered)}")
    print(f"uncovered ({len(report.uncovered)}): {sorted(report.uncovered)}")
    for edge in reps:
        ball = sorted(report.per_edge[edge])
        print(f"  edge {edge}: ball {ball}")
    return 0


def cmd_run(args) -> int:
    g = _load_graph(args.graph)
    opt = OptimizerConfig(
        max_evals=args.max_evals,
        x_tol=1e-4, f_tol=1e-8,
        multistart=default_multistart(args.p),
        seed=args.seed,
    )
    cfg = RunConfig(
        graph=g, label=Path(args.graph).stem, convention=args.convention,
        p=args.p, shots=args.shots, seed=args.seed, mode=args.mode,
        optimizer=opt, output_format=args.format,
    )
    record = run_instance(cfg)
    text = emit_report([record], args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    records = bench_suite(args.suite, seed=args.seed)
    text = emit_report(records, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aaqaoa")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph edge list")
    p_gen.add_argument("--kind", required=True,
                       choices=["binary", "balanced", "star", "path"])
    p_gen.add_argument("--nodes", type=int, default=0)
    p_gen.add_argument("--branching", type=int, default=2)
    p_gen.add_argument("--height", type=int, default=1)
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=cmd_gen)

    p_orb = sub.add_parser("orbits", help="print edge equivalence classes as JSON")
    p_orb.add_argument("--graph", required=True)
    p_orb.add_argument("--oracle", action="store_true",
                       help="cross-check against brute force (n <= 10)")
    p_orb.set_defaults(func=cmd_orbits)

    p_red = sub.add_parser("reduce", help="emit the reduced Ising Hamiltonian")
    p_red.add_argument("--graph", required=True)
    p_red.add_argument("--convention", default="maxcut",
                       choices=["maxcut", "adjacency"])
    p_red.add_argument("--out")
    p_red.add_argument("--full-out", dest="full_out",
                       help="also write the full Hamiltonian")
    p_red.set_defaults(func=cmd_reduce)

    p_rcc = sub.add_parser("rcc", help="reverse causal cone coverage")
    p_rcc.add_argument("--graph", required=True)
    p_rcc.add_argument("--p", type=int, default=1)
    p_rcc.add_argument("--minimal", action="store_true")
    p_rcc.set_defaults(func=cmd_rcc)

    p_run = sub.add_parser("run", help="run the AA-QAOA pipeline on one graph")
    p_run.add_argument("--graph", required=True)
    p_run.add_argument("--mode", default="both",
                       choices=["full", "reduced", "both"])
    p_run.add_argument("--p", type=int, default=1)
    p_run.add_argument("--shots", type=int, default=4096)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--convention", default="maxcut",
                       choices=["maxcut", "adjacency"])
    p_run.add_argument("--max-evals", dest="max_evals", type=int, default=100)
    p_run.add_argument("--out")
    p_run.add_argument("--format", default="csv", choices=["csv", "markdown"])
    p_run.set_defaults(func=cmd_run)

    p_bench = sub.add_parser("bench", help="run a reproduction suite")
    p_bench.add_argument("--suite", required=True,
                         choices=["table1", "table2", "table5", "desk"])
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out")
    p_bench.add_argument("--format", default="csv", choices=["csv", "markdown"])
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as err:
        print(f"resource error: {err}", file=sys.stderr)
        return 3
    except (ContractError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
