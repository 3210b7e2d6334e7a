"""Command-line interface: ``treedepth {gen,solve,census,expand,separate,experiment,verify}``.

Exit codes: 0 success, 1 invariant violation, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import census as census_mod
from .elimination import format_forest, general_upper_bound, greedy_heuristic
from .expansion import (
    cheeger_exact,
    find_balanced_kpartition,
    lambda2_estimate,
    tw_lower_from_expansion,
    vertex_expansion_exact,
)
from .experiments import ConfigError, ExperimentConfig, records_to_csv, run_experiment
from .graph import GraphError, connected_components, format_edge_list, read_edge_list
from .models import RandomSeed, sample_gnm, sample_gnp, sample_labeled_tree, sample_regular, sparse_p
from .solvers import td_lower_bound_path, treedepth_exact, treewidth_exact
from .verify import verify_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _emit(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _vertex_list(vs) -> str:
    return " ".join(str(v) for v in sorted(vs))


def cmd_gen(args) -> int:
    seed = RandomSeed(args.seed, args.trial)
    if args.model == "gnp":
        if (args.p is None) == (args.c is None):
            raise ConfigError("gnp needs exactly one of -p or -c")
        p = args.p if args.p is not None else sparse_p(args.n, args.c)
        g = sample_gnp(args.n, p, seed)
    elif args.model == "gnm":
        g = sample_gnm(args.n, args.m, seed)
    elif args.model == "regular":
        g = sample_regular(args.n, args.d, seed)
    else:
        g = sample_labeled_tree(args.n, seed)
    _emit(format_edge_list(g), args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = read_edge_list(args.graph)
    witness_path = args.witness
    if args.param == "td":
        if args.mode == "exact":
            res = treedepth_exact(g, limit=args.limit or 20)
            print(f"value={res.value}\nmethod=exact")
            forest = res.witness
        else:
            forest, _ = general_upper_bound(g)
            greedy = greedy_heuristic(g)
            if greedy.height() < forest.height():
                forest = greedy
            print(f"lower={td_lower_bound_path(g)}\nupper={forest.height()}")
            print("method=lower-bound,upper-bound")
        if witness_path:
            _emit(format_forest(forest), witness_path)
            print(f"witness={witness_path}")
    else:
        if args.mode != "exact":
            raise ConfigError("tree-width bounds are not offered; use 'exact'")
        res = treewidth_exact(g, limit=args.limit or 18)
        print(f"value={res.value}\nmethod=exact")
        if witness_path:
            _emit(" ".join(map(str, res.witness)) + "\n", witness_path)
            print(f"witness={witness_path}")
    return EXIT_OK


def cmd_census(args) -> int:
    g = read_edge_list(args.graph)
    cen = census_mod.classify(g)
    rows = census_mod.census_rows(cen, args.seed, g.n, args.c)
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", newline="")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["seed", "n", "c", "k", "ell", "count"])
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_expand(args) -> int:
    g = read_edge_list(args.graph)
    phi = cheeger_exact(g, limit=args.limit)
    alpha = vertex_expansion_exact(g, limit=args.limit)
    print(f"phi={phi.value}\nphi_float={float(phi.value):.10g}")
    print(f"phi_witness={_vertex_list(phi.witness)}")
    print(f"alpha={alpha.value}\nalpha_float={float(alpha.value):.10g}")
    print(f"alpha_witness={_vertex_list(alpha.witness)}")
    print(f"tw_lower={tw_lower_from_expansion(alpha.value, g.n)}")
    if len(set(g.degrees())) == 1:
        spec = lambda2_estimate(g)
        print(f"lambda2={spec.lambda2:.10g}\nspectral_bound={spec.conductance_bound:.10g}")
        if spec.conductance_bound > float(phi.value) + 1e-9:
            print("violation=spectral bound exceeds exact conductance")
            return EXIT_VIOLATION
    return EXIT_OK


def cmd_separate(args) -> int:
    g = read_edge_list(args.graph)
    part = find_balanced_kpartition(g, args.k, limit=args.limit)
    if part is None:
        print(f"k={args.k}\nresult=absent")
        if args.k <= g.n - 4:
            print(f"tw_lower={args.k + 1}")
        return EXIT_OK
    print(f"k={args.k}\nresult=found")
    print(f"A={_vertex_list(part.A)}\nS={_vertex_list(part.S)}\nB={_vertex_list(part.B)}")
    return EXIT_OK


def cmd_experiment(args) -> int:
    with open(args.config) as fh:
        cfg = ExperimentConfig.from_text(fh.read())
    records = run_experiment(cfg)
    _emit(records_to_csv(records, timing=cfg.timing), args.output or cfg.output)
    bad = [r for r in records if not r.bounds_consistent()]
    if bad:
        print(f"{len(bad)} records violate lower <= exact <= upper", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_suite(seed=args.seed, sandwich=args.sandwich, kloks=args.kloks,
                          samples=args.samples)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treedepth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a random graph as an edge list")
    p.add_argument("model", choices=["gnp", "gnm", "regular", "tree"])
    p.add_argument("-n", type=int, required=True, help="number of vertices (tree order for 'tree')")
    p.add_argument("-p", type=float)
    p.add_argument("-c", type=float, help="sparse density, p = c/n")
    p.add_argument("-m", type=int)
    p.add_argument("-d", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="tree-depth or tree-width of a graph file")
    p.add_argument("param", choices=["td", "tw"])
    p.add_argument("mode", choices=["exact", "bounds"])
    p.add_argument("graph")
    p.add_argument("--witness", help="write the forest / ordering here")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("census", help="component census CSV")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-c", type=float, default=0.0, help="density label written to the CSV")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("expand", help="exact Cheeger constant and vertex expansion")
    p.add_argument("graph")
    p.add_argument("--limit", type=int, default=24)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("separate", help="balanced k-partition or certified absence")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    p.add_argument("--limit", type=int, default=15)
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("experiment", help="run a key=value experiment config")
    p.add_argument("config")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify", help="randomised invariant battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sandwich", type=int, default=200)
    p.add_argument("--kloks", type=int, default=20)
    p.add_argument("--samples", type=int, default=60)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
