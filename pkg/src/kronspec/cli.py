"""Command-line entry points.

Subcommands:

* ``generate``   one connected random graph, written as an edge list
* ``estimate``   estimated and exact product spectra for two edge lists
* ``experiment`` full run grid from a JSON config file
* ``figure``     CSV bundle reproducing one reference figure
* ``theory``     the closed-form/bound verification report
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .estimators import Ordering, OrderingKind, normalized_estimate, sayama_spectrum
from .generators import GeneratorSpec, generate_connected
from .graphs import kronecker_graph, laplacian, normalized_laplacian, read_edge_list, write_edge_list
from .experiments import (
    ExperimentConfig,
    FIGURES,
    reproduce_figure,
    run_experiment,
    theory_suite,
    version_string,
)
from .spectral import sym_eigenvalues


def _cmd_generate(args) -> int:
    spec = GeneratorSpec(
        model=args.model,
        n=args.n,
        target_density=args.density,
        seed=args.seed,
        ws_beta=args.ws_beta,
    )
    g = generate_connected(spec)
    write_edge_list(g, args.output)
    print(f"wrote {args.output}: n={g.n} m={g.edge_count}")
    return 0


def _cmd_estimate(args) -> int:
    g1 = read_edge_list(args.factor1)
    g2 = read_edge_list(args.factor2)
    ordering = Ordering(kind=OrderingKind(args.ordering), randomization_seed=args.seed)
    d1 = np.sort(g1.degrees)
    d2 = np.sort(g2.degrees)
    mu1 = sym_eigenvalues(laplacian(g1))
    mu2 = sym_eigenvalues(laplacian(g2))
    lam1 = sym_eigenvalues(normalized_laplacian(g1))
    lam2 = sym_eigenvalues(normalized_laplacian(g2))
    exact = sym_eigenvalues(laplacian(kronecker_graph(g1, g2)))
    sayama = np.sort(sayama_spectrum(mu1, d1, mu2, d2, ordering).values)
    normalized = np.sort(normalized_estimate(lam1, d1, lam2, d2, ordering).values)

    out = open(args.output, "w") if args.output else sys.stdout
    try:
        out.write(f"# kronspec={version_string()} ordering={ordering.kind.value}\n")
        out.write("rank,exact,estimate_sayama,estimate_normalized\n")
        for k in range(len(exact)):
            out.write(
                f"{k + 1},{float(exact[k])!r},{float(sayama[k])!r},{float(normalized[k])!r}\n"
            )
    finally:
        if args.output:
            out.close()
            print(f"wrote {args.output}: {len(exact)} eigenvalues")
    return 0


def _cmd_experiment(args) -> int:
    with open(args.config) as fh:
        data = json.load(fh)
    config = ExperimentConfig.from_dict(data)
    if args.output_dir:
        config = ExperimentConfig.from_dict({**config.to_dict(), "output_dir": args.output_dir})
    if config.output_dir is None:
        print("error: no output_dir in config and no --output-dir given", file=sys.stderr)
        return 2
    bundle = run_experiment(config)
    print(f"wrote {len(bundle.files)} files to {config.output_dir}")
    return 0


def _cmd_figure(args) -> int:
    manifest = reproduce_figure(
        args.figure_id, args.output_dir, master_seed=args.master_seed, runs_override=args.runs
    )
    print(f"wrote {len(manifest['panels'])} panels to {args.output_dir}")
    return 0


def _cmd_theory(args) -> int:
    report = theory_suite(
        output_dir=args.output_dir,
        seed=args.seed,
        er_draws=args.draws,
        graph_count=args.graphs,
    )
    failed = [
        name
        for name, entry in report.items()
        if isinstance(entry, dict) and not entry.get("pass", True)
    ]
    for name, entry in sorted(report.items()):
        if isinstance(entry, dict) and "pass" in entry:
            print(f"{'PASS' if entry['pass'] else 'FAIL'}  {name}")
    if args.output_dir:
        print(f"report written to {args.output_dir}/theory_report.json")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kronspec",
        description="Estimate Laplacian spectra of Kronecker products of graphs from factor spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit one connected random graph as an edge list")
    p.add_argument("--model", choices=("ER", "WS", "BA", "CYCLE"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ws-beta", type=float, default=0.25)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("estimate", help="estimated and exact product spectra for two edge lists")
    p.add_argument("factor1")
    p.add_argument("factor2")
    p.add_argument("--ordering", default="Correlated", choices=[k.value for k in OrderingKind])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("experiment", help="run a JSON experiment config")
    p.add_argument("config")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("figure", help="reproduce one reference figure as a CSV bundle")
    p.add_argument("figure_id", choices=sorted(FIGURES))
    p.add_argument("--output-dir", "-o", required=True)
    p.add_argument("--master-seed", type=int, default=1729)
    p.add_argument("--runs", type=int, default=None, help="override the per-panel run count")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("theory", help="verify the closed forms and bounds")
    p.add_argument("--output-dir", "-o", default=None)
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--draws", type=int, default=100, help="Monte-Carlo draws for the ER expectation")
    p.add_argument("--graphs", type=int, default=1000, help="graphs in the nonnegativity sweep")
    p.set_defaults(func=_cmd_theory)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
