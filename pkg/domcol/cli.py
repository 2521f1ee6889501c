#!/usr/bin/env python

import argparse
import importlib.metadata
import json
import logging
import sys
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.logging import RichHandler
from rich_argparse import RichHelpFormatter

import domcol
from domcol.config import Guards, RunConfig
from domcol.const import Algo, ExitCode, GenKind, ParamKind, Problem
from domcol.controller import BenchCase, bench, crosscheck, format_csv, solve
from domcol.generate import InstanceGenSpec, generate
from domcol.graph import Graph, format_dimacs, parse_dimacs
from domcol.oracle import optimum
from domcol.params import all_params
from domcol.reductions import (
    HittingSetInstance,
    add_universal_vertex,
    hitting_set_to_domcol,
)

version = importlib.metadata.version("domcol")

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def setup_logging(verbosity: int) -> None:
    logging.basicConfig(
        level=LOG_LEVELS[min(verbosity, len(LOG_LEVELS) - 1)],
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
    )


def emit(payload: Any) -> None:
    print(json.dumps(payload, sort_keys=True))


def read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_dimacs(text)


def vertex_list(raw: str | None) -> frozenset[int] | None:
    """Comma separated 1-based vertex ids, as in the graph files."""
    if raw is None:
        return None
    try:
        ids = [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise domcol.UsageError(f"bad vertex list {raw!r}")
    if any(v < 1 for v in ids):
        raise domcol.UsageError("vertex ids start at 1")
    return frozenset(v - 1 for v in ids)


def gen_spec(args: argparse.Namespace) -> InstanceGenSpec:
    return InstanceGenSpec(
        kind=GenKind(args.kind),
        q=args.q,
        min_clique=args.min_clique,
        max_clique=args.max_clique,
        k=args.k,
        n=args.n,
        p=args.p,
        seed=args.seed,
    )


def cmd_solve(args: argparse.Namespace, guards: Guards) -> None:
    g = read_graph(args.graph)
    given = [vertex_list(x) for x in (args.modulator, args.cover, args.cvd)]
    params = next((x for x in given if x is not None), None)
    config = RunConfig(
        problem=Problem(args.problem),
        algo=Algo(args.algo),
        ell=args.ell,
        params=params,
        seed=args.seed,
        repeats=args.repeats,
        guards=guards,
    )
    emit(solve(config, g).to_dict())


def cmd_oracle(args: argparse.Namespace, guards: Guards) -> None:
    g = read_graph(args.graph)
    answer = optimum(g, Problem(args.problem), guards)
    emit(
        {
            "problem": args.problem,
            "n": g.n,
            "optimum": answer.optimum,
            "witness": list(answer.coloring.assignment),
        }
    )


def cmd_params(args: argparse.Namespace, guards: Guards) -> None:
    g = read_graph(args.graph)
    found = all_params(g)
    emit({kind.value: found[kind].to_dict() for kind in ParamKind})


def read_hitting_set(path: str) -> HittingSetInstance:
    """
    JSON object {"family": [[...], ...], "kappa": k, "universe": n} with
    1-based elements; universe defaults to the largest element.
    """
    try:
        raw = json.loads(Path(path).read_text())
        family = [[int(x) - 1 for x in member] for member in raw["family"]]
        kappa = int(raw["kappa"])
        largest = max((x + 1 for member in family for x in member), default=0)
        universe = int(raw.get("universe", largest))
    except (ValueError, KeyError, TypeError, AttributeError) as e:
        raise domcol.UsageError(f"bad hitting set file: {e}")
    return HittingSetInstance.build(universe, family, kappa)


def cmd_gen(args: argparse.Namespace, guards: Guards) -> None:
    sidecar: dict[str, Any] = {}
    if args.from_hitting_set:
        hs = read_hitting_set(args.from_hitting_set)
        guards.check("hitting_set_max_universe", hs.universe, "universe")
        g, ell, cvd_set = hitting_set_to_domcol(hs)
        sidecar = {"ell": ell, "cvd_set": sorted(v + 1 for v in cvd_set)}
    elif args.universal:
        g = add_universal_vertex(read_graph(args.universal))
    else:
        inst = generate(gen_spec(args), args.trial)
        g = inst.graph
        sidecar = {"modulator": sorted(v + 1 for v in inst.modulator)}

    print(format_dimacs(g), end="")
    if args.sidecar and sidecar:
        Path(args.sidecar).write_text(json.dumps(sidecar, sort_keys=True))


def cmd_crosscheck(args: argparse.Namespace, guards: Guards) -> None:
    report = crosscheck(gen_spec(args), args.trials, guards, args.workers)
    emit(report.to_dict())
    if not report.ok:
        sys.exit(ExitCode.DISAGREEMENT.value)


def cmd_bench(args: argparse.Namespace, guards: Guards) -> None:
    spec = gen_spec(args)
    cases = [
        BenchCase(
            spec, Problem(args.problem), Algo(algo), args.ell, args.trials
        )
        for algo in args.algo
    ]
    print(format_csv(bench(cases, guards)), end="")


def add_gen_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--kind",
        choices=[k.value for k in GenKind],
        default=GenKind.TWIN_COVER.value,
        help="instance family",
    )
    p.add_argument("--q", type=int, default=2, help="number of cliques")
    p.add_argument("--min-clique", type=int, default=1, help="smallest clique")
    p.add_argument("--max-clique", type=int, default=3, help="largest clique")
    p.add_argument("-k", type=int, default=2, help="modulator size")
    p.add_argument("-n", type=int, default=6, help="vertices of gnp graphs")
    p.add_argument("-p", type=float, default=0.5, help="edge probability")
    p.add_argument("--seed", type=int, default=0, help="random seed")


def run() -> None:
    parser = argparse.ArgumentParser(
        description=(
            "Dominator and class domination coloring solvers for graphs "
            "with small structural parameters."
        ),
        formatter_class=RichHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=version)
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log to stderr, repeat for debug output",
    )

    subparsers = parser.add_subparsers(
        dest="command", help="Available commands"
    )

    solve_parser = subparsers.add_parser(
        "solve",
        help="Decides whether a graph has a coloring with at most ELL colors",
        formatter_class=parser.formatter_class,
    )
    solve_parser.add_argument("graph", help="DIMACS graph file, - for stdin")
    solve_parser.add_argument(
        "--problem",
        choices=[p.value for p in Problem],
        default=Problem.DOMCOL.value,
    )
    solve_parser.add_argument(
        "--algo", choices=[a.value for a in Algo], default=Algo.AUTO.value
    )
    solve_parser.add_argument("--ell", type=int, required=True)
    solve_parser.add_argument(
        "--modulator", help="clique modulator, e.g. 1,4,5"
    )
    solve_parser.add_argument("--cover", help="twin cover, e.g. 1,4,5")
    solve_parser.add_argument("--cvd", help="cluster vertex deletion set")
    solve_parser.add_argument("--seed", type=int, default=0)
    solve_parser.add_argument(
        "--repeats",
        type=int,
        default=3,
        help="independent evaluations of the randomized solvers",
    )

    oracle_parser = subparsers.add_parser(
        "oracle",
        help="Computes the optimum by exhaustive search",
        formatter_class=parser.formatter_class,
    )
    oracle_parser.add_argument("graph", help="DIMACS graph file, - for stdin")
    oracle_parser.add_argument(
        "--problem",
        choices=[p.value for p in Problem],
        default=Problem.DOMCOL.value,
    )

    params_parser = subparsers.add_parser(
        "params",
        help="Finds minimum clique modulator, twin cover and CVD set",
        formatter_class=parser.formatter_class,
    )
    params_parser.add_argument("graph", help="DIMACS graph file, - for stdin")

    gen_parser = subparsers.add_parser(
        "gen",
        help="Writes a generated or reduced instance in DIMACS format",
        formatter_class=parser.formatter_class,
    )
    add_gen_arguments(gen_parser)
    gen_parser.add_argument("--trial", type=int, default=0)
    source = gen_parser.add_mutually_exclusive_group()
    source.add_argument(
        "--from-hitting-set",
        metavar="FILE",
        help="reduce a hitting set instance given as JSON",
    )
    source.add_argument(
        "--universal",
        metavar="GRAPH",
        help="add a universal vertex to a DIMACS graph",
    )
    gen_parser.add_argument(
        "--sidecar", metavar="FILE", help="write ell and vertex sets as JSON"
    )

    cross_parser = subparsers.add_parser(
        "crosscheck",
        help="Compares every applicable solver with the oracle",
        formatter_class=parser.formatter_class,
    )
    add_gen_arguments(cross_parser)
    cross_parser.add_argument("--trials", type=int, default=10)
    cross_parser.add_argument("--workers", type=int, default=1)

    bench_parser = subparsers.add_parser(
        "bench",
        help="Times solvers on generated instances, CSV output",
        formatter_class=parser.formatter_class,
    )
    add_gen_arguments(bench_parser)
    bench_parser.add_argument(
        "--problem",
        choices=[p.value for p in Problem],
        default=Problem.DOMCOL.value,
    )
    bench_parser.add_argument(
        "--algo",
        choices=[a.value for a in Algo],
        action="append",
        default=[],
    )
    bench_parser.add_argument("--ell", type=int, required=True)
    bench_parser.add_argument("--trials", type=int, default=1)

    args = parser.parse_args()

    if args.command is None:
        parser.print_help()
        sys.exit(ExitCode.USAGE.value)

    setup_logging(args.verbose)

    commands = {
        "solve": cmd_solve,
        "oracle": cmd_oracle,
        "params": cmd_params,
        "gen": cmd_gen,
        "crosscheck": cmd_crosscheck,
        "bench": cmd_bench,
    }

    try:
        guards = Guards.from_env()
        commands[args.command](args, guards)

    except domcol.GuardExceededError as e:
        print("domcol error:", str(e), file=sys.stderr)
        sys.exit(ExitCode.GUARD.value)

    except domcol.DomColError as e:
        print("domcol error:", str(e), file=sys.stderr)
        sys.exit(ExitCode.USAGE.value)

    except KeyboardInterrupt:
        print("\rInterrupted...", file=sys.stderr)
        sys.exit(ExitCode.INTERRUPTED.value)


if __name__ == "__main__":
    run()
