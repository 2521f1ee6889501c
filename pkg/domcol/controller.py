"""
Solver dispatch.

This is the main library entry point: it picks an algorithm for a run
configuration, times it and wraps the answer into a JSON-ready record.
It also drives the oracle cross-checks and the timing grids.
"""

from __future__ import annotations

import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable

from . import clq, cvd, exact, oracle, tc
from .config import Guards, RunConfig
from .const import (
    ALGOS_WITH_WITNESS,
    AUTO_CLQ_MAX_K,
    AUTO_CVD_MAX_K,
    AUTO_TC_MAX_K,
    SCHEMA_VERSION,
    Algo,
    ParamKind,
    Problem,
)
from .errors import UsageError
from .generate import InstanceGenSpec, generate
from .graph import (
    Coloring,
    Graph,
    is_clique_modulator,
    is_cvd_set,
    is_twin_cover,
    validate,
)
from .params import find_param

log = logging.getLogger(__name__)

_PARAM_OF_ALGO = {
    Algo.CLQ: ParamKind.CLIQUE_MODULATOR,
    Algo.TC: ParamKind.TWIN_COVER,
    Algo.CVD: ParamKind.CVD_SET,
}

BENCH_FIELDS = ["kind", "problem", "algo", "n", "k", "ell", "answer", "time_ms"]


@dataclass(frozen=True)
class ResultRecord:
    problem: Problem
    algo: Algo
    n: int
    # size of the parameter set the algorithm ran with
    k: int | None
    ell: int
    answer: bool
    seed: int
    time_ms: float
    witness: Coloring | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "problem": self.problem.value,
            "algo": self.algo.value,
            "n": self.n,
            "k": self.k,
            "ell": self.ell,
            "answer": self.answer,
            "seed": self.seed,
            "time_ms": round(self.time_ms, 3),
        }
        if self.witness is not None:
            out["witness"] = list(self.witness.normalized().assignment)
        return out


def pick_algo(
    g: Graph, problem: Problem, given: frozenset[int] | None = None
) -> tuple[Algo, frozenset[int] | None]:
    """
    Cheapest applicable algorithm and its parameter set: a small clique
    modulator first, then a small twin cover, then (CD only) a small CVD
    set, else the exact solver. A given set is tried before searching.
    """
    if given is not None:
        for algo in applicable_algos(g, given, problem)[1:]:
            log.info(
                "auto: %s with the given set, k=%d", algo.value, len(given)
            )
            return algo, given
    for algo, limit in (
        (Algo.CLQ, AUTO_CLQ_MAX_K),
        (Algo.TC, AUTO_TC_MAX_K),
        (Algo.CVD, AUTO_CVD_MAX_K),
    ):
        if algo is Algo.CVD and problem is Problem.DOMCOL:
            continue
        found = find_param(g, _PARAM_OF_ALGO[algo], limit)
        if found is not None:
            log.info("auto: %s with k=%d", algo.value, found.k)
            return algo, found.set
    log.info("auto: exact, no parameter within thresholds")
    return Algo.EXACT, None


def _param_set(
    g: Graph, algo: Algo, given: frozenset[int] | None
) -> frozenset[int] | None:
    if algo not in _PARAM_OF_ALGO:
        return None
    if given is not None:
        for v in given:
            g.check_vertex(v)
        return given
    found = find_param(g, _PARAM_OF_ALGO[algo])
    assert found is not None  # V itself always qualifies
    return found.set


def _run(
    config: RunConfig, g: Graph, algo: Algo, m: frozenset[int] | None
) -> tuple[bool, Coloring | None]:
    problem, ell, guards = config.problem, config.ell, config.guards
    domcol = problem is Problem.DOMCOL

    if algo is Algo.ORACLE:
        within = oracle.domcol_within if domcol else oracle.cdcol_within
        coloring = within(g, ell, guards)
        return coloring is not None, coloring
    if algo is Algo.EXACT:
        decide = exact.domcol_exact if domcol else exact.cdcol_exact
        return decide(g, ell, config.seed, guards), None
    assert m is not None
    if algo is Algo.CLQ:
        sieve = clq.domcol_clq if domcol else clq.cdcol_clq
        return sieve(g, m, ell, config.seed, config.repeats, guards), None
    if algo is Algo.TC:
        build = tc.domcol_tc_coloring if domcol else tc.cdcol_tc_coloring
        coloring = build(g, m, ell)
        return coloring is not None, coloring
    if algo is Algo.CVD:
        coloring = cvd.cdcol_cvd_coloring(g, m, ell)
        return coloring is not None, coloring
    raise UsageError(f"cannot run algorithm {algo.value}")


def solve(config: RunConfig, g: Graph) -> ResultRecord:
    """
    Decides whether g has a coloring of the configured kind with at most
    config.ell colors.
    Raises UsageError for an invalid configuration or parameter set and
    GuardExceededError for instances above the guards.
    """
    config.validate()
    start = time.perf_counter()

    algo, m = config.algo, config.params
    if algo is Algo.AUTO:
        algo, m = pick_algo(g, config.problem, m)
    m = _param_set(g, algo, m)

    answer, witness = _run(config, g, algo, m)
    elapsed = (time.perf_counter() - start) * 1000

    if witness is not None:
        assert algo in ALGOS_WITH_WITNESS
        assert witness.num_colors <= config.ell
        assert validate(g, witness, config.problem) is not None

    log.debug(
        "%s/%s n=%d ell=%d -> %s in %.1f ms",
        config.problem.value,
        algo.value,
        g.n,
        config.ell,
        answer,
        elapsed,
    )
    return ResultRecord(
        problem=config.problem,
        algo=algo,
        n=g.n,
        k=None if m is None else len(m),
        ell=config.ell,
        answer=answer,
        seed=config.seed,
        time_ms=elapsed,
        witness=witness,
    )


# cross-checks


@dataclass(frozen=True)
class Disagreement:
    trial: int
    problem: Problem
    algo: Algo
    ell: int
    expected: bool
    got: bool
    seed: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "trial": self.trial,
            "problem": self.problem.value,
            "algo": self.algo.value,
            "ell": self.ell,
            "expected": self.expected,
            "got": self.got,
            "seed": self.seed,
        }


@dataclass
class CrosscheckReport:
    trials: int = 0
    checks: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "trials": self.trials,
            "checks": self.checks,
            "disagreements": [d.to_dict() for d in self.disagreements],
        }


def applicable_algos(
    g: Graph, m: frozenset[int], problem: Problem
) -> list[Algo]:
    """Solvers whose structural promise the given set fulfils."""
    algos = [Algo.EXACT]
    if is_clique_modulator(g, m):
        algos.append(Algo.CLQ)
    if is_twin_cover(g, m):
        algos.append(Algo.TC)
    if problem is Problem.CDCOL and is_cvd_set(g, m):
        algos.append(Algo.CVD)
    return algos


def _check_trial(
    spec: InstanceGenSpec, trial: int, guards: Guards
) -> tuple[int, list[Disagreement]]:
    inst = generate(spec, trial)
    g, m = inst.graph, inst.modulator
    checks = 0
    found = []
    for problem in Problem:
        opt = oracle.optimum(g, problem, guards).optimum
        for ell in (opt - 1, opt, opt + 1):
            if ell < 0:
                continue
            for algo in applicable_algos(g, m, problem):
                config = RunConfig(
                    problem, algo, ell, m, seed=spec.seed, guards=guards
                )
                got = solve(config, g).answer
                checks += 1
                if got != (ell >= opt):
                    log.warning(
                        "disagreement: trial %d %s/%s ell=%d opt=%d seed=%d",
                        trial,
                        problem.value,
                        algo.value,
                        ell,
                        opt,
                        spec.seed,
                    )
                    found.append(
                        Disagreement(
                            trial,
                            problem,
                            algo,
                            ell,
                            ell >= opt,
                            got,
                            spec.seed,
                        )
                    )
    return checks, found


def crosscheck(
    spec: InstanceGenSpec,
    trials: int,
    guards: Guards | None = None,
    workers: int = 1,
) -> CrosscheckReport:
    """
    Runs every applicable solver against the oracle at ell = opt - 1,
    opt and opt + 1 on `trials` generated instances.
    """
    guards = guards or Guards()
    report = CrosscheckReport()
    if trials <= 0:
        return report

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(
                    _check_trial,
                    [spec] * trials,
                    range(trials),
                    [guards] * trials,
                )
            )
    else:
        results = [_check_trial(spec, t, guards) for t in range(trials)]

    for checks, found in results:
        report.trials += 1
        report.checks += checks
        report.disagreements.extend(found)
    log.info(
        "crosscheck: %d trials, %d checks, %d disagreements",
        report.trials,
        report.checks,
        len(report.disagreements),
    )
    return report


# timing grids


@dataclass(frozen=True)
class BenchCase:
    gen: InstanceGenSpec
    problem: Problem
    algo: Algo
    ell: int
    trials: int = 1


def bench(
    cases: Iterable[BenchCase], guards: Guards | None = None
) -> list[dict[str, Any]]:
    """One row per case with the mean wall time over its trials."""
    guards = guards or Guards()
    rows = []
    for case in cases:
        total = 0.0
        last: ResultRecord | None = None
        for trial in range(case.trials):
            inst = generate(case.gen, trial)
            m = inst.modulator if case.algo in _PARAM_OF_ALGO else None
            config = RunConfig(
                case.problem,
                case.algo,
                case.ell,
                m,
                seed=case.gen.seed,
                guards=guards,
            )
            last = solve(config, inst.graph)
            total += last.time_ms
        if last is None:
            continue
        rows.append(
            {
                "kind": case.gen.kind.value,
                "problem": case.problem.value,
                "algo": case.algo.value,
                "n": last.n,
                "k": last.k,
                "ell": case.ell,
                "answer": last.answer,
                "time_ms": round(total / case.trials, 3),
            }
        )
        log.info("bench %s", rows[-1])
    return rows


def format_csv(rows: Iterable[dict[str, Any]]) -> str:
    """CSV text with a header row, also for an empty grid."""
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()
