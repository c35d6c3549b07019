"""Batch runner: operators x replications on one haystack landscape.

Writes ``traces.csv`` (one row per operator, run and logged generation) and
``summary.json`` (per-operator aggregates) into the output directory. Output
bytes depend only on the spec, never on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .core import RandomSource, random_permutation
from .crossover import get_crossover
from .distances import distance_kind
from .ea import EAConfig, HaystackLandscape, RunRecord, run_ea
from .mutation import get_mutation

CSV_HEADER = ("operator", "run_id", "generation", "best_cost", "mean_cost")
BASELINE = "none"


@dataclass
class ExperimentSpec:
    landscape: str
    crossovers: Sequence[str]
    n: int = 100
    pop_size: int = 100
    generations: int = 10_000
    runs: int = 100
    seed: int = 0
    u: dict = field(default_factory=dict)
    mutation: str = "swap"
    out: str | Path | None = None
    workers: int = 1

    def __post_init__(self):
        self.crossovers = list(self.crossovers)
        if not self.crossovers:
            raise ValueError("at least one crossover operator id is required")
        if len(set(self.crossovers)) != len(self.crossovers):
            raise ValueError("duplicate crossover operator ids")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        distance_kind(self.landscape)
        get_mutation(self.mutation)
        for op in self.crossovers:
            get_crossover(op, self.u_for(op))

    def u_for(self, op: str) -> float | None:
        base = op.partition(":")[0]
        return self.u.get(op, self.u.get(base, self.u.get("*")))

    def config(self, op: str, run: int) -> EAConfig:
        return EAConfig(n=self.n, pop_size=self.pop_size, generations=self.generations,
                        crossover=op, mutation=self.mutation, u=self.u_for(op),
                        seed=self.seed ^ run)

    def landscape_for(self, run: int) -> HaystackLandscape:
        # stream 1 keeps the target independent of the EA's own draws
        target = random_permutation(self.n, RandomSource(self.seed ^ run, stream=1))
        return HaystackLandscape(target, self.landscape)


@dataclass
class OperatorSummary:
    operator: str
    runs: int
    mean_final_cost: float
    std_final_cost: float
    checkpoint_mean_best: dict
    beats_baseline: bool | None


@dataclass
class SummaryTable:
    landscape: str
    n: int
    pop_size: int
    generations: int
    runs: int
    seed: int
    operators: list

    def by_operator(self) -> dict:
        return {s.operator: s for s in self.operators}

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"


def _run_one(task: tuple[ExperimentSpec, str, int]) -> tuple[str, int, RunRecord]:
    spec, op, run = task
    return op, run, run_ea(spec.config(op, run), spec.landscape_for(run))


def _mean_std(xs: Sequence[float]) -> tuple[float, float]:
    m = math.fsum(xs) / len(xs)
    if len(xs) < 2:
        return m, 0.0
    return m, math.sqrt(math.fsum((x - m) ** 2 for x in xs) / (len(xs) - 1))


def summarize(spec: ExperimentSpec, records: dict) -> SummaryTable:
    """Aggregate ``{(operator, run): RunRecord}``. ``beats_baseline`` is None
    when the baseline operator ``none`` is not part of the experiment."""
    finals = {op: [records[op, r].final_best for r in range(spec.runs)] for op in spec.crossovers}
    base = _mean_std(finals[BASELINE])[0] if BASELINE in finals else None
    rows = []
    for op in spec.crossovers:
        mean, std = _mean_std(finals[op])
        gens = records[op, 0].generations
        per_gen = {
            str(g): math.fsum(records[op, r].best[k] for r in range(spec.runs)) / spec.runs
            for k, g in enumerate(gens)
        }
        beats = None if base is None or op == BASELINE else mean < base
        rows.append(OperatorSummary(op, spec.runs, mean, std, per_gen, beats))
    return SummaryTable(distance_kind(spec.landscape).value, spec.n, spec.pop_size,
                        spec.generations, spec.runs, spec.seed, rows)


def traces_csv(spec: ExperimentSpec, records: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for op in spec.crossovers:
        for r in range(spec.runs):
            for g, best, mean in records[op, r].rows():
                w.writerow((op, r, g, best, repr(float(mean))))
    return buf.getvalue()


def run_records(spec: ExperimentSpec) -> dict:
    tasks = [(spec, op, r) for op in spec.crossovers for r in range(spec.runs)]
    if spec.workers == 1:
        results = map(_run_one, tasks)
    else:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=1))
    return {(op, r): rec for op, r, rec in results}


def run_experiment(spec: ExperimentSpec) -> SummaryTable:
    """Run every (operator, replication) pair and aggregate.

    Replication r uses a target drawn from ``RandomSource(seed ^ r, stream=1)``
    (shared by all operators) and an EA seeded with ``seed ^ r``.
    """
    out = Path(spec.out) if spec.out is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        if not os.access(out, os.W_OK):
            raise PermissionError(f"output directory {out} is not writable")
    records = run_records(spec)
    table = summarize(spec, records)
    if out is not None:
        (out / "traces.csv").write_text(traces_csv(spec, records), encoding="utf-8")
        (out / "summary.json").write_text(table.to_json(), encoding="utf-8")
    return table


def summary_from_csv(path: str | Path, baseline: str = BASELINE) -> dict:
    """Recompute ``{operator: (mean final best cost, beats_baseline)}`` from
    a traces file alone."""
    finals: dict[str, dict[int, tuple[int, int]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            op, run, gen = row["operator"], int(row["run_id"]), int(row["generation"])
            prev = finals.setdefault(op, {}).get(run)
            if prev is None or gen > prev[0]:
                finals[op][run] = (gen, int(row["best_cost"]))
    means = {op: math.fsum(v[1] for v in runs.values()) / len(runs) for op, runs in finals.items()}
    base = means.get(baseline)
    return {op: (m, None if base is None or op == baseline else m < base) for op, m in means.items()}
