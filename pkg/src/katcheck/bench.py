"""Randomised benchmarking of the equivalence checker.

Generates seeded random expressions and checks either each expression against
itself (``self`` mode) or disjoint consecutive pairs (``pairs`` mode),
recording the history size of each run (the loop's iteration count), the
number of test occurrences per expression, the equivalence ratio and wall
times.  With a fixed seed the sampled expressions and every non-timing field
are reproducible; timings never enter the machine-readable rows.
"""

from __future__ import annotations

import csv
import random
import time
from dataclasses import dataclass

from .checker import equiv
from .generate import random_kat_expr
from .syntax import SymbolTable, all_atoms, node_count, count_test_leaves


@dataclass(frozen=True)
class BenchConfig:
    k: int
    l: int
    size: int
    samples: int
    seed: int
    mode: str = "self"  # or "pairs"

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise ValueError("k and l must be at least 1")
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.mode not in ("self", "pairs"):
            raise ValueError("mode must be 'self' or 'pairs'")

    def table(self) -> SymbolTable:
        return SymbolTable(
            tuple(f"p{i + 1}" for i in range(self.k)),
            tuple(f"t{i + 1}" for i in range(self.l)),
        )


@dataclass(frozen=True)
class SampleResult:
    index: int
    nodes: float
    tests: float
    h_size: int
    equivalent: bool
    seconds: float


@dataclass(frozen=True)
class BenchReport:
    config: BenchConfig
    results: tuple[SampleResult, ...]

    @property
    def mean_tests(self) -> float:
        return sum(r.tests for r in self.results) / len(self.results)

    @property
    def mean_h(self) -> float:
        return sum(r.h_size for r in self.results) / len(self.results)

    @property
    def equivalence_ratio(self) -> float:
        return sum(r.equivalent for r in self.results) / len(self.results)

    @property
    def mean_seconds(self) -> float:
        return sum(r.seconds for r in self.results) / len(self.results)


def run_bench(config: BenchConfig) -> BenchReport:
    table = config.table()
    all_atoms(table)  # fail fast on capacity
    rng = random.Random(config.seed)
    exprs = [
        random_kat_expr(rng, table, config.size) for _ in range(config.samples)
    ]
    if config.mode == "self":
        checks = [(i, e, e) for i, e in enumerate(exprs)]
    else:
        if len(exprs) < 2:
            raise ValueError("pairs mode needs at least 2 samples")
        checks = [
            (i, exprs[2 * i], exprs[2 * i + 1]) for i in range(len(exprs) // 2)
        ]
    results = []
    for i, e1, e2 in checks:
        t0 = time.perf_counter()
        verdict = equiv(e1, e2, table)
        dt = time.perf_counter() - t0
        results.append(
            SampleResult(
                index=i,
                nodes=(node_count(e1) + node_count(e2)) / 2,
                tests=(count_test_leaves(e1) + count_test_leaves(e2)) / 2,
                h_size=verdict.h_size,
                equivalent=verdict.equivalent,
                seconds=dt,
            )
        )
    return BenchReport(config, tuple(results))


def format_report(report: BenchReport) -> str:
    c = report.config
    header = f"{'k':>3} {'l':>3} {'size':>5} {'tests':>8} {'h':>8} {'equiv':>6} {'time(s)':>8}"
    row = (
        f"{c.k:>3} {c.l:>3} {c.size:>5} {report.mean_tests:>8.2f} "
        f"{report.mean_h:>8.2f} {report.equivalence_ratio:>6.2f} "
        f"{report.mean_seconds:>8.4f}"
    )
    return "\n".join(
        [
            f"mode={c.mode} samples={c.samples} seed={c.seed} "
            f"checks={len(report.results)}",
            header,
            row,
        ]
    )


def write_csv(report: BenchReport, path: str) -> None:
    """Per-check rows; deterministic under a fixed seed (no timing column)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "nodes", "tests", "h_size", "equivalent"])
        for r in report.results:
            writer.writerow(
                [r.index, r.nodes, r.tests, r.h_size, int(r.equivalent)]
            )
