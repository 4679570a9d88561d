"""Command line front end.

Subcommands:

* ``equiv <file>`` decides equivalence of the lhs/rhs of a problem file.
  When the file carries ``assume:`` lines the hypotheses are discharged via
  the uru reduction by default, or via filtered derivatives with ``--gamma``.
* ``hoare <file> --method {gamma,uru}`` checks the partial correctness
  assertion of an annotated program file and prints the generated hypotheses.
* ``bench --k --l --size --samples --seed --mode {self,pairs}`` times the
  checker on random expressions and prints a summary row; ``--out`` writes
  per-check rows as CSV.

Exit codes: 0 equivalent/valid, 1 inequivalent/invalid, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
import time

from .assumptions import check_implication
from .bench import BenchConfig, format_report, run_bench, write_csv
from .checker import Verdict
from .hoare import check_pca, parse_program_file, pca_assumptions
from .parser import ParseError, parse_expr_file
from .semantics import format_guarded_string
from .syntax import CapacityError, SymbolTable, format_bool


def _print_verdict(
    verdict: Verdict,
    table: SymbolTable,
    seconds: float,
    show_h: bool,
    show_witness: bool,
    yes: str,
    no: str,
) -> int:
    print(yes if verdict.equivalent else no)
    if show_h:
        print(f"h: {verdict.h_size}")
    if show_witness and verdict.counterexample is not None:
        print(f"witness: {format_guarded_string(verdict.counterexample, table)}")
    print(f"time: {seconds:.4f} s")
    return 0 if verdict.equivalent else 1


def cmd_equiv(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        problem = parse_expr_file(fh.read())
    method = "gamma" if args.gamma else "uru"
    if problem.assumptions:
        print(f"method: {method}")
    t0 = time.perf_counter()
    verdict = check_implication(
        problem.assumptions, problem.lhs, problem.rhs, problem.table, method
    )
    dt = time.perf_counter() - t0
    return _print_verdict(
        verdict,
        problem.table,
        dt,
        args.show_h,
        args.witness,
        "equivalent",
        "not equivalent",
    )


def _format_hyp(hyp, table) -> str:
    if len(hyp) == 3:
        b, p, b_post = hyp
        return (
            f"{format_bool(b, table)} -> [{table.actions[p]}] "
            f"{format_bool(b_post, table)}"
        )
    c, c_post = hyp
    return f"{format_bool(c, table)} -> {format_bool(c_post, table)}"


def cmd_hoare(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        parsed = parse_program_file(fh.read())
    assumptions = pca_assumptions(parsed.pca)
    print("assumptions:")
    for hyp in assumptions.action_hyps:
        print(f"  assume: {_format_hyp(hyp, parsed.table)}")
    for hyp in assumptions.bool_hyps:
        print(f"  assume: {_format_hyp(hyp, parsed.table)}")
    for name, n in parsed.reused_tests().items():
        print(f"note: test '{name}' annotates {n} program points")
    t0 = time.perf_counter()
    verdict = check_pca(parsed.pca, parsed.table, args.method)
    dt = time.perf_counter() - t0
    return _print_verdict(
        verdict, parsed.table, dt, True, args.witness, "valid", "not valid"
    )


def cmd_bench(args) -> int:
    config = BenchConfig(
        k=args.k,
        l=args.l,
        size=args.size,
        samples=args.samples,
        seed=args.seed,
        mode=args.mode,
    )
    report = run_bench(config)
    print(format_report(report))
    if args.out:
        write_csv(report, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="katcheck",
        description="Equivalence checking for Kleene algebra with tests",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_equiv = sub.add_parser("equiv", help="decide equivalence of lhs and rhs")
    p_equiv.add_argument("file", help="problem file")
    p_equiv.add_argument(
        "--gamma",
        action="store_true",
        help="discharge assume: lines by filtered derivatives instead of the uru reduction",
    )
    p_equiv.add_argument("--show-h", action="store_true", help="print the history size")
    p_equiv.add_argument(
        "--witness", action="store_true", help="print a distinguishing guarded string"
    )
    p_equiv.set_defaults(func=cmd_equiv)

    p_hoare = sub.add_parser("hoare", help="check a partial correctness assertion")
    p_hoare.add_argument("file", help="annotated program file")
    p_hoare.add_argument(
        "--method", choices=("gamma", "uru"), default="gamma", help="checking method"
    )
    p_hoare.add_argument(
        "--witness", action="store_true", help="print a distinguishing guarded string"
    )
    p_hoare.set_defaults(func=cmd_hoare)

    p_bench = sub.add_parser("bench", help="benchmark on random expressions")
    p_bench.add_argument("--k", type=int, required=True, help="number of actions")
    p_bench.add_argument("--l", type=int, required=True, help="number of tests")
    p_bench.add_argument("--size", type=int, required=True, help="node budget per expression")
    p_bench.add_argument("--samples", type=int, required=True, help="expressions to generate")
    p_bench.add_argument("--seed", type=int, default=0, help="random seed")
    p_bench.add_argument("--mode", choices=("self", "pairs"), default="self")
    p_bench.add_argument("--out", help="write per-check CSV rows here")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CapacityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
