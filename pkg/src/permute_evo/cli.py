"""Command line entry point: ``permute-evo {run,cross-demo,mutate-demo,distance}``.

Exit status is 0 on success, 1 for usage errors and 2 for bad data
(malformed permutations, unknown operators, unwritable output).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .core import (PermutationError, RandomSource, ScriptedRandom, UnknownOperatorError,
                   format_permutation, parse_permutation)
from .crossover import get_crossover
from .distances import CLI_NAMES, distance
from .experiment import ExperimentSpec, run_experiment
from .mutation import get_mutation

log = logging.getLogger("permute_evo")

SEED_ENV = "PERMUTE_EVO_SEED"
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _parse_draws(text: str | None) -> list:
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok:
            out.append(float(tok) if any(c in tok for c in ".eE") else int(tok))
    return out


def _rng(args):
    base = RandomSource(args.seed)
    draws = _parse_draws(args.draws)
    return ScriptedRandom(draws, fallback=base) if draws else base


def _parse_u(values: list[str] | None) -> dict:
    out = {}
    for item in values or []:
        name, sep, val = item.rpartition("=")
        out[name if sep else "*"] = float(val)
    return out


def cmd_run(args) -> int:
    spec = ExperimentSpec(
        landscape=args.landscape,
        crossovers=args.crossover or ["none"],
        n=args.n,
        pop_size=args.pop,
        generations=args.generations,
        runs=args.runs,
        seed=args.seed,
        u=_parse_u(args.u),
        mutation=args.mutation,
        out=args.out,
        workers=args.workers,
    )
    log.info("%s: %d operators x %d runs, %d generations, %d workers", spec.landscape,
             len(spec.crossovers), spec.runs, spec.generations, spec.workers)
    table = run_experiment(spec)
    print(f"landscape={table.landscape} n={table.n} pop={table.pop_size} "
          f"generations={table.generations} runs={table.runs} seed={table.seed}")
    print(f"{'operator':<12}{'mean final':>12}{'std':>10}  beats baseline")
    for row in table.operators:
        flag = "-" if row.beats_baseline is None else ("yes" if row.beats_baseline else "no")
        print(f"{row.operator:<12}{row.mean_final_cost:>12.2f}{row.std_final_cost:>10.2f}  {flag}")
    return 0


def cmd_cross_demo(args) -> int:
    op = get_crossover(args.operator, args.u)
    p1, p2 = parse_permutation(args.p1), parse_permutation(args.p2)
    if len(p1) != len(p2):
        raise PermutationError(f"length mismatch: {len(p1)} != {len(p2)}")
    if op is not None:
        op(p1, p2, _rng(args))
    print(f"c1={format_permutation(p1)}")
    print(f"c2={format_permutation(p2)}")
    return 0


def cmd_mutate_demo(args) -> int:
    op = get_mutation(args.operator)
    p = parse_permutation(args.p)
    op(p, _rng(args))
    print(format_permutation(p))
    return 0


def cmd_distance(args) -> int:
    p1, p2 = parse_permutation(args.p1), parse_permutation(args.p2)
    print(distance(p1, p2, args.kind))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="permute-evo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    seed = _default_seed()

    run = sub.add_parser("run", help="run a haystack experiment")
    run.add_argument("--landscape", required=True, choices=sorted(CLI_NAMES))
    run.add_argument("--crossover", action="append",
                     help="crossover id, repeatable; include 'none' for the baseline")
    run.add_argument("--mutation", default="swap")
    run.add_argument("--n", type=int, default=100)
    run.add_argument("--pop", type=int, default=100)
    run.add_argument("--generations", type=int, default=10_000)
    run.add_argument("--runs", type=int, default=100)
    run.add_argument("--seed", type=int, default=seed)
    run.add_argument("--u", action="append", metavar="[OP=]U",
                     help="u for the uniform operators; OP=U targets one operator")
    run.add_argument("--out", help="directory for traces.csv and summary.json")
    run.add_argument("--workers", type=int, default=1)
    run.set_defaults(func=cmd_run)

    cross = sub.add_parser("cross-demo", help="apply one crossover and print the children")
    cross.add_argument("operator")
    cross.add_argument("p1")
    cross.add_argument("p2")
    cross.add_argument("--seed", type=int, default=seed)
    cross.add_argument("--u", type=float)
    cross.add_argument("--draws", help="comma-separated draws replayed before seeded ones")
    cross.set_defaults(func=cmd_cross_demo)

    mut = sub.add_parser("mutate-demo", help="apply one mutation and print the result")
    mut.add_argument("operator")
    mut.add_argument("p")
    mut.add_argument("--seed", type=int, default=seed)
    mut.add_argument("--draws")
    mut.set_defaults(func=cmd_mutate_demo)

    dist = sub.add_parser("distance", help="print the distance between two permutations")
    dist.add_argument("kind", help="feature name (e.g. precedences) or distance kind")
    dist.add_argument("p1")
    dist.add_argument("p2")
    dist.set_defaults(func=cmd_distance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (PermutationError, UnknownOperatorError, PermissionError, IsADirectoryError,
            NotADirectoryError, FileExistsError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownOperatorError) and exc.args else exc
        print(f"permute-evo: error: {msg}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"permute-evo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
