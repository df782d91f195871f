"""Command-line interface.

Exit codes: 0 success, 1 malformed input file, 2 entries do not generate
the matrix, 3 domain/guard violation, 4 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .core import DomainError, matrix_to_csv
from .enumeration import (
    classify_subsets,
    enumerate_min_handicap_sets,
    enumerate_minimal_generator_sets,
    iter_subset_classes,
)
from .errorlab import PerturbationSpec, propagate
from .genset import (
    GeneratorFileError,
    build_graph,
    has_cycle,
    is_tree,
    read_generator_file,
    total_handicap,
    unreached_vertices,
)
from .reconstruct import NotGenerating, PrincipalGenerators, reconstruct

EXIT_OK = 0
EXIT_BAD_FILE = 1
EXIT_NOT_GENERATING = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(text: str, output: str | None, out) -> None:
    if output:
        Path(output).write_text(text)
    else:
        out.write(text)


def cmd_reconstruct(args, out, err) -> int:
    b = read_generator_file(args.input, args.n)
    result = reconstruct(b)
    _emit(matrix_to_csv(result.matrix), args.output, out)
    # keep stdout parseable as CSV when the matrix goes there
    summary_stream = out if args.output else err
    summary_stream.write(result.summary(len(b)) + "\n")
    return EXIT_OK


def check_line(b) -> str:
    g = build_graph(b)
    if is_tree(g):
        return "tree"
    reasons = []
    if has_cycle(g):
        reasons.append("cycle")
    missing = unreached_vertices(g)
    if missing:
        reasons.append("disconnected")
    head = f"not a tree ({', '.join(reasons) or 'too few edges'})"
    if missing:
        return f"{head}; not-generating (unreached: {', '.join(map(str, missing))})"
    return f"{head}; spanning-connected"


def cmd_check(args, out, err) -> int:
    b = read_generator_file(args.input, args.n)
    out.write(check_line(b) + "\n")
    return EXIT_OK


def cmd_handicap(args, out, err) -> int:
    b = read_generator_file(args.input, args.n)
    report = total_handicap(b)
    out.write(f"{'entity':>6}  {'frequency':>9}\n")
    for v, f in report.frequencies.items():
        out.write(f"{v:>6}  {f:>9}\n")
    out.write(f"active: {' '.join(map(str, sorted(report.active)))}\n")
    out.write(f"max frequency: {report.max_frequency}\n")
    out.write(f"h(B) = {report.total}\n")
    return EXIT_OK


def cmd_enumerate(args, out, err) -> int:
    source = enumerate_minimal_generator_sets if args.kind == "trees" else enumerate_min_handicap_sets
    count = 0
    for tree in source(args.n):
        out.write(f"{tree}\n")
        count += 1
    out.write(f"count: {count}\n")
    return EXIT_OK


def cmd_classify(args, out, err) -> int:
    if args.lines:
        for idx, cls in iter_subset_classes(args.n, args.size):
            out.write(f"{' '.join(map(str, idx))} : {cls}\n")
    else:
        out.write(classify_subsets(args.n, args.size).table() + "\n")
    return EXIT_OK


def read_pgs_file(path: str, n: int) -> PrincipalGenerators:
    values = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        for tok in line.split():
            try:
                values.append(float(tok))
            except ValueError:
                raise GeneratorFileError(f"not a number: {tok!r}", lineno) from None
    if len(values) != n - 1:
        raise GeneratorFileError(f"expected {n - 1} principal generators, got {len(values)}")
    try:
        return PrincipalGenerators(tuple(values))
    except DomainError as exc:
        raise GeneratorFileError(str(exc)) from None


def cmd_perturb(args, out, err) -> int:
    if args.n < 2:
        raise DomainError(f"n must be >= 2, got {args.n}")
    spec = PerturbationSpec(args.epsilon, args.mode, args.seed, args.trials)
    pgs = read_pgs_file(args.pgs, args.n) if args.pgs else PrincipalGenerators((1.0,) * (args.n - 1))
    report = propagate(pgs, spec)
    _emit(matrix_to_csv(report.entrywise_max), args.output, out)
    (out if args.output else err).write(report.summary() + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcgen", description="Pairwise-comparison matrix generators toolkit")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("reconstruct", help="rebuild the consistent matrix from generator entries")
    p.add_argument("--input", required=True, help="generator file: lines 'i j value'")
    p.add_argument("--n", type=int, required=True, help="matrix order")
    p.add_argument("--output", help="write the matrix CSV here instead of stdout")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("check", help="classify the generator graph")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("handicap", help="entity frequencies and total handicap")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_handicap)

    p = sub.add_parser("enumerate", help="list minimal generator sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("trees", "paths"), default="trees")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="classify all k-subsets of the upper triangle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--lines", action="store_true", help="one 'positions : class' line per subset")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("perturb", help="error propagation from perturbed principal generators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--mode", choices=("worst", "random"), default="worst")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--pgs", help="file of n-1 principal generators (default: all ones)")
    p.add_argument("--output", help="write the error matrix CSV here instead of stdout")
    p.set_defaults(func=cmd_perturb)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except GeneratorFileError as exc:
        err.write(f"malformed input: {exc}\n")
        return EXIT_BAD_FILE
    except OSError as exc:
        err.write(f"{exc}\n")
        return EXIT_BAD_FILE
    except NotGenerating as exc:
        err.write(f"{exc}\n")
        return EXIT_NOT_GENERATING
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
