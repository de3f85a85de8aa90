"""Command-line front end: ``drgalg verify|bm|tmod|scheme <spec>``."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import fields

from .graphs import GraphSpecError
from .linalg import DEFAULT_TOL, ToleranceContext
from .report import (STAGES, RunConfig, default_output, dumps, emit_json, module_table, run,
                     scoreboard_text)
from .terwilliger import DimensionCapError
from .tmodules import DecompositionError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

COMMAND_STAGES = {
    "verify": STAGES,
    "bm": ("bm",),
    "tmod": ("bm", "dual", "talg", "tmod"),
    "scheme": ("scheme",),
}


class UsageError(ValueError):
    pass


def _vertex(text: str):
    if text == "all":
        return "all"
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"vertex must be an index or 'all', got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("vertex index must be nonnegative")
    return v


def _ordering(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"ordering must be comma-separated integers, got {text!r}") from None


def _tolerance(items: list[str]) -> ToleranceContext:
    """``--tol 1e-8`` sets the residual; ``--tol rank_rtol=1e-10`` sets a named field."""
    names = {f.name for f in fields(ToleranceContext)}
    values = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            key, val = "residual", item
        if key not in names:
            raise UsageError(f"unknown tolerance {key!r}; expected one of {sorted(names)}")
        try:
            values[key] = float(val)
        except ValueError:
            raise UsageError(f"tolerance {key} must be a number, got {val!r}") from None
    try:
        return ToleranceContext(**{**DEFAULT_TOL.__dict__, **values})
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drgalg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("verify", "run every stage and print the scoreboard"),
                        ("bm", "Bose-Mesner algebra, Krein parameters and Q-polynomial orderings"),
                        ("tmod", "irreducible T-module decomposition"),
                        ("scheme", "association schemes on subconstituents")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("spec", help="graph spec, e.g. hamming:3,3, johnson:6,3, grassmann:2,4,2, cycle:8")
        p.add_argument("--vertex", type=_vertex, default=0, help="base vertex index or 'all' (default 0)")
        p.add_argument("--seed", type=int, default=0, help="random seed for module decomposition")
        p.add_argument("--domain", choices=("auto", "exact", "float"), default="auto")
        p.add_argument("--tol", action="append", metavar="[NAME=]VALUE",
                       help="tolerance override; bare value sets the residual tolerance")
        p.add_argument("--json", metavar="PATH",
                       help="write the JSON report here ('-' for stdout); default from $DRGALG_OUTPUT_DIR")
        p.add_argument("--ordering", type=_ordering, help="Q-polynomial ordering override, e.g. 0,3,2,1,4")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for vertex sweeps")
        if name == "verify":
            p.add_argument("--checks", default=",".join(STAGES),
                           help=f"comma-separated subset of {','.join(STAGES)}")
        if name == "scheme":
            p.add_argument("--cell", choices=("first", "last", "both"), default="both")
    return parser


def config_from_args(args) -> RunConfig:
    checks = COMMAND_STAGES[args.command]
    if args.command == "verify":
        checks = tuple(s.strip() for s in args.checks.split(",") if s.strip())
    cells = ("first", "last")
    if args.command == "scheme" and args.cell != "both":
        cells = (args.cell,)
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    try:
        return RunConfig(spec=args.spec, vertex=args.vertex, ordering=args.ordering, domain=args.domain,
                         tol=_tolerance(args.tol), seed=args.seed, output=args.json, checks=checks,
                         cells=cells, workers=args.jobs)
    except (GraphSpecError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _bm_summary(report) -> str:
    g = report.graph
    b, c = g["intersection_array"]
    lines = [f"{g['name']}: {g['n']} vertices, diameter {g['diameter']}, domain {g['domain']} ({g['field']})",
             f"intersection array {{{', '.join(map(str, b))}; {', '.join(map(str, c))}}}",
             "eigenvalues " + ", ".join(f"{t} (x{m})" for t, m in zip(g["eigenvalues"], g["multiplicities"])),
             "Q-polynomial orderings " + "; ".join(",".join(map(str, o)) for o in g["q_orderings"])]
    return "\n".join(lines)


def _scheme_summary(report) -> str:
    lines = []
    for vrep in report.vertices:
        for cell, info in vrep["metrics"].get("scheme", {}).items():
            verdict = f"scheme with {info['class_count']} relations, valencies {info['valencies']}" \
                if info["is_scheme"] else f"no scheme ({info['failing']})"
            lines.append(f"vertex {vrep['vertex']}, {cell} subconstituent ({info['size']} points): {verdict}")
            if "named_match" in info:
                m = info["named_match"]
                lines.append(f"  parameters of {m['expected']}: {'match' if m['matched'] else 'no match'}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = config_from_args(args)
        report = run(config)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DimensionCapError, DecompositionError) as exc:
        print(f"internal guard: {exc}", file=sys.stderr)
        return EXIT_GUARD

    target = config.output or default_output(config.spec)
    # with JSON on stdout the human-readable text goes to stderr
    text = sys.stderr if target == "-" else sys.stdout
    if report.graph:
        print(_bm_summary(report), file=text)
    if args.command == "scheme":
        print(_scheme_summary(report), file=text)
    table = module_table(report)
    if table:
        print(table, file=text)
    print(scoreboard_text(report), file=text)

    if target == "-":
        print(dumps(report))
    elif target:
        try:
            path = emit_json(report, target)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(f"report written to {os.fspath(path)}", file=text)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
