"""``randic`` command-line front end.

Exit status: 0 when nothing was refuted, 2 when some check failed under its
hypothesis (a refutation certificate), 1 for usage or input errors.  A
refutation takes precedence over bad input lines.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections.abc import Iterator
from typing import Any, NoReturn, TextIO

from . import graph6
from .bounds import BOUND_IDS, SUBCUBIC_CONSTANT, reports_to_csv, reports_to_json, run_check
from .constructions import SpecError, build, closed_form, parse_spec
from .graph import Graph, GraphError
from .invariants import EPS, excess, general_randic_index, max_degree, min_degree, randic_index
from .matching import matching_number
from .reduction import run_reduction
from .search import (
    FULL_SCAN_MAX_N,
    certify_all_bounds,
    min_randic_by_matching,
    parse_scope,
    records_to_csv,
)

EXIT_OK, EXIT_USAGE, EXIT_REFUTED = 0, 1, 2
TOL_RANGE = (1e-12, 1e-6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tolerance(text: str) -> float:
    try:
        tol = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise argparse.ArgumentTypeError(f"tolerance must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
    return tol


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


class _Run:
    """Per-invocation state: output stream and accumulated exit status."""

    def __init__(self, out: TextIO, err: TextIO):
        self.out = out
        self.err = err
        self.bad_input = False
        self.refuted = False

    def warn(self, msg: str) -> None:
        print(f"randic: {msg}", file=self.err)

    def graphs(self, paths: list[str], stdin: TextIO) -> Iterator[Graph]:
        for path in paths or ["-"]:
            if path == "-":
                yield from self._decode(stdin, "<stdin>")
                continue
            try:
                fh = open(path, encoding="ascii", errors="replace")
            except OSError as exc:
                self.warn(f"{path}: {exc.strerror}")
                self.bad_input = True
                continue
            with fh:
                yield from self._decode(fh, path)

    def _decode(self, fh: TextIO, name: str) -> Iterator[Graph]:
        for lineno, item in graph6.read_lines(fh):
            if isinstance(item, Graph):
                yield item
            else:
                self.warn(f"{name}:{lineno}: bad graph6 line: {item}")
                self.bad_input = True

    @property
    def status(self) -> int:
        if self.refuted:
            return EXIT_REFUTED
        return EXIT_USAGE if self.bad_input else EXIT_OK


def _emit_table(run: _Run, rows: list[dict[str, Any]], columns: list[str], fmt: str) -> None:
    if fmt == "json":
        run.out.write(json.dumps(rows, indent=1) + "\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r[c]) for c in columns])
        run.out.write(buf.getvalue())
        return
    for r in rows:
        run.out.write(" ".join(f"{c}={_cell(r[c])}" for c in columns) + "\n")


def _cell(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.12f}"
    return "" if x is None else str(x)


def cmd_compute(args: argparse.Namespace, run: _Run, stdin: TextIO) -> None:
    columns = ["graph6", "n", "m", "R"]
    if args.exponent is not None:
        columns.append("R_a")
    columns += ["alpha", "excess", "min_degree", "max_degree"]
    rows = []
    for g in run.graphs(args.inputs, stdin):
        row: dict[str, Any] = {"graph6": graph6.encode(g), "n": g.n, "m": g.m, "R": randic_index(g)}
        if args.exponent is not None:
            row["R_a"] = general_randic_index(g, args.exponent)
        row.update(
            alpha=matching_number(g), excess=excess(g),
            min_degree=min_degree(g), max_degree=max_degree(g),
        )
        rows.append(row)
    _emit_table(run, rows, columns, args.format)


def cmd_construct(args: argparse.Namespace, run: _Run, stdin: TextIO) -> None:
    rows = []
    for text in args.specs:
        try:
            spec = parse_spec(text)
            g = build(spec)
        except (SpecError, GraphError) as exc:
            raise UsageError(f"bad construction {text!r}: {exc}") from None
        row: dict[str, Any] = {"spec": str(spec), "graph6": graph6.encode(g), "n": g.n, "m": g.m}
        if args.closed_form:
            row["R"] = randic_index(g)
            row["closed_form"] = closed_form(spec)
        rows.append(row)
    if args.format == "text" and not args.closed_form:
        for r in rows:
            run.out.write(r["graph6"] + "\n")
        return
    columns = ["spec", "graph6", "n", "m"] + (["R", "closed_form"] if args.closed_form else [])
    _emit_table(run, rows, columns, args.format)


def cmd_verify(args: argparse.Namespace, run: _Run, stdin: TextIO) -> None:
    name = args.bound.partition(":")[0]
    if name not in BOUND_IDS and name != "all":
        raise UsageError(f"unknown bound id {args.bound!r}; choose from {', '.join(BOUND_IDS)}, all")
    reports = []
    for g in run.graphs(args.inputs, stdin):
        try:
            reports += run_check(g, args.bound, args.tolerance, subcubic_constant=args.subcubic_constant)
        except (ValueError, KeyError) as exc:
            raise UsageError(str(exc)) from None
    for rep in reports:
        if rep.certificate is not None:
            run.refuted = True
            run.warn(f"refutation certificate for {rep.bound_id}: {rep.certificate}")
    if args.format == "json":
        run.out.write(reports_to_json(reports) + "\n")
    elif args.format == "csv":
        run.out.write(reports_to_csv(reports))
    else:
        for rep in reports:
            verdict = "n/a" if not rep.hypothesis_held else ("holds" if rep.bound_held else "FAILS")
            run.out.write(
                f"{rep.bound_id}\t{rep.graph6}\t{verdict}\tlhs={rep.lhs:.12f}\trhs={rep.rhs:.12f}"
                f"{chr(9) + 'equality' if rep.equality else ''}\n"
            )


def cmd_reduce(args: argparse.Namespace, run: _Run, stdin: TextIO) -> None:
    traces = []
    for g in run.graphs(args.inputs, stdin):
        try:
            traces.append((graph6.encode(g), run_reduction(g)))
        except GraphError as exc:
            run.warn(f"{graph6.encode(g)}: {exc}")
            run.bad_input = True
    if args.format == "json":
        payload = [
            {
                "graph6": g6,
                "final_graph6": graph6.encode(t.final_graph),
                "final_vertices": t.final_map,
                "initial_R": t.initial_R,
                "final_R": t.final_R,
                "initial_alpha": t.initial_alpha,
                "final_alpha": t.final_alpha,
                "steps": t.records(),
            }
            for g6, t in traces
        ]
        run.out.write(json.dumps(payload, indent=1) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph6", "step", "rule", "removed", "delta_R", "delta_alpha", "n_at_step"])
        for g6, t in traces:
            for rec in t.records():
                w.writerow([
                    g6, rec["step"], rec["rule"], " ".join(map(str, rec["removed"])),
                    f"{rec['delta_R']:.12f}", rec["delta_alpha"], rec["n_at_step"],
                ])
        run.out.write(buf.getvalue())
    else:
        for g6, t in traces:
            run.out.write(f"# graph6 {g6}\n")
            run.out.write(t.to_text())


def _nmax(value: int) -> int:
    if value > FULL_SCAN_MAX_N:
        raise UsageError(f"--nmax {value} exceeds the exhaustive scan cap n <= {FULL_SCAN_MAX_N}")
    return value


def cmd_search(args: argparse.Namespace, run: _Run, stdin: TextIO) -> None:
    try:
        scope = parse_scope(args.scope)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    records = min_randic_by_matching(
        _nmax(args.nmax), scope, shards=args.shards, workers=args.workers, progress=run.err
    )
    if args.format == "csv":
        run.out.write(records_to_csv(records))
        return
    rows = [
        {"k": r.k, "scope": r.scope, "n_max": r.n_max, "best_R": r.best_R, "ratio": r.ratio, "witness": r.witness}
        for r in records
    ]
    _emit_table(run, rows, ["k", "scope", "n_max", "best_R", "ratio", "witness"], args.format)


def cmd_certify(args: argparse.Namespace, run: _Run, stdin: TextIO) -> None:
    report = certify_all_bounds(
        _nmax(args.nmax), shards=args.shards, workers=args.workers, tol=args.tolerance,
        subcubic_constant=args.subcubic_constant, progress=run.err,
    )
    if report.certificates:
        run.refuted = True
    if args.format == "json":
        payload = {
            "n_max": report.n_max,
            "connected_by_n": {str(k): v for k, v in sorted(report.scan.connected_by_n.items())},
            "checks": [
                {"bound_id": t.name, "hypothesis": t.hypothesis, "held": t.held,
                 "equality": t.equality, "certificates": t.certificates}
                for t in report.scan.checks.values()
            ],
            "subcubic_equality_classes": report.equality_classes,
            "corona_mismatches": report.scan.corona_mismatches,
            "counterexamples": len(report.certificates),
        }
        run.out.write(json.dumps(payload, indent=1) + "\n")
    else:
        run.out.write(report.summary())


COMMANDS = {
    "compute": cmd_compute,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
    "search": cmd_search,
    "certify": cmd_certify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "text"), default=None)
    common.add_argument("--tolerance", type=_tolerance, default=EPS,
                        help="comparison tolerance, in [1e-12, 1e-6] (default 1e-9)")
    common.add_argument("-o", "--output", help="write results here instead of stdout")

    p = _Parser(prog="randic", description="Randić index and matching-number toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", parents=[common], help="invariants of graph6 graphs")
    c.add_argument("inputs", nargs="*", help="graph6 files ('-' or none for stdin)")
    c.add_argument("--exponent", type=float, help="also report the general index R_a")

    c = sub.add_parser("construct", parents=[common], help="build named graphs as graph6")
    c.add_argument("specs", nargs="+", help="e.g. 'bw(3,2)', 'gw(6,1)', 'corona_k1(cycle(5))'")
    c.add_argument("--closed-form", action="store_true", help="show closed-form and computed R")

    c = sub.add_parser("verify", parents=[common], help="check the lower bounds on graph6 input")
    c.add_argument("inputs", nargs="*")
    c.add_argument("--bound", default="all", help=f"one of {', '.join(BOUND_IDS)}, all; ':r' selects r")
    c.add_argument("--subcubic-constant", type=float, default=SUBCUBIC_CONSTANT, help="debug: override the subcubic constant (harness self-test)")

    c = sub.add_parser("reduce", parents=[common], help="leaf-stripping reduction trace")
    c.add_argument("inputs", nargs="*")

    for name, helptext in (("search", "minimum R per matching number"), ("certify", "exhaustive bound check")):
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("--nmax", type=_positive, default=7)
        c.add_argument("--shards", type=_positive, default=4)
        c.add_argument("--workers", type=_positive, default=None, help="processes (default: shard count)")
        if name == "search":
            c.add_argument("--scope", default="connected")
        else:
            c.add_argument("--subcubic-constant", type=float, default=SUBCUBIC_CONSTANT, help="debug: override the subcubic constant (harness self-test)")
    return p


_DEFAULT_FORMAT = {"compute": "csv", "construct": "text", "verify": "csv", "reduce": "text",
                   "search": "csv", "certify": "text"}


def main(argv: list[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = _DEFAULT_FORMAT[args.command]
    buf = io.StringIO()
    run = _Run(buf, stderr)
    try:
        COMMANDS[args.command](args, run, stdin)
    except (UsageError, GraphError) as exc:
        print(f"randic: error: {exc}", file=stderr)
        return EXIT_USAGE
    text = buf.getvalue()
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"randic: {args.output}: {exc.strerror}", file=stderr)
            return EXIT_USAGE
    else:
        stdout.write(text)
    return run.status


if __name__ == "__main__":
    sys.exit(main())
