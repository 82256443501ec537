"""Command-line entry point: ``quditenc {search,encode,verify,report,codes}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import formats
from .circuit import count_gates, export_structured, export_text, parse_structured
from .encoder import EncoderError, validate, synthesize_encoder
from .field import PrimeField
from .gatesets import PRESETS, GateSet, preset
from .report import compare_sets, plot_comparison, rows_to_csv, rows_to_table, search_document, search_table
from .search import SearchConfig, find_optimal_set
from .verify import BudgetExceeded, verify_encoder

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SEARCH = 4
EXIT_VERIFY = 5
EXIT_BUDGET = 6

log = logging.getLogger("quditenc")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def load_check(arg: str):
    """A check-matrix file path, or the name of a bundled code such as ``513_d3``."""
    if not Path(arg).exists() and arg + ".chk" in formats.bundled_codes():
        check = formats.load_bundled(arg)
    else:
        try:
            check = formats.parse_check_matrix(_read(arg))
        except formats.ParseError as exc:
            raise CliError(EXIT_PARSE, f"{arg}: {exc}") from None
    problems = validate(check)
    if problems:
        raise CliError(EXIT_VALIDATION, f"{arg}: " + "; ".join(problems))
    return check


def load_gateset(arg: str):
    """A preset name or a gate-set file."""
    if arg in PRESETS:
        return preset(arg)
    try:
        return formats.parse_gateset(_read(arg))
    except formats.ParseError as exc:
        raise CliError(EXIT_PARSE, f"{arg}: {exc}") from None


def _constraint(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"constraint must look like a,b: {text!r}") from None
    return a, b


def _outdir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_search(args) -> int:
    try:
        field = PrimeField(args.d)
        config = SearchConfig(field, args.set_size, tuple(args.constraint or ()))
    except ValueError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None
    result = find_optimal_set(config, workers=args.workers)
    if result is None:
        print(f"search failed: no generating set of size {args.set_size} containing the DFT", file=sys.stderr)
        return EXIT_SEARCH
    table = search_table(result, config)
    sys.stdout.write(table)
    if args.output:
        out = _outdir(args.output)
        (out / "search.txt").write_text(search_document(result, config))
        (out / "table.txt").write_text(table)
        gs = GateSet(args.d, f"d{args.d}-search-{args.set_size}", tuple(result.best_set))
        (out / "gateset.txt").write_text(formats.format_gateset(gs))
    return EXIT_OK


def cmd_encode(args) -> int:
    check = load_check(args.check)
    gs = load_gateset(args.gateset)
    try:
        res = synthesize_encoder(check, gs)
    except EncoderError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None
    m = count_gates(res.circuit)
    metrics = (
        f"code: {check.label}\n"
        f"gateset: {gs.label}\n"
        f"single_qudit_count: {m.single_qudit_count}\n"
        f"single_qudit_count_with_final_layer: {m.single_qudit_count_total}\n"
        f"two_qudit_count: {m.two_qudit_count}\n"
        f"depth: {m.depth}\n"
    )
    sys.stdout.write(res.log.to_text() + metrics)
    if args.output:
        out = _outdir(args.output)
        (out / "circuit.txt").write_text(export_structured(res.circuit))
        (out / "stages.txt").write_text(res.log.to_text())
        (out / "metrics.txt").write_text(metrics)
        (out / "diagram.txt").write_text(export_text(res.circuit))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        circuit = parse_structured(_read(args.circuit))
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"{args.circuit}: {exc}") from None
    check = load_check(args.check)
    try:
        report = verify_encoder(circuit, check)
    except BudgetExceeded as exc:
        print(f"refusing dense simulation: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None
    text = report.to_text()
    if args.output:
        Path(args.output).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_report(args) -> int:
    rows = []
    for check_arg, a, b in args.pair:
        check = load_check(check_arg)
        try:
            rows.append(compare_sets(check, load_gateset(a), load_gateset(b)))
        except EncoderError as exc:
            raise CliError(EXIT_VALIDATION, str(exc)) from None
    sys.stdout.write(rows_to_table(rows))
    if args.output:
        out = _outdir(args.output)
        (out / "comparison.csv").write_text(rows_to_csv(rows))
        (out / "comparison.txt").write_text(rows_to_table(rows))
        if not args.no_plot:
            plot_comparison(rows, out / "comparison.png")
    return EXIT_OK


def cmd_codes(args) -> int:
    for name in formats.bundled_codes():
        print(name.removesuffix(".chk"))
    for name in PRESETS:
        print(name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quditenc", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="find an optimal generating gate set")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--set-size", type=int, required=True)
    s.add_argument("--constraint", type=_constraint, action="append", metavar="A,B")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--output", help="directory for search.txt, table.txt, gateset.txt")
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("encode", help="synthesize an encoder circuit")
    e.add_argument("check", help="check-matrix file or bundled code name")
    e.add_argument("--gateset", "--preset", dest="gateset", required=True, help="preset name or gate-set file")
    e.add_argument("--output", help="directory for circuit.txt, stages.txt, metrics.txt, diagram.txt")
    e.set_defaults(func=cmd_encode)

    v = sub.add_parser("verify", help="check an encoder circuit against its code by dense simulation")
    v.add_argument("circuit")
    v.add_argument("check")
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="compare two gate sets on one or more codes")
    r.add_argument("--pair", nargs=3, action="append", required=True, metavar=("CHECK", "SET_A", "SET_B"))
    r.add_argument("--output", help="directory for comparison.csv/.txt/.png")
    r.add_argument("--no-plot", action="store_true")
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("codes", help="list bundled codes and gate-set presets")
    c.set_defaults(func=cmd_codes)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
