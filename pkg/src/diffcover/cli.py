"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 budget exhausted or no method/solution.  Arrays are always re-verified
before emission, and stdout is byte-identical across identical runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import TextIO

from .core import (
    Form,
    Kind,
    NotNormalized,
    ParseError,
    ResidueArray,
    read_array,
    to_reduced,
    write_array,
)
from .construct import NoMethod, UnknownOrder, construct_by_method, spectrum_report
from .latin import (
    check_row_complete,
    classify_pair,
    latin_from_dca,
    williams_order,
    write_latin,
)
from .search import (
    BudgetExhausted,
    InfeasibleFixedColumns,
    NoSolution,
    SearchConfig,
    search_hdm,
    search_third_column,
)
from .verify import (
    BadShape,
    OddOrderStrict,
    VerificationReport,
    verify_dca,
    verify_dm,
    verify_hdm,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NO_RESULT = 3


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _report_lines(report: VerificationReport) -> str:
    lines = []
    for check in report.checks:
        line = f"{check.name}: {'pass' if check.passed else 'fail'}"
        if check.witness is not None:
            line += f" {json.dumps(check.witness.to_obj())}"
        lines.append(line)
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def _verify_for_kind(arr: ResidueArray, strict: bool) -> VerificationReport:
    if arr.kind is Kind.DM:
        return verify_dm(arr)
    if arr.kind is Kind.HDM:
        return verify_hdm(arr)
    return verify_dca(arr, strict=strict)


def cmd_construct(args: argparse.Namespace) -> int:
    if args.order % 2 or args.order < 6:
        print(f"error: order must be even and at least 6, got {args.order}", file=sys.stderr)
        return EXIT_USAGE
    try:
        arr, tag = construct_by_method(args.order, args.method)
    except (NoMethod, UnknownOrder) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_RESULT
    report = verify_dca(arr, strict=True)
    if not report.passed:
        print(f"error: constructed array failed verification: {report.to_json()}", file=sys.stderr)
        return EXIT_VERIFY
    payload = write_array(arr, fmt=args.format)
    summary = f"method={tag} verified={report.verdict}"
    if args.out == "-":
        sys.stdout.write(payload)
        print(summary, file=sys.stderr)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(summary)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        arr = read_array(_read_input(args.file))
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = _verify_for_kind(arr, args.strict)
    except (BadShape, OddOrderStrict) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if args.format == "json":
        sys.stdout.write(report.to_json() + "\n")
    else:
        sys.stdout.write(_report_lines(report))
    return EXIT_OK if report.passed else EXIT_VERIFY


def _status_stream(stream: TextIO):
    def emit(payload: dict[str, int]) -> None:
        stream.write(json.dumps(payload) + "\n")

    return emit


def _emit_array(arr: ResidueArray, report: VerificationReport, fmt: str) -> None:
    # Emission of an unverified array is a bug, not a user error.
    assert report.passed, "attempted to emit a failing array"
    sys.stdout.write(write_array(arr, fmt=fmt))


def cmd_search(args: argparse.Namespace) -> int:
    status = _status_stream(sys.stderr)
    if args.hdm is not None:
        try:
            n, h = (int(tok) for tok in args.hdm.split(","))
        except ValueError:
            print(f"error: --hdm expects n,h, got {args.hdm!r}", file=sys.stderr)
            return EXIT_USAGE
        cfg = SearchConfig(order=n, node_budget=args.budget, status_interval=args.status_interval)
        try:
            arr = search_hdm(n, h, cfg, status=status)
        except (BudgetExhausted, NoSolution) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NO_RESULT
        _emit_array(arr, verify_hdm(arr), args.format)
        return EXIT_OK
    n = args.order
    if n is None:
        print("error: one of --order or --hdm is required", file=sys.stderr)
        return EXIT_USAGE
    if n % 2 or n < 6:
        print(f"error: order must be even and at least 6, got {n}", file=sys.stderr)
        return EXIT_USAGE
    cfg = SearchConfig(
        order=n,
        node_budget=args.budget,
        result_limit=args.limit,
        status_interval=args.status_interval,
    )
    try:
        columns = search_third_column(cfg, status=status)
    except (BudgetExhausted, InfeasibleFixedColumns) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_RESULT
    if not columns:
        print("error: search space exhausted without a solution", file=sys.stderr)
        return EXIT_NO_RESULT
    from .tables import odd_even_column

    col0 = tuple(range(n))
    col1 = odd_even_column(n)
    first = True
    for col2 in columns:
        arr = ResidueArray.from_rows(
            Kind.DCA, n, zip(col0, col1, col2), form=Form.REDUCED
        )
        if not first:
            sys.stdout.write("\n")
        _emit_array(arr, verify_dca(arr, strict=True), args.format)
        first = False
    return EXIT_OK


def cmd_latin(args: argparse.Namespace) -> int:
    try:
        arr = read_array(_read_input(args.file))
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if arr.kind is not Kind.DCA:
        print(f"error: latin derivation needs a DCA, got {arr.kind.value}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = verify_dca(arr, strict=True)
    except OddOrderStrict as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if not report.passed:
        print(f"error: input fails strict verification: {report.to_json()}", file=sys.stderr)
        return EXIT_VERIFY
    try:
        reduced = to_reduced(arr) if arr.form is Form.FULL else arr
    except NotNormalized as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    indices = (
        list(range(reduced.columns)) if args.square == "all" else [int(args.square)]
    )
    if any(not 0 <= s < reduced.columns for s in indices):
        print(f"error: square index outside [0, {reduced.columns})", file=sys.stderr)
        return EXIT_USAGE
    squares = [latin_from_dca(reduced, s) for s in indices]
    n = reduced.order
    ordering = williams_order(n) if args.williams else None
    classification = None
    if args.classify:
        classification = [
            [classify_pair(a, b).value for b in squares] for a in squares
        ]
    row_complete = None
    if ordering is not None:
        row_complete = [check_row_complete(sq, ordering).passed for sq in squares]
    if args.format == "json":
        obj: dict[str, object] = {
            "order": n,
            "square_indices": indices,
            "squares": [[list(row) for row in sq.grid] for sq in squares],
        }
        if ordering is not None:
            obj["ordering"] = ordering
            obj["row_complete"] = row_complete
        if classification is not None:
            obj["classification"] = classification
        sys.stdout.write(json.dumps(obj) + "\n")
        return EXIT_OK
    for s, sq in zip(indices, squares):
        sys.stdout.write(write_latin(sq))
    if classification is not None:
        for si, row in zip(indices, classification):
            for sj, label in zip(indices, row):
                if si < sj:
                    sys.stdout.write(f"classify {si} {sj} {label}\n")
    if ordering is not None:
        sys.stdout.write("ordering " + " ".join(str(v) for v in ordering) + "\n")
        for s, ok in zip(indices, row_complete):
            sys.stdout.write(f"row-complete {s} {'pass' if ok else 'fail'}\n")
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    try:
        entries = spectrum_report(args.min, args.max)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "csv":
        lines = ["order,methods,status,source"]
        for e in entries:
            lines.append(
                f"{e.order},{';'.join(e.constructible_by)},{e.status},{e.source}"
            )
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(json.dumps([e.to_obj() for e in entries]) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffcover",
        description="Construct, verify, and search cyclic difference covering arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="construct a strict DCA of a given order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--method", choices=["auto", "odd-f", "four-m", "six-mu", "table"], default="auto")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify an array file")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="search third columns or small HDMs")
    p.add_argument("--order", type=int)
    p.add_argument("--hdm", metavar="N,H")
    p.add_argument("--limit", type=int, default=1)
    p.add_argument("--budget", type=int, default=10**9)
    p.add_argument("--status-interval", type=int, default=1_000_000)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("latin", help="derive Latin squares from a strict DCA")
    p.add_argument("file")
    p.add_argument("--square", default="all", help="column index or 'all'")
    p.add_argument("--williams", action="store_true")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_latin)

    p = sub.add_parser("spectrum", help="spectrum bookkeeping for a range of even orders")
    p.add_argument("--min", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_spectrum)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


def run() -> None:
    sys.exit(main())
