"""Command-line entry point: ``ballotlab verify|table|series|conjecture|oeis``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import oddorder, permcore
from .permcore import EnumerationLimitError
from .report import VerificationReport
from .series.builders import BUILDERS
from .series.core import InexactDivisionError, TruncationBox
from .verify import CHECKS, OeisError, check_oeis

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TABLE_KINDS = {
    "ballot-des": ("ballot", ("des",)),
    "ballot-pk": ("ballot", ("pk",)),
    "ballot-pk-des": ("ballot", ("pk", "des")),
    "perm-depth": ("all", ("depth",)),
    "odd-M": None,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _identity_list(value: str) -> list[str]:
    names = [v.strip() for v in value.split(",") if v.strip()]
    unknown = [v for v in names if v not in CHECKS]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown identity {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    return names


def _identity_epilog() -> str:
    width = max(map(len, CHECKS))
    lines = ["identities (for --identity):"]
    lines += [f"  {c.name:<{width}}  {c.description} (default n-max {c.default_n})"
              for c in CHECKS.values()]
    return "\n".join(lines)


def _add_box_flags(p: argparse.ArgumentParser) -> None:
    for var in "xytz":
        p.add_argument(f"--box-n{var}", f"--n{var}", dest=f"n{var}", type=int, default=10,
                       metavar="N", help=f"truncation degree in {var} (default 10)")
    p.add_argument("--guard", type=int, default=4, help="guard band for exact divisions (default 4)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ballotlab",
                     description="Exact enumeration and series checks for ballot permutations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run identity checks",
                       epilog=_identity_epilog(),
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--identity", type=_identity_list, action="append", default=[],
                   help="identity to check (repeatable or comma separated; default: all)")
    p.add_argument("--n-max", type=int, help="override each identity's default n-max")
    p.add_argument("--jobs", type=int, default=1, help="run identities in this many processes")
    p.add_argument("--out", type=Path, help="write the report stream here instead of stdout")

    p = sub.add_parser("table", help="emit a statistic distribution table")
    p.add_argument("kind", choices=list(TABLE_KINDS))
    p.add_argument("n_pos", nargs="?", type=int, metavar="N_MAX")
    p.add_argument("--n-max", type=int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("series", help="dump a closed-form generating function")
    p.add_argument("builder", choices=list(BUILDERS))
    _add_box_flags(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("conjecture", help="test the factor conjecture around the largest letter")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("oeis", help="compare against a local OEIS b-file")
    p.add_argument("sequence_id", choices=["A000246", "A008292", "A321280"])
    p.add_argument("bfile", type=Path)
    p.add_argument("--out", type=Path)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with out.open("a") as fh:
            fh.write(text)


def _run_identity(name: str, n_max: int | None) -> list[dict]:
    check = CHECKS[name]
    result = check.run(check.default_n if n_max is None else n_max)
    return [r.to_dict() for r in (result if isinstance(result, list) else [result])]


def cmd_verify(args) -> int:
    names = [n for group in args.identity for n in group] or list(CHECKS)
    names = list(dict.fromkeys(names))
    if args.n_max is not None and args.n_max < 0:
        raise UsageError("--n-max must be non-negative")
    if args.out:
        args.out.write_text("")
    ok = True
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            streams = pool.map(_run_identity, names, [args.n_max] * len(names))
            for dicts in streams:
                ok &= _write_reports(dicts, args.out)
    else:
        for name in names:
            ok &= _write_reports(_run_identity(name, args.n_max), args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def _write_reports(dicts: list[dict], out: Path | None) -> bool:
    _emit("".join(json.dumps(d) + "\n" for d in dicts), out)
    return all(d["status"] == "pass" for d in dicts)


def cmd_table(args) -> int:
    n_max = args.n_max if args.n_max is not None else args.n_pos
    if n_max is None:
        raise UsageError("table needs N_MAX (positional or --n-max)")
    if n_max < 0:
        raise UsageError("N_MAX must be non-negative")
    spec = TABLE_KINDS[args.kind]
    if spec is None:
        table = oddorder.odd_order_table(n_max).as_stat_table()
    else:
        table = permcore.stat_table(n_max, *spec)
    text = table.to_csv() if args.format == "csv" else table.to_json() + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        _emit(text, None)
    return EXIT_PASS


def cmd_series(args) -> int:
    bounds = (args.nx, args.ny, args.nt, args.nz, args.guard)
    if min(bounds) < 0:
        raise UsageError("box bounds and guard must be non-negative")
    series = BUILDERS[args.builder](TruncationBox(*bounds))
    text = series.dump()
    text += "" if text.endswith("\n") else "\n"
    if args.out:
        args.out.write_text(text)
    else:
        _emit(text, None)
    return EXIT_PASS


def cmd_conjecture(args) -> int:
    if args.out:
        args.out.write_text("")
    violations = 0
    for n in range(args.n_max + 1):
        records = oddorder.conjecture_records(n)
        violations += sum(not r["equal"] for r in records)
        if records:
            _emit(oddorder.records_to_jsonl(records), args.out)
    verdict = (f"consistent up to n={args.n_max}" if not violations
               else f"violated: {violations} counterexample(s)")
    _emit(json.dumps({"conjecture": "wz", "n_max": args.n_max, "result": verdict,
                      "violations": violations}) + "\n", args.out)
    return EXIT_PASS if not violations else EXIT_FAIL


def cmd_oeis(args) -> int:
    report: VerificationReport = check_oeis(args.sequence_id, args.bfile)
    _emit(report.to_json() + "\n", args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "table": cmd_table, "series": cmd_series,
            "conjecture": cmd_conjecture, "oeis": cmd_oeis}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, EnumerationLimitError, OeisError, InexactDivisionError,
            FileNotFoundError, KeyError) as exc:
        print(f"ballotlab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
