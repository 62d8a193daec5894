"""Command-line front end: ``germinv analyze | catalog | check | selftest``.

Exit status: 0 ok, 1 input error, 2 computation limit, 3 consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .catalog import FAMILIES, catalog
from .cyclotomic import DEFAULT_CONDUCTOR, max_conductor
from .errors import GermInvError
from .fileformat import DISPLAY_TERMS, ReportDocument, parse_germ_file, table_row
from .germ import Germ, analyze
from .selftest import run_selftest

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_INCONSISTENT = 0, 1, 2, 3


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="germinv",
        description="Invariants of finitely determined map germs from the plane to 3-space.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def output_flags(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", dest="fmt", action="store_const", const="json",
                       help="one JSON report object per germ, one per line")
        g.add_argument("--table", dest="fmt", action="store_const", const="table",
                       help="one key=value row per germ (default)")
        sp.set_defaults(fmt="table")
        sp.add_argument("--terms", type=int, default=DISPLAY_TERMS,
                        help="branch terms shown in reports (default %(default)s)")

    a = sub.add_parser("analyze", help="run the full pipeline on a germ file")
    a.add_argument("file")
    output_flags(a)
    a.add_argument("--truncation", type=int, default=None,
                   help="initial Puiseux truncation (default: derived from d)")
    a.add_argument("--conductor", type=int, default=DEFAULT_CONDUCTOR,
                   help="base field Q(zeta_n) for records without their own conductor")

    c = sub.add_parser("catalog", help="analyze built-in example germs")
    c.add_argument("family", nargs="?", choices=FAMILIES)
    c.add_argument("--k", type=int, default=None)
    c.add_argument("--allow-large", action="store_true", help="permit k above 12")
    output_flags(c)

    k = sub.add_parser("check", help="run only the consistency checks on a germ file")
    k.add_argument("file")
    k.add_argument("--conductor", type=int, default=DEFAULT_CONDUCTOR)

    s = sub.add_parser("selftest", help="run the built-in property suites")
    s.add_argument("--seed", type=int, default=0)
    return p


def _fail(message: str, code: int) -> int:
    print(f"germinv: {message}", file=sys.stderr)
    return code


def _load(path: str, conductor: int) -> list[Germ]:
    if not 1 <= conductor <= max_conductor():
        raise GermInvError(f"--conductor must lie in 1..{max_conductor()}")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GermInvError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_germ_file(text, conductor)
    except GermInvError as exc:
        exc.args = (f"{path}:{exc.args[0]}",)
        raise


def _report(germs: Sequence[Germ], fmt: str, truncation: int | None, terms: int) -> int:
    status = EXIT_OK
    for g in germs:
        try:
            doc = ReportDocument.from_report(analyze(g, truncation), terms)
        except GermInvError as exc:
            print(f"germinv: {g.name}: {type(exc).__name__}: {exc}", file=sys.stderr)
            status = max(status, exc.exit_code)
            continue
        print(doc.to_json(indent=None) if fmt == "json" else table_row(doc))
        for note in doc.notes:
            if fmt == "table":
                print(f"  note: {note}")
        if doc.failed_checks():
            status = max(status, EXIT_INCONSISTENT)
    return status


def _check(germs: Sequence[Germ]) -> int:
    status = EXIT_OK
    for g in germs:
        try:
            rep = analyze(g)
        except GermInvError as exc:
            print(f"{g.name}: {type(exc).__name__}: {exc}")
            status = max(status, exc.exit_code)
            continue
        flags = "  ".join(f"{k}={'n/a' if v is None else v}" for k, v in rep.checks.items())
        print(f"{g.name}  {flags}")
        if any(v is False for v in rep.checks.values()):
            status = max(status, EXIT_INCONSISTENT)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; here 2 means a computation limit
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.command == "analyze":
            if args.truncation is not None and args.truncation < 1:
                return _fail("--truncation must be positive", EXIT_INPUT)
            germs = _load(args.file, args.conductor)
            return _report(germs, args.fmt, args.truncation, args.terms)
        if args.command == "catalog":
            germs = catalog(args.family, args.k, args.allow_large)
            return _report(germs, args.fmt, None, args.terms)
        if args.command == "check":
            return _check(_load(args.file, args.conductor))
        return EXIT_OK if run_selftest(args.seed) else EXIT_INCONSISTENT
    except GermInvError as exc:
        return _fail(str(exc), exc.exit_code)
    except (KeyError, ValueError) as exc:
        return _fail(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
