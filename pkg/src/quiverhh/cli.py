"""``quiverhh`` command line.

Exit codes: 0 ok, 2 bad input (parse errors, unknown field, oriented cycle in
a core), 3 not finite-dimensional or degree bound hit, 4 a verification
assertion failed, 5 an internal invariant was violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import reports
from .dsl import parse_presentation
from .errors import (
    DegreeOverflow,
    FieldMismatchError,
    InvariantViolation,
    NotFiniteDimensional,
    NotTriangular,
    PresentationError,
    QuiverHHError,
)
from .field import Field

EXIT_OK, EXIT_INPUT, EXIT_DIM, EXIT_ASSERT, EXIT_INTERNAL = 0, 2, 3, 4, 5

COMMANDS = ("check", "basis", "dims", "relations", "extend", "hh", "verify-ses", "bricks")


def _max_degree_default():
    env = os.environ.get("QUIVERHH_MAX_DEGREE")
    if env is None or env == "":
        return None
    try:
        v = int(env)
    except ValueError:
        raise SystemExit(f"QUIVERHH_MAX_DEGREE must be an integer, got {env!r}") from None
    return v


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="presentation file ('-' for stdin)")
    common.add_argument("--field", default=None, help="Q or Fp (e.g. F5); overrides the file")
    common.add_argument("--max-degree", type=_positive, default=None,
                        help="Gröbner completion bound (default: $QUIVERHH_MAX_DEGREE or automatic)")
    common.add_argument("--json", action="store_true", help="emit JSON")

    p = argparse.ArgumentParser(prog="quiverhh", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="parse, validate, print dim and basis")
    sub.add_parser("basis", parents=[common], help="normal-word basis and Gröbner basis")
    sub.add_parser("dims", parents=[common], help="per-pair dimensions with the truncated-span oracle")
    sub.add_parser("relations", parents=[common], help="strong minimality and a minimal system")
    sub.add_parser("extend", parents=[common], help="relation extension: potential, derivatives, classes")
    hh = sub.add_parser("hh", parents=[common], help="Hochschild cohomology in one degree")
    hh.add_argument("--algebra", choices=("C", "B"), default="C")
    hh.add_argument("--coeff", choices=("self", "E", "C"), default="self")
    hh.add_argument("--degree", type=int, default=1)
    sub.add_parser("verify-ses", parents=[common], help="check the HH1 exact sequence and bricks")
    sub.add_parser("bricks", parents=[common], help="Hom table between the summands of E")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(args) -> tuple:
    """Return ``(report dict, exit code)``."""
    fld = Field.parse(args.field) if args.field else None
    pres = parse_presentation(_read(args.file), fld)
    pres.field.warn_if_char_two()
    md = args.max_degree if args.max_degree is not None else _max_degree_default()
    cmd = args.command
    if cmd == "hh":
        if args.degree < 0:
            raise ValueError("--degree must be >= 0")
        r = reports.hh_report(pres, args.algebra, args.coeff, args.degree, md)
        return r, EXIT_OK
    fn = {
        "check": reports.check_report,
        "basis": reports.basis_report,
        "dims": reports.dims_report,
        "relations": reports.relations_report,
        "extend": reports.extend_report,
        "verify-ses": reports.verify_ses_report,
        "bricks": reports.bricks_report,
    }[cmd]
    r = fn(pres, md)
    code = EXIT_OK
    if cmd == "verify-ses" and not r["passed"]:
        code = EXIT_ASSERT
    return r, code


def _error(args, kind: str, exc: Exception, code: int) -> int:
    msg = str(exc)
    if getattr(args, "json", False):
        print(json.dumps({"error": kind, "message": msg, "exit_code": code}, ensure_ascii=False))
    else:
        print(f"quiverhh: {kind}: {msg}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = run(args)
    except (PresentationError, NotTriangular, FieldMismatchError, OSError) as exc:
        return _error(args, type(exc).__name__, exc, EXIT_INPUT)
    except ValueError as exc:
        return _error(args, "ValueError", exc, EXIT_INPUT)
    except (NotFiniteDimensional, DegreeOverflow) as exc:
        return _error(args, type(exc).__name__, exc, EXIT_DIM)
    except (InvariantViolation, QuiverHHError) as exc:
        return _error(args, type(exc).__name__, exc, EXIT_INTERNAL)
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        sys.stdout.write(reports.render(args.command, report))
    return code


if __name__ == "__main__":
    sys.exit(main())
