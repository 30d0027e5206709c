"""Command line front end: run a session script and emit its reports."""

from __future__ import annotations

import argparse
import sys

from .field import field_from_name
from .session import SessionError, run_session


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dualhs",
        description="Exact dual Hilbert-Samuel computations from a session script.")
    p.add_argument("script", help="session script path, or '-' for stdin")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--field", default=None,
                   help="override the script's field: Q, Fp, or Fp:<prime>")
    p.add_argument("--window", type=int, default=None,
                   help="verification window for superficial checks")
    p.add_argument("--nmax", type=int, default=None,
                   help="cap for value tables and postulation search")
    p.add_argument("--format", dest="fmt", default=None,
                   choices=("json", "csv", "text"),
                   help="override the format of every report statement")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.script == "-":
        text = sys.stdin.read()
    else:
        with open(args.script, "r", encoding="utf-8") as fh:
            text = fh.read()
    field = field_from_name(args.field) if args.field else None
    try:
        session = run_session(text, seed=args.seed, field=field,
                              window=args.window, nmax=args.nmax)
    except SessionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.fmt is not None:
        from .session import render_reports
        session.outputs = [(path, render_reports(session.reports, args.fmt))
                           for path, _ in session.outputs]
    for path, text_out in session.outputs:
        if path is None:
            sys.stdout.write(text_out)
        else:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text_out)
    return 1 if session.failed else 0


if __name__ == "__main__":
    sys.exit(main())
