from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.logging import RichHandler

from deltakoszul.cli.commands import INPUT_ERROR, Command, run
from deltakoszul.cli.parser import parse
from deltakoszul.cli.render import make_console, render
from deltakoszul.common.errors import DeltaKoszulError
from deltakoszul.config import get_settings
from deltakoszul.lab import SUITES

settings = get_settings()


def _setup_logging(level: str) -> None:
    handler = RichHandler(console=Console(stderr=True, width=settings.CONSOLE_WIDTH), show_time=False, show_path=False)
    logging.basicConfig(level=level.upper(), format="%(message)s", handlers=[handler], force=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltakoszul", description="exact δ-Koszul and horseshoe computations")
    parser.add_argument("--machine", action="store_true", help="machine-readable lines only")
    parser.add_argument("--log-level", default=None, help=f"logging level on stderr (default={settings.LOG_LEVEL})")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("file", help="input file ('-' for stdin)")
        return p

    p = with_file("resolve", "minimal projective resolution and Betti table")
    p.add_argument("target", metavar="module")
    p.add_argument("--n-max", type=int, default=None, help=f"deepest level (default={settings.N_MAX})")

    p = with_file("koszul", "δ-Koszul certificate of a module")
    p.add_argument("target", metavar="module")
    p.add_argument("--delta", default="koszul", help="koszul | dkoszul:d | piecewise:d,p | custom:a,b,.. | infer")
    p.add_argument("--n-max", type=int, default=None)

    p = with_file("mhl", "radical condition and minimal horseshoe of a short exact sequence")
    p.add_argument("target", metavar="ses")
    p.add_argument("--n-max", type=int, default=None)

    p = with_file("horseshoe", "horseshoe diagram level by level")
    p.add_argument("target", metavar="ses")
    p.add_argument("--classic", action="store_true", help="allow non-minimal middle covers")
    p.add_argument("--n-max", type=int, default=None)

    p = with_file("algebra", "dimensions, radical layers and (optionally) a certificate for the algebra")
    p.add_argument("--delta", default=None)
    p.add_argument("--n-max", type=int, default=None)

    with_file("dump", "re-render the parsed file in the input format")

    p = sub.add_parser("audit", help="randomized audit of one suite")
    p.add_argument("target", metavar="suite", choices=SUITES)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["graded", "findim"], default="findim")
    p.add_argument("--workers", type=int, default=None, help=f"process pool size (default={settings.AUDIT_WORKERS})")
    p.add_argument("--field", default=None, help="Q or F<p> (default F32003)")
    p.add_argument("--delta", default=None, help="δ profile for the suites that take one")
    p.add_argument("--n-max", type=int, default=None)

    p = sub.add_parser("replay", help="re-run a counterexample file")
    p.add_argument("target", metavar="file")
    return parser


def _command(args: argparse.Namespace) -> Command:
    fields = {k: getattr(args, k) for k in ("target", "n_max", "delta", "classic", "trials", "seed", "mode", "workers", "field") if hasattr(args, k)}
    return Command(name=args.command, **{k: v for k, v in fields.items() if v is not None})


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args.log_level or settings.LOG_LEVEL)
    out = make_console(file=sys.stdout)
    err = make_console(file=sys.stderr)
    try:
        ws = None
        if hasattr(args, "file"):
            ws = parse(_read(args.file), source=args.file)
        code, report = run(ws, _command(args))
    except (DeltaKoszulError, OSError, ValueError) as exc:
        where = f"{args.file}:" if hasattr(args, "file") and args.file != "-" else ""
        err.print(f"error: {where}{exc}", markup=False)
        return INPUT_ERROR
    render(report, out, machine=args.machine)
    if code == 1 and report.verdict.witness and not args.machine:
        err.print("witness: " + " ".join(f"{k}={v}" for k, v in report.verdict.witness.items()), markup=False)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
