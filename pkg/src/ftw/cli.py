"""Command line entry point: ``ftw analyze | iso | dot | export``.

Exit codes: 0 analyzed (whatever the laws say), 1 input or validation
error, 2 size-cap refusal.
"""
from __future__ import annotations

import argparse
import json
import sys

from .cover import export_table
from .document import build_space, load_document
from .errors import FTWError, SizeCapError
from .report import AnalyzeOptions, dot_for, run_analyze, run_iso


def parse_subset(text: str) -> list[str]:
    """``"{h,1}"``, ``"h,1"`` or ``"{}"`` to a list of names."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    return [t.strip() for t in text.split(",") if t.strip()]


def _space_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--complete", action="store_true",
                   help="use the Dedekind-MacNeille cover of a poset document")
    p.add_argument("--max-base", type=int, default=None, metavar="N",
                   help="refuse bases larger than N (default 16)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ftw", description="finite formal topology workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one space")
    a.add_argument("file")
    a.add_argument("--laws", action="store_true")
    a.add_argument("--points", action="store_true")
    a.add_argument("--frame", action="store_true")
    a.add_argument("--presentation", action="store_true")
    a.add_argument("--booleanize", action="store_true")
    a.add_argument("--beta", action="store_true")
    a.add_argument("--closed", action="append", default=[], metavar="SUBSET",
                   help="closed subspace, e.g. --closed '{h}'; may repeat")
    a.add_argument("--adjoin-top", action="store_true")
    _space_flags(a)

    i = sub.add_parser("iso", help="search for an isomorphism of two spaces")
    i.add_argument("file1")
    i.add_argument("file2")
    _space_flags(i)

    d = sub.add_parser("dot", help="Hasse diagram of a poset or frame in DOT")
    d.add_argument("file")
    d.add_argument("--frame", action="store_true")
    _space_flags(d)

    e = sub.add_parser("export", help="write a space as a table document")
    e.add_argument("file")
    _space_flags(e)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Run a command; return (exit code, stdout text, stderr text)."""
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            opts = AnalyzeOptions(
                laws=args.laws, points=args.points, frame=args.frame,
                presentation=args.presentation, booleanize=args.booleanize, beta=args.beta,
                closed=[parse_subset(c) for c in args.closed], adjoin_top=args.adjoin_top,
                complete=args.complete, max_base=args.max_base)
            return 0, run_analyze(load_document(args.file), opts), ""
        if args.command == "iso":
            s1 = build_space(load_document(args.file1), args.complete, args.max_base)
            s2 = build_space(load_document(args.file2), args.complete, args.max_base)
            return 0, run_iso(s1, s2), ""
        if args.command == "dot":
            return 0, dot_for(load_document(args.file), args.frame, args.complete,
                              args.max_base), ""
        s = build_space(load_document(args.file), args.complete, args.max_base)
        return 0, json.dumps(export_table(s), ensure_ascii=False, indent=1) + "\n", ""
    except SizeCapError as exc:
        return 2, "", f"ftw: refused: {exc}\n"
    except (FTWError, OSError, ValueError, KeyError) as exc:
        return 1, "", f"ftw: error: {exc}\n"


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
