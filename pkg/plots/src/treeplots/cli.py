"""Command line wrapper around the figure renderer."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FigureSpec, SchemaError, render_figure


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render metric time-series figures from simulation CSV output.",
    )
    parser.add_argument(
        "--csv",
        dest="csv_paths",
        action="append",
        required=True,
        type=Path,
        metavar="PATH",
        help="input series CSV; repeat once for a two-panel comparison",
    )
    parser.add_argument("--out", required=True, type=Path, help="output image path")
    parser.add_argument("--label", required=True, help="figure title")
    parser.add_argument(
        "--linear", action="store_true", help="linear metric axis instead of log"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if len(args.csv_paths) > 2:
        print("error: at most two --csv inputs", file=sys.stderr)
        return 1
    spec = FigureSpec(
        csv_paths=tuple(args.csv_paths),
        out_path=args.out,
        label=args.label,
        log_scale=not args.linear,
    )
    try:
        render_figure(spec)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
