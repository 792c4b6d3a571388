"""Figure rendering CLI: ``render --fig 1|2 --csv ... --out ...``."""

from __future__ import annotations

import argparse
import sys

from .io import EmptyInputError, MissingHistogramError, SchemaError, load_asymptotes
from .plots import FigureSpec, render_fig1, render_fig2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render", description="Render figures from bellrmt sweep output"
    )
    parser.add_argument("--fig", type=int, choices=(1, 2), required=True)
    parser.add_argument("--csv", required=True, help="sweep CSV (documented schema)")
    parser.add_argument("--hist", default=None, help="histogram sidecar CSV (fig 2)")
    parser.add_argument("--analytic", default=None, help="analytic-table JSON for asymptote lines")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--png", action="store_true", help="write PNG instead of SVG")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        asymptotes = load_asymptotes(args.analytic) if args.analytic else []
        spec = FigureSpec(
            input_csv=args.csv,
            hist_csv=args.hist,
            output_image=args.out,
            asymptotes=asymptotes,
            png=args.png,
        )
        out = render_fig1(spec) if args.fig == 1 else render_fig2(spec)
    except (SchemaError, EmptyInputError, MissingHistogramError, OSError) as exc:
        print(f"render: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # unexpected
        print(f"render: internal error: {exc}", file=sys.stderr)
        return 3
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
