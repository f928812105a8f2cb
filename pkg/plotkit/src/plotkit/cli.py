"""Command-line entry point: plot --in results.csv --out figs/ --format svg"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .render import FORMATS, CsvFormatError, FigureSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render survival-vs-vaccination figures from a sweep CSV",
    )
    parser.add_argument("--in", dest="input_csv", required=True,
                        help="harness result CSV")
    parser.add_argument("--out", dest="output_dir", required=True,
                        help="directory for the figures")
    parser.add_argument("--format", choices=FORMATS, default="svg")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    spec = FigureSpec(
        input_csv=Path(args.input_csv),
        output_dir=Path(args.output_dir),
        image_format=args.format,
    )
    try:
        written = render(spec)
    except (CsvFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(written)} figure(s) to {spec.output_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
