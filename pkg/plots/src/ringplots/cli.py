"""plots --in <csv> --scenario <name> --out <path> [--loglog] [--fit-slope]"""

from __future__ import annotations

import argparse
import sys

from .core import PlotJob, SchemaError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots", description="Render experiment CSVs into figures.")
    parser.add_argument("--in", dest="input_path", required=True,
                        help="experiments CSV file")
    parser.add_argument("--scenario", default=None,
                        help="only this scenario (default: every scenario)")
    parser.add_argument("--out", dest="output_path", required=True,
                        help="output image path (.svg or .png)")
    parser.add_argument("--loglog", action="store_true",
                        help="log-log axes")
    parser.add_argument("--fit-slope", action="store_true",
                        help="annotate the fitted power-law slope")
    args = parser.parse_args(argv)
    job = PlotJob(input_path=args.input_path, output_path=args.output_path,
                  scenario=args.scenario, loglog=args.loglog,
                  fit_slope=args.fit_slope)
    try:
        written = render(job)
    except (SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
