"""Command-line entry point: ``bankperf {validate,metrics,malmquist,test,report}``.

Exit codes: 0 success, 1 input error, 2 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import BankPerfError, InputError, NumericError
from .report import RunConfig, analyse_panel, load_inputs, render_report

SUBCOMMAND_TABLES = {
    "metrics": ("descriptives", "roa_trend", "tsr_trend", "tfp_trend"),
    "malmquist": ("malmquist",),
    "test": ("anova", "paired_t", "verdicts"),
    "report": ("descriptives", "roa_trend", "tsr_trend", "tfp_trend", "anova", "paired_t", "verdicts", "malmquist"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--panel", required=True, type=Path, help="panel CSV file")
    common.add_argument("--schema", required=True, type=Path, help="key=value schema config")
    common.add_argument("--out", type=Path, help="output directory (default: print to stdout)")
    common.add_argument("--format", dest="formats", action="append", choices=("markdown", "csv"),
                        help="output format; repeat for both (default markdown)")
    common.add_argument("--alpha", type=float, default=0.05)
    common.add_argument("--growth-denominator", choices=("abs", "raw"), default="abs")
    common.add_argument("--aggregation", choices=("arithmetic", "geometric"), default="arithmetic")

    parser = argparse.ArgumentParser(prog="bankperf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check schema and panel only")
    sub.add_parser("metrics", parents=[common], help="descriptives and trend tables (1-4)")
    sub.add_parser("malmquist", parents=[common], help="Malmquist index table")
    sub.add_parser("test", parents=[common], help="ANOVA, paired t tests and verdicts (5-6)")
    sub.add_parser("report", parents=[common], help="everything")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        panel_path=args.panel,
        schema_path=args.schema,
        out_dir=args.out,
        formats=tuple(args.formats or ("markdown",)),
        alpha=args.alpha,
        growth_denominator=args.growth_denominator,
        aggregation=args.aggregation,
    )
    try:
        panel = load_inputs(config)
        if args.command == "validate":
            print(f"ok: {panel.n_banks} banks x {panel.n_years} years ({len(panel.records)} records), "
                  f"years {panel.years[0]}-{panel.years[-1]}, groups {', '.join(panel.groups())}")
            return 0
        bundle = analyse_panel(panel, config.alpha, config.growth_denominator, config.aggregation)
        for f in config.formats:
            files = render_report(bundle, f, SUBCOMMAND_TABLES[args.command], config.out_dir)
            if config.out_dir is None:
                for text in files.values():
                    sys.stdout.write(text + "\n")
        if config.out_dir is not None:
            print(f"wrote {args.command} output to {config.out_dir}")
        return 0
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except BankPerfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
