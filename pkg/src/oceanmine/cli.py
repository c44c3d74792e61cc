"""Command line front end.

Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 data
error (malformed input, nothing decodable, or all samples rejected).
All knobs are long-form flags; the environment is never consulted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .advisories import DEFAULT_THETA
from .episodes import DEFAULT_K, DEFAULT_MAX_LEN, DEFAULT_MIN_SUPPORT
from .errors import ConfigError, DataError
from .oscillation import DEFAULT_PRESSURE_FLOOR, DEFAULT_WINDOW_LEN
from .pipeline import DEFAULT_CELL_SIZE, DEFAULT_DELTA_S, PipelineConfig, run

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_DATA = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oceanmine",
        description=(
            "Decode drifting-float telemetry, index it per region, mine "
            "time-lagged episode rules, and emit advisories."
        ),
    )
    parser.add_argument("inputs", nargs="+", metavar="INPUT",
                        help="telemetry dump file(s)")
    parser.add_argument("--out-dir", default="out", metavar="DIR",
                        help="output directory (default: %(default)s)")
    parser.add_argument("--cell-size", type=float, default=DEFAULT_CELL_SIZE,
                        metavar="DEG", help="region grid cell size in degrees "
                        "(default: %(default)s)")
    parser.add_argument("--calibration", default=None, metavar="FILE",
                        help="calibration table file (key = value lines)")
    parser.add_argument("--pressure-floor", type=float,
                        default=DEFAULT_PRESSURE_FLOOR, metavar="DBAR",
                        help="reject records at or below this pressure "
                        "(default: %(default)s)")
    parser.add_argument("--window-len", type=int, default=DEFAULT_WINDOW_LEN,
                        metavar="N", help="band window length in samples "
                        "(default: %(default)s)")
    parser.add_argument("--delta", type=float, default=DEFAULT_DELTA_S,
                        metavar="SECONDS", help="max in-event sample gap "
                        "(default: %(default)s)")
    parser.add_argument("--k", type=int, default=DEFAULT_K, metavar="N",
                        help="quantile class count (default: %(default)s)")
    parser.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN,
                        metavar="N", help="max episode length "
                        "(default: %(default)s)")
    parser.add_argument("--win-a", type=float, default=0.0, metavar="SECONDS",
                        help="antecedent occurrence window (default: %(default)s)")
    parser.add_argument("--win-c", type=float, default=0.0, metavar="SECONDS",
                        help="consequent occurrence window (default: %(default)s)")
    parser.add_argument("--lag", type=float, default=None, metavar="SECONDS",
                        help="max antecedent-to-consequent lag (default: --delta)")
    parser.add_argument("--min-support", type=int, default=DEFAULT_MIN_SUPPORT,
                        metavar="N", help="min rule support in events "
                        "(default: %(default)s)")
    parser.add_argument("--theta", type=float, default=DEFAULT_THETA,
                        metavar="X", help="fishing-zone confidence threshold "
                        "(default: %(default)s)")
    parser.add_argument("--no-plots", action="store_true",
                        help="skip index/confidence plot CSVs")
    parser.add_argument("--version", action="version", version=__version__)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = PipelineConfig(
        inputs=[Path(p) for p in args.inputs],
        out_dir=Path(args.out_dir),
        cell_size=args.cell_size,
        calibration_path=Path(args.calibration) if args.calibration else None,
        pressure_floor=args.pressure_floor,
        window_len=args.window_len,
        delta_s=args.delta,
        k=args.k,
        max_len=args.max_len,
        win_a_s=args.win_a,
        win_c_s=args.win_c,
        lag_s=args.lag,
        min_support=args.min_support,
        theta=args.theta,
        write_plots=not args.no_plots,
    )
    try:
        result = run(config)
    except ConfigError as e:
        print(f"oceanmine: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"oceanmine: io error: {e}", file=sys.stderr)
        return EXIT_IO
    except DataError as e:
        stage = getattr(e, "stage", "data")
        print(f"oceanmine: data error [{stage}]: {e}", file=sys.stderr)
        return EXIT_DATA

    waves = sum(
        1 for row in result.report.rows for a in row.advisories
        if a.kind == "strong_wave"
    )
    zones = sum(
        1 for row in result.report.rows for a in row.advisories
        if a.kind == "fishing_zone"
    )
    print(
        f"oceanmine: {result.record_count} records, "
        f"{result.region_count} regions, {waves} strong-wave alerts, "
        f"{zones} fishing-zone advisories"
    )
    if result.rejected_blocks:
        print(f"oceanmine: {result.rejected_blocks} blocks rejected", file=sys.stderr)
    print(f"oceanmine: report at {Path(config.out_dir) / 'report.txt'}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
