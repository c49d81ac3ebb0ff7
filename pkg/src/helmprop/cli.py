"""Command-line interface: ``run``, ``compare``, and ``ray-period``.

Exit codes
----------
0   success
2   config or input errors (unknown keys, constraint violations, unreadable
    or mismatched inputs)
3   numerical abort (the field became non-finite during propagation)
"""

import argparse
import sys

from .config import CONFIG_DEFAULTS, ConfigError, parse_config
from .diagnostics import ray_period
from .simulate import PropagationAbort, compare_runs, run_simulation

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_CONFIG", "EXIT_NUMERIC"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_CONFIG_HELP = """\
config file format: one 'key = value' per line, '#' comments allowed.

required keys:
  n_points (even int), spacing (um), wavelength (um), method
  (svd_fft | svd_fd | fresnel), step_length (um), n_steps,
  n0_squared, depth (in [0, 1)), clamp_radius (um)
method-specific keys:
  n_singular       required for svd_fft / svd_fd (1 .. n_points^2)
  reference_index  required for fresnel (squared reference index)
optional keys and defaults:
""" + "\n".join(
    f"  {key} = {value}" for key, value in CONFIG_DEFAULTS.items()
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="helmprop",
        description=(
            "Propagate scalar optical fields under the one-way Helmholtz "
            "equation via a truncated SVD of the transverse operator, or "
            "with the Fresnel split-step reference method."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser(
        "run",
        help="run one configured propagation",
        epilog=_CONFIG_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    run.add_argument("config", help="path to a key = value config file")

    compare = sub.add_parser(
        "compare",
        help="compare 2-3 trajectory CSVs pairwise on centroid_y",
    )
    compare.add_argument("trajectories", nargs="+",
                         help="trajectory CSV files (2 or 3)")
    compare.add_argument("--output", default=None,
                         help="also write the pairwise numbers as CSV")

    period = sub.add_parser(
        "ray-period",
        help="print the analytic paraxial ray period of a config's profile",
    )
    period.add_argument("config", help="path to a key = value config file")
    return parser


def _cmd_run(args):
    try:
        cfg = parse_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        summary = run_simulation(cfg)
    except PropagationAbort as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    cx, cy = summary.final_centroid
    print(f"method          {summary.method}")
    print(f"total z         {summary.total_z:.6f} um")
    print(f"final centroid  ({cx:.6f}, {cy:.6f}) um")
    print(f"final L2 norm   {summary.final_norm:.12g}")
    print(f"elapsed         {summary.elapsed_seconds:.3f} s")
    print(f"trajectory      {summary.trajectory_path}")
    for path in summary.snapshot_paths:
        print(f"snapshot        {path}")
    return EXIT_OK


def _cmd_compare(args):
    try:
        report = compare_runs(args.trajectories, output_path=args.output)
    except (OSError, ValueError) as exc:
        print(f"compare error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for line in report.summary_lines():
        print(line)
    if args.output:
        print(f"report written to {args.output}")
    return EXIT_OK


def _cmd_ray_period(args):
    try:
        cfg = parse_config(args.config)
        period = ray_period(cfg.profile)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"{period:.15g}")
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "compare":
        return _cmd_compare(args)
    if args.command == "ray-period":
        return _cmd_ray_period(args)
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
