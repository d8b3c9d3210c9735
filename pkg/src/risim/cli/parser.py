"""Argument parser creation for CLI.

This module provides the argument parser configuration for all
CLI commands and options.
"""

from __future__ import annotations

import argparse
from importlib import metadata as importlib_metadata

from ..results import FORMATS
from .compare import add_compare_command
from .figure import add_figure_command
from .simulate import add_simulate_command
from .theory_cmd import add_theory_command


def _version() -> str:
    try:
        return importlib_metadata.version("risim")
    except importlib_metadata.PackageNotFoundError:
        return "unknown"


def _create_parent_parser() -> argparse.ArgumentParser:
    """Create parent parser with shared options inherited by subcommands."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=argparse.SUPPRESS,
        help="Increase verbosity (-v: per-chunk progress, -vv: also provenance)",
    )
    parent.add_argument(
        "-q",
        "--quiet",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Suppress progress output",
    )
    parent.add_argument(
        "-c",
        "--config",
        metavar="FILE",
        default=argparse.SUPPRESS,
        help="TOML job file (flags override its values)",
    )
    return parent


def _create_run_parser() -> argparse.ArgumentParser:
    """Options shared by every job: output, grid, seed and stop rule."""
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("run options")
    group.add_argument(
        "-o",
        "--out",
        metavar="PATH",
        default=argparse.SUPPRESS,
        help="Result file (default: risim-<command>.<format> or <figure>.<format>)",
    )
    group.add_argument(
        "-f",
        "--format",
        choices=FORMATS,
        default=argparse.SUPPRESS,
        help="Result format (default: from --out suffix, else csv)",
    )
    group.add_argument(
        "--grid",
        metavar="START:STEP:STOP",
        default=argparse.SUPPRESS,
        help="Es/N0 grid in dB, inclusive (e.g. -30:1:-20)",
    )
    group.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="Master seed (default: 0)",
    )
    group.add_argument(
        "-w",
        "--workers",
        type=int,
        default=argparse.SUPPRESS,
        help="Chunks simulated concurrently (env: RISIM_WORKERS, default: 1)",
    )
    group.add_argument(
        "--min-bit-errors",
        type=int,
        default=argparse.SUPPRESS,
        help="Stop a point after this many bit errors (default: 200)",
    )
    group.add_argument(
        "--max-bits",
        type=int,
        default=argparse.SUPPRESS,
        help="Stop a point after this many bits (default: 1e8)",
    )
    group.add_argument(
        "--chunk-uses",
        type=int,
        default=argparse.SUPPRESS,
        help=argparse.SUPPRESS,
    )
    group.add_argument(
        "--svg",
        metavar="PATH",
        default=argparse.SUPPRESS,
        help="Also plot the curves to an SVG file (requires risim[plot])",
    )
    return parent


def _create_link_parser() -> argparse.ArgumentParser:
    """Options describing the link of a simulate, theory or compare job."""
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("link options")
    group.add_argument(
        "--scheme",
        choices=("SSK", "SM"),
        default=argparse.SUPPRESS,
        help="RIS-SSK (antenna index only) or RIS-SM (antenna index and symbol)",
    )
    group.add_argument(
        "-N",
        "--reflectors",
        dest="N",
        type=int,
        default=argparse.SUPPRESS,
        help="Number of RIS reflectors",
    )
    group.add_argument(
        "--n-r",
        "--antennas",
        dest="n_R",
        type=int,
        default=argparse.SUPPRESS,
        help="Number of receive antennas (power of two)",
    )
    group.add_argument(
        "-M",
        "--order",
        dest="M",
        type=int,
        default=argparse.SUPPRESS,
        help="Constellation order (RIS-SM)",
    )
    group.add_argument(
        "--constellation",
        choices=("PSK", "QAM"),
        default=argparse.SUPPRESS,
        help="Constellation kind (default: PSK for M=2, QAM otherwise)",
    )
    group.add_argument(
        "--es",
        dest="Es",
        type=float,
        default=argparse.SUPPRESS,
        help="Average symbol energy (default: 1)",
    )
    group.add_argument(
        "--kappa",
        type=float,
        default=argparse.SUPPRESS,
        help="Von Mises concentration of RIS phase errors (default: perfect phases)",
    )
    return parent


def create_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser."""
    parent_parser = _create_parent_parser()
    run_parser = _create_run_parser()
    link_parser = _create_link_parser()

    parser = argparse.ArgumentParser(
        prog="risim",
        description="risim - RIS-assisted index modulation link simulator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[parent_parser],
        epilog="""
Examples:
  risim simulate --scheme SSK --detector greedy -N 64 --n-r 2 --grid -30:1:-20
  risim theory --scheme SM --detector ML -N 64 --n-r 2 -M 4 --grid -30:1:-14
  risim compare --scheme SSK -N 64 --n-r 2 --grid -34:1:-18
  risim figure fig4 --seed 1 --workers 4 --svg fig4.svg
  risim simulate -c job.toml --seed 3

Environment:
  RISIM_WORKERS    Default number of workers

Exit status:
  0  success
  2  invalid configuration (no files written)
  3  numerical failure of a theory curve (no files written)
""",
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {_version()}",
    )

    subparsers = parser.add_subparsers(
        title="commands",
        description="Available commands",
        dest="command",
        metavar="<command>",
    )

    link_parents = [parent_parser, run_parser, link_parser]
    add_simulate_command(subparsers, link_parents)
    add_theory_command(subparsers, link_parents)
    add_compare_command(subparsers, link_parents)
    add_figure_command(subparsers, [parent_parser, run_parser])

    return parser
