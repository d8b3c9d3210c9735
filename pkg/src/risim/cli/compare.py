"""Compare command functionality.

This module runs one link under several detectors, simulated and
analytical, on the same grid and reports the SNR gaps between the curves.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING, Any

from .config import ConfigError, JobKind
from .jobs import JobPlan, run_command
from .utils import sim_plan, theory_request

if TYPE_CHECKING:
    from .config import JobConfig
    from .jobs import Task


def plan_compare(cfg: JobConfig) -> JobPlan:
    """
    Simulated curves for every detector, followed by their theory curves.

    Gaps are reported between every pair of curves at each target BER.
    """
    detectors = cfg.compare.detectors
    if not detectors:
        msg = "compare.detectors must name at least one detector"
        raise ConfigError(msg)
    if not all(0 < target < 1 for target in cfg.compare.target_bers):
        msg = f"Target BERs must lie in (0, 1), got {list(cfg.compare.target_bers)}"
        raise ConfigError(msg)

    tasks: list[Task] = [sim_plan(cfg, detector) for detector in detectors]
    if cfg.compare.theory and cfg.link.kappa is None:
        tasks.extend(theory_request(cfg, detector) for detector in detectors)
    return JobPlan(
        cfg=cfg,
        tasks=tuple(tasks),
        title=f"Detector comparison, {tasks[0].label}",
        target_bers=cfg.compare.target_bers,
    )


def cmd_compare(args: argparse.Namespace) -> None:
    """Handle the compare command."""
    run_command(args, JobKind.COMPARE)


def _detector_list(text: str) -> tuple[str, ...]:
    detectors = tuple(d.strip() for d in text.split(",") if d.strip())
    for detector in detectors:
        if detector not in ("greedy", "ML"):
            msg = f"invalid detector '{detector}' (choose from greedy, ML)"
            raise argparse.ArgumentTypeError(msg)
    return detectors


def add_compare_command(subparsers: Any, parents: list[argparse.ArgumentParser]) -> None:
    """Add the compare subcommand."""
    parser = subparsers.add_parser(
        "compare",
        help="Detectors side by side, with SNR gap report",
        description="""Simulate and evaluate one link under several detectors.

All curves share the grid and the seed, so simulated curves see the same
channels, bits and noise. The SNR each curve needs to reach every target
BER, and the gaps between curves, are written to <out stem>.gaps.csv.
Theory curves are skipped for links with phase errors (--kappa).

Examples:
    risim compare --scheme SSK -N 64 --n-r 2 --grid -34:1:-18
    risim compare --scheme SM -N 64 --n-r 2 -M 4 --grid -30:1:-14 --no-theory
    risim compare -c job.toml --target-ber 1e-4 --target-ber 1e-5
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=parents,
    )
    parser.add_argument(
        "--detectors",
        type=_detector_list,
        metavar="LIST",
        default=argparse.SUPPRESS,
        help="Comma-separated detectors (default: greedy,ML)",
    )
    parser.add_argument(
        "--target-ber",
        dest="target_bers",
        type=float,
        action="append",
        metavar="BER",
        default=argparse.SUPPRESS,
        help="Target BER of the gap report (repeatable, default: 1e-3 and 1e-4)",
    )
    parser.add_argument(
        "--no-theory",
        dest="theory",
        action="store_false",
        default=argparse.SUPPRESS,
        help="Simulated curves only",
    )
    parser.set_defaults(func=cmd_compare)
