"""Simulate command functionality.

This module runs a Monte Carlo BER sweep of one link.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING, Any

from .config import JobKind
from .jobs import JobPlan, run_command
from .utils import sim_plan

if TYPE_CHECKING:
    from .config import JobConfig


def plan_simulate(cfg: JobConfig) -> JobPlan:
    plan = sim_plan(cfg)
    return JobPlan(cfg=cfg, tasks=(plan,), title=f"Simulated BER, {plan.label}")


def cmd_simulate(args: argparse.Namespace) -> None:
    """Handle the simulate command."""
    run_command(args, JobKind.SIMULATE)


def add_simulate_command(subparsers: Any, parents: list[argparse.ArgumentParser]) -> None:
    """Add the simulate subcommand."""
    parser = subparsers.add_parser(
        "simulate",
        help="Monte Carlo BER sweep of one link",
        description="""Simulate the bit error rate of an RIS-SSK or RIS-SM link.

Each grid point runs until min_bit_errors errors or max_bits bits. Results
depend only on the seed and the link, not on the number of workers.

Examples:
    # Greedy RIS-SSK, 64 reflectors, 2 receive antennas
    risim simulate --scheme SSK --detector greedy -N 64 --n-r 2 --grid -30:1:-20

    # RIS-SM with 4-QAM and von Mises phase errors
    risim simulate --scheme SM --detector ML -N 64 --n-r 2 -M 4 --kappa 5 \\
        --grid -30:2:-16 --out sm.json

    # From a job file, overriding the seed
    risim simulate -c job.toml --seed 3
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=parents,
    )
    parser.add_argument(
        "--detector",
        choices=("greedy", "ML"),
        default=argparse.SUPPRESS,
        help="Receiver (greedy or ML)",
    )
    parser.set_defaults(func=cmd_simulate)
