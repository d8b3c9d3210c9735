"""Theory command functionality.

This module evaluates the analytical BEP curve of one link.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING, Any

from .config import ConfigError, JobKind
from .jobs import JobPlan, run_command
from .utils import theory_request

if TYPE_CHECKING:
    from .config import JobConfig


def plan_theory(cfg: JobConfig) -> JobPlan:
    if cfg.link.kappa is not None:
        msg = "Theory curves assume perfect phases; remove link.kappa (--kappa)"
        raise ConfigError(msg)
    req = theory_request(cfg)
    return JobPlan(cfg=cfg, tasks=(req,), title=f"Analytical BEP, {req.label}")


def cmd_theory(args: argparse.Namespace) -> None:
    """Handle the theory command."""
    run_command(args, JobKind.THEORY)


def add_theory_command(subparsers: Any, parents: list[argparse.ArgumentParser]) -> None:
    """Add the theory subcommand."""
    parser = subparsers.add_parser(
        "theory",
        help="Analytical BEP curve of one link",
        description="""Evaluate the analytical bit error probability of a link.

Greedy detection gives exact curves (source theory-exact), or the simple
upper bound with --mode upper_bound (greedy RIS-SSK only). ML detection
gives the union bound (source theory-bound).

Examples:
    risim theory --scheme SSK --detector greedy -N 64 --n-r 4 --grid -32:1:-18
    risim theory --scheme SM --detector ML -N 128 --n-r 8 -M 4 --grid -40:1:-26
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
    parser.add_argument(
        "--mode",
        choices=("exact", "upper_bound"),
        default=argparse.SUPPRESS,
        help="Greedy RIS-SSK evaluation (default: exact)",
    )
    parser.set_defaults(func=cmd_theory)
