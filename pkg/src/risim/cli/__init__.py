"""
risim Command Line Interface

Commands:
    simulate  Monte Carlo BER sweep of one link
    theory    Analytical BEP curve of one link
    compare   Detectors side by side, with SNR gap report
    figure    Curves of a published figure preset

Examples:
    risim simulate --scheme SSK --detector greedy -N 64 --n-r 2 --grid -30:1:-20
    risim theory --scheme SM --detector ML -N 64 --n-r 2 -M 4 --grid -30:1:-14
    risim compare -c job.toml
    RISIM_WORKERS=8 risim figure fig4 --seed 1

Exit status is 0 on success, 2 for an invalid configuration and 3 when a
theory curve fails numerically. No result file is written in either error
case.
"""

from __future__ import annotations

import sys

from ..exceptions import NumericError, RisimError
from ..results import ResultFileError
from .compare import add_compare_command, cmd_compare, plan_compare
from .config import (
    ConfigError,
    CompareConfig,
    JobConfig,
    JobKind,
    LinkConfig,
    StopConfig,
    TheoryConfig,
    apply_overrides,
    load_config,
    parse_config,
    parse_grid,
)
from .figure import add_figure_command, cmd_figure, expand_curve, plan_figure
from .jobs import JobPlan, check_distinct_curves, describe_task, plan_job, run_command, run_job
from .parser import create_parser
from .simulate import add_simulate_command, cmd_simulate, plan_simulate
from .theory_cmd import add_theory_command, cmd_theory, plan_theory
from .utils import (
    find_workers,
    link_constellation,
    output_format,
    output_path,
    resolve_job,
    sim_plan,
    theory_request,
)

EXIT_CONFIG = 2
EXIT_NUMERIC = 3

__all__ = [
    "EXIT_CONFIG",
    "EXIT_NUMERIC",
    "CompareConfig",
    "ConfigError",
    "JobConfig",
    "JobKind",
    "JobPlan",
    "LinkConfig",
    "StopConfig",
    "TheoryConfig",
    "add_compare_command",
    "add_figure_command",
    "add_simulate_command",
    "add_theory_command",
    "apply_overrides",
    "check_distinct_curves",
    "cmd_compare",
    "cmd_figure",
    "cmd_simulate",
    "cmd_theory",
    "create_parser",
    "describe_task",
    "expand_curve",
    "find_workers",
    "link_constellation",
    "load_config",
    "main",
    "output_format",
    "output_path",
    "parse_config",
    "parse_grid",
    "plan_compare",
    "plan_figure",
    "plan_job",
    "plan_simulate",
    "plan_theory",
    "resolve_job",
    "run_command",
    "run_job",
    "sim_plan",
    "theory_request",
]


def main(argv: list[str] | None = None) -> None:
    """Main CLI entry point.

    Args:
        argv: Command line arguments. If None, uses sys.argv.
    """
    parser = create_parser()
    args = parser.parse_args(argv)

    # Show help if no command provided
    if not hasattr(args, "func"):
        parser.print_help()
        return

    try:
        args.func(args)
    except NumericError as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_NUMERIC)
    except (ConfigError, RisimError, ResultFileError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)
