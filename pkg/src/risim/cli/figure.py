"""Figure command functionality.

This module expands a figure preset into its simulated and analytical
curves and writes them as one bundle.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING, Any

from ..modulation import build_constellation
from ..montecarlo import SimPlan, StopRule
from ..presets import FIGURES, PRESETS
from ..theory import TheoryRequest, snr_grid
from .config import ConfigError, JobKind, resolve_grid
from .jobs import JobPlan, run_command

if TYPE_CHECKING:
    from ..presets import CurveSpec
    from .config import JobConfig
    from .jobs import Task


def expand_curve(spec: CurveSpec, cfg: JobConfig) -> Task:
    """
    Plan or request of one preset curve.

    The seed, stop rule and, when set, the grid come from ``cfg``.
    """
    link = cfg.link
    grid = resolve_grid(link) if link.grid is not None or link.snr_grid_db else snr_grid(*spec.grid)
    constellation = build_constellation(*spec.constellation, link.Es) if spec.constellation else None
    if spec.source == "theory":
        return TheoryRequest(
            scheme=spec.scheme,
            detector=spec.detector,
            N=spec.N,
            n_R=spec.n_R,
            snr_grid_db=grid,
            constellation=constellation,
            mode=spec.mode,
        )
    return SimPlan(
        scheme=spec.scheme,
        detector=spec.detector,
        N=spec.N,
        n_R=spec.n_R,
        snr_grid_db=grid,
        constellation=constellation,
        kappa=spec.kappa,
        seed=link.seed,
        stop=StopRule(cfg.stop.min_bit_errors, cfg.stop.max_bits),
        chunk_uses=cfg.stop.chunk_uses,
    )


def plan_figure(cfg: JobConfig) -> JobPlan:
    if cfg.figure is None:
        msg = f"Missing figure id. Choose from: {', '.join(FIGURES)}."
        raise ConfigError(msg)
    preset = PRESETS.get(cfg.figure)
    if preset is None:
        msg = f"Unknown figure '{cfg.figure}'. Choose from: {', '.join(FIGURES)}."
        raise ConfigError(msg)
    return JobPlan(
        cfg=cfg,
        tasks=tuple(expand_curve(spec, cfg) for spec in preset.curves),
        title=preset.title,
        gap_pairs=preset.gap_pairs,
        target_bers=preset.target_bers if preset.gap_pairs else (),
    )


def cmd_figure(args: argparse.Namespace) -> None:
    """Handle the figure command."""
    run_command(args, JobKind.FIGURE)


def add_figure_command(subparsers: Any, parents: list[argparse.ArgumentParser]) -> None:
    """Add the figure subcommand."""
    lines = "\n".join(f"    {fig_id}  {PRESETS[fig_id].title}" for fig_id in FIGURES)
    parser = subparsers.add_parser(
        "figure",
        help="Curves of a published figure preset",
        description=f"""Run every curve of a figure preset and write them as one file.

Presets:
{lines}

Presets with paired curves also write an SNR gap report.

Examples:
    risim figure fig4 --seed 1 --workers 4
    risim figure fig7 --out fig7.csv --svg fig7.svg
    risim figure fig3 --grid -40:2:-26
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=parents,
    )
    parser.add_argument(
        "figure",
        nargs="?",
        choices=FIGURES,
        default=None,
        metavar="FIGURE",
        help=f"Figure preset ({', '.join(FIGURES)})",
    )
    parser.set_defaults(func=cmd_figure)
