"""Job execution.

A job is first planned, which validates every setting and builds all
simulation plans and theory requests, and only then run. Nothing is written
when planning fails, and a numeric failure while running stops the job
before any file is written.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from ..montecarlo import SimPlan, run_sweep
from ..plot import matplotlib_available, plot_curves
from ..results import (
    converter,
    gap_report,
    gaps_path,
    group_curves,
    provenance,
    rows_from_sweep,
    rows_from_theory,
    write_gaps,
    write_rows,
)
from ..theory import TheoryRequest, evaluate
from .config import ConfigError, JobConfig, JobKind
from .utils import output_format, output_path, progress_printers, resolve_job

if TYPE_CHECKING:
    import argparse
    from collections.abc import Callable, Sequence
    from pathlib import Path

    from ..results import ResultRow

Task = SimPlan | TheoryRequest


@dataclass(frozen=True)
class JobPlan:
    """Validated work of a job.

    ``gap_pairs`` index into ``tasks``; None means every pair of curves.
    """

    cfg: JobConfig
    tasks: tuple[Task, ...]
    title: str
    gap_pairs: tuple[tuple[int, int], ...] | None = None
    target_bers: tuple[float, ...] = ()

    @property
    def wants_gaps(self) -> bool:
        return bool(self.target_bers) and len(self.tasks) > 1


def describe_task(task: Task) -> dict[str, Any]:
    """Metadata entry of one curve."""
    info: dict[str, Any] = {
        "label": task.label,
        "scheme": str(task.scheme),
        "detector": str(task.detector),
        "N": task.N,
        "n_R": task.n_R,
        "snr_grid_db": list(task.snr_grid_db),
    }
    if task.constellation is not None:
        info["constellation"] = task.constellation.to_dict()
    if isinstance(task, SimPlan):
        info.update(
            source="sim",
            kappa=task.kappa,
            seed=task.seed,
            min_bit_errors=task.stop.min_bit_errors,
            max_bits=task.stop.max_bits,
            chunk_uses=task.chunk_uses,
        )
    else:
        info.update(source=str(task.source), mode=str(task.mode))
    return info


def plan_job(cfg: JobConfig) -> JobPlan:
    """
    Validate a job and build its work.

    Raises:
        ConfigError: On missing or inconsistent settings
        ParameterError: On parameters the library rejects
    """
    from .compare import plan_compare  # noqa: PLC0415
    from .figure import plan_figure  # noqa: PLC0415
    from .simulate import plan_simulate  # noqa: PLC0415
    from .theory_cmd import plan_theory  # noqa: PLC0415

    planners = {
        JobKind.SIMULATE: plan_simulate,
        JobKind.THEORY: plan_theory,
        JobKind.COMPARE: plan_compare,
        JobKind.FIGURE: plan_figure,
    }
    output_format(cfg)
    if cfg.svg is not None and not matplotlib_available():
        msg = "SVG output requires matplotlib. Install with: pip install risim[plot]"
        raise ConfigError(msg)
    plan = planners[cfg.kind](cfg)
    check_distinct_curves(plan.tasks)
    return plan


def _curve_key(task: Task) -> tuple[Any, ...]:
    # Mirrors ResultRow.curve_key
    if isinstance(task, SimPlan):
        source, kappa = "sim", task.kappa
    else:
        source, kappa = str(task.source), None
    M = task.constellation.M if task.constellation is not None else None
    return (source, str(task.scheme), str(task.detector), task.N, task.n_R, M, kappa)


def check_distinct_curves(tasks: Sequence[Task]) -> None:
    """
    Reject tasks whose result rows could not be told apart.

    Rows are keyed by source, scheme, detector, N, n_R, M and kappa, so two
    curves differing only in constellation kind or seed would merge.

    Raises:
        ConfigError: If two tasks share a key
    """
    seen: dict[tuple[Any, ...], Task] = {}
    for task in tasks:
        key = _curve_key(task)
        if key in seen:
            msg = (
                f"Curves '{seen[key].label}' and '{task.label}' would share result rows "
                "(same scheme, detector, N, n_R, M and kappa)"
            )
            raise ConfigError(msg)
        seen[key] = task


def run_task(
    task: Task,
    *,
    workers: int = 1,
    on_progress: Callable[[str], None] | None = None,
    on_chunk: Callable[[str], None] | None = None,
) -> list[ResultRow]:
    if isinstance(task, SimPlan):
        return rows_from_sweep(run_sweep(task, workers=workers, on_progress=on_progress, on_chunk=on_chunk))
    curve = evaluate(task, on_progress=on_progress)
    for warning in curve.warnings:
        print(f"Warning: {warning}", file=sys.stderr)
    return rows_from_theory(curve)


def run_job(
    cfg: JobConfig,
    *,
    on_progress: Callable[[str], None] | None = None,
    on_chunk: Callable[[str], None] | None = None,
    show_provenance: bool = False,
) -> list[Path]:
    """
    Plan, run and write a job.

    Args:
        cfg: Resolved job configuration
        on_progress: Optional callback for per-point progress messages
        on_chunk: Optional callback for per-chunk Monte Carlo messages
        show_provenance: Print the output metadata to stderr

    Returns:
        Paths of the files written: results, then gap report and SVG when
        produced

    Raises:
        ConfigError, ParameterError: If the job is invalid (nothing is written)
        NumericError: If a theory point fails (nothing is written)
    """
    plan = plan_job(cfg)
    out = output_path(cfg)
    fmt = output_format(cfg)

    rows: list[ResultRow] = []
    labels: list[str] = []
    for task in plan.tasks:
        task_rows = run_task(task, workers=cfg.workers or 1, on_progress=on_progress, on_chunk=on_chunk)
        rows.extend(task_rows)
        labels.append(task_rows[0].curve_label)

    metadata = provenance(
        job=str(cfg.kind),
        title=plan.title,
        config=converter.unstructure(cfg),
        curves=[describe_task(task) for task in plan.tasks],
    )
    if show_provenance:
        for key, value in metadata.items():
            print(f"# {key}: {value}", file=sys.stderr)

    written = [out]
    write_rows(out, rows, metadata, fmt=fmt)

    if plan.wants_gaps:
        pairs = None if plan.gap_pairs is None else [(labels[a], labels[b]) for a, b in plan.gap_pairs]
        report = gap_report(group_curves(rows), plan.target_bers, pairs)
        gaps = gaps_path(out)
        write_gaps(gaps, report)
        written.append(gaps)
        if on_progress:
            for row in report:
                gap = "n/a" if row.gap_db is None else f"{row.gap_db:.2f} dB"
                on_progress(f"BER {row.target_ber:g}: {row.curve_a} vs {row.curve_b}: {gap}")

    if cfg.svg is not None:
        written.append(plot_curves(rows, cfg.svg, title=plan.title))

    if on_progress:
        for path in written:
            on_progress(f"Wrote {path}")
    return written


def run_command(args: argparse.Namespace, kind: JobKind) -> list[Path]:
    """Resolve the job of a subcommand and run it with the requested verbosity."""
    on_progress, on_chunk = progress_printers(args)
    return run_job(
        resolve_job(args, kind),
        on_progress=on_progress,
        on_chunk=on_chunk,
        show_provenance=(getattr(args, "verbose", 0) or 0) >= 2,
    )
