"""Common CLI utilities.

This module resolves the job configuration of a command from its config
file, flags and environment, and builds simulation plans and theory
requests from it.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from ..detectors import Scheme
from ..modulation import Kind, build_constellation
from ..montecarlo import SimPlan, StopRule
from ..results import FORMATS
from ..theory import TheoryRequest
from .config import ConfigError, JobConfig, JobKind, LinkConfig, apply_overrides, load_config, resolve_grid

if TYPE_CHECKING:
    import argparse
    from collections.abc import Callable

    from ..modulation import Constellation

# Flag destinations that map onto JobConfig fields
OVERRIDES = (
    "out",
    "format",
    "figure",
    "svg",
    "workers",
    "scheme",
    "detector",
    "N",
    "n_R",
    "constellation",
    "M",
    "Es",
    "kappa",
    "grid",
    "seed",
    "min_bit_errors",
    "max_bits",
    "chunk_uses",
    "mode",
    "detectors",
    "target_bers",
    "theory",
)


def find_workers() -> int | None:
    """
    Worker count from the RISIM_WORKERS environment variable.

    Raises:
        ConfigError: If the variable is set but not a positive integer
    """
    value = os.environ.get("RISIM_WORKERS")
    if not value:
        return None
    try:
        workers = int(value)
    except ValueError:
        workers = 0
    if workers < 1:
        msg = f"RISIM_WORKERS must be a positive integer, got '{value}'"
        raise ConfigError(msg)
    return workers


def resolve_job(args: argparse.Namespace, kind: JobKind) -> JobConfig:
    """
    Resolve the configuration of a command.

    Resolution order, highest first:
    1. Command-line flags
    2. Config file given with -c/--config
    3. RISIM_WORKERS environment variable (worker count only)
    4. Defaults
    """
    cfg = load_config(getattr(args, "config", None))
    overrides: dict[str, Any] = {name: getattr(args, name, None) for name in OVERRIDES}
    overrides["kind"] = kind
    cfg = apply_overrides(cfg, overrides)
    if cfg.workers is None:
        cfg = apply_overrides(cfg, {"workers": find_workers() or 1})
    if cfg.workers is not None and cfg.workers < 1:
        msg = f"workers must be >= 1, got {cfg.workers}"
        raise ConfigError(msg)
    return cfg


def output_format(cfg: JobConfig) -> str:
    """Format from ``format``, else from the output suffix, else CSV."""
    fmt = cfg.format
    if fmt is None:
        fmt = "json" if cfg.out is not None and Path(cfg.out).suffix == ".json" else "csv"
    if fmt not in FORMATS:
        msg = f"Invalid format '{fmt}'. Must be one of: {', '.join(FORMATS)}."
        raise ConfigError(msg)
    return fmt


def output_path(cfg: JobConfig) -> Path:
    if cfg.out is not None:
        return Path(cfg.out)
    stem = cfg.figure if cfg.kind is JobKind.FIGURE and cfg.figure else f"risim-{cfg.kind}"
    return Path(f"{stem}.{output_format(cfg)}")


def _require(link: LinkConfig, name: str, flag: str) -> Any:
    value = getattr(link, name)
    if value is None:
        msg = f"Missing required setting link.{name} ({flag})"
        raise ConfigError(msg)
    return value


def link_constellation(link: LinkConfig) -> Constellation | None:
    """
    The constellation of an RIS-SM link, None for RIS-SSK.

    The kind defaults to PSK for M = 2 and QAM otherwise.
    """
    scheme = Scheme(_require(link, "scheme", "--scheme"))
    if scheme is Scheme.SSK:
        if link.M is not None or link.constellation is not None:
            msg = "RIS-SSK takes no constellation; remove link.M and link.constellation"
            raise ConfigError(msg)
        return None
    M = _require(link, "M", "-M")  # noqa: N806
    kind = link.constellation or (Kind.PSK if M == 2 else Kind.QAM)
    return build_constellation(kind, M, link.Es)


def sim_plan(cfg: JobConfig, detector: str | None = None) -> SimPlan:
    """Simulation plan of the configured link, optionally for another detector."""
    link = cfg.link
    return SimPlan(
        scheme=_require(link, "scheme", "--scheme"),
        detector=detector or _require(link, "detector", "--detector"),
        N=_require(link, "N", "-N"),
        n_R=_require(link, "n_R", "--n-r"),
        snr_grid_db=resolve_grid(link),
        constellation=link_constellation(link),
        kappa=link.kappa,
        seed=link.seed,
        stop=StopRule(cfg.stop.min_bit_errors, cfg.stop.max_bits),
        chunk_uses=cfg.stop.chunk_uses,
    )


def theory_request(cfg: JobConfig, detector: str | None = None) -> TheoryRequest:
    """Theory request of the configured link, optionally for another detector."""
    link = cfg.link
    return TheoryRequest(
        scheme=_require(link, "scheme", "--scheme"),
        detector=detector or _require(link, "detector", "--detector"),
        N=_require(link, "N", "-N"),
        n_R=_require(link, "n_R", "--n-r"),
        snr_grid_db=resolve_grid(link),
        constellation=link_constellation(link),
        mode=cfg.theory.mode,
    )


def progress_printers(
    args: argparse.Namespace,
) -> tuple[Callable[[str], None] | None, Callable[[str], None] | None]:
    """
    Progress callbacks for ``-q`` / default / ``-v``.

    Returns:
        ``(on_progress, on_chunk)``; per-chunk detail needs -v
    """
    if getattr(args, "quiet", False):
        return None, None

    def on_progress(message: str) -> None:
        print(message, file=sys.stderr)

    verbose = getattr(args, "verbose", 0) or 0
    return on_progress, on_progress if verbose >= 1 else None
