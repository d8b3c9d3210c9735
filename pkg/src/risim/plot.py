"""
Static SVG plots of result curves.

Requires the ``plot`` extra (matplotlib), imported on first use.
"""

from __future__ import annotations

import importlib.util
from pathlib import Path
from typing import TYPE_CHECKING

from .results import group_curves

if TYPE_CHECKING:
    from collections.abc import Iterable

    from .results import ResultRow


def matplotlib_available() -> bool:
    return importlib.util.find_spec("matplotlib") is not None


def plot_curves(rows: Iterable[ResultRow], path: Path | str, *, title: str | None = None) -> Path:
    """
    Overlay all curves of ``rows`` on a log-BER axis and save as SVG.

    Simulated curves are drawn as markers with their confidence intervals,
    analytical curves as lines. Points with zero BER are left out.

    Raises:
        ImportError: If matplotlib is not installed
    """
    try:
        import matplotlib  # noqa: PLC0415
    except ImportError as e:
        msg = "SVG output requires matplotlib. Install with: pip install risim[plot]"
        raise ImportError(msg) from e

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt  # noqa: PLC0415

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for label, points in group_curves(rows).items():
        shown = [p for p in points if p.ber > 0]
        if not shown:
            continue
        snr = [p.snr_db for p in shown]
        ber = [p.ber for p in shown]
        if shown[0].source == "sim":
            lower = [p.ber - (p.ci_lo or p.ber) for p in shown]
            upper = [(p.ci_hi or p.ber) - p.ber for p in shown]
            ax.errorbar(snr, ber, yerr=[lower, upper], fmt="o", markersize=4, capsize=2, label=label)
        else:
            linestyle = "--" if shown[0].source == "theory-bound" else "-"
            ax.plot(snr, ber, linestyle=linestyle, label=label)

    ax.set_yscale("log")
    ax.set_xlabel("Es/N0 (dB)")
    ax.set_ylabel("BER")
    if title:
        ax.set_title(title, fontsize="medium")
    ax.grid(visible=True, which="both", alpha=0.3)
    ax.legend(fontsize="x-small")

    path = Path(path)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    return path
