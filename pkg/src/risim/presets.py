"""
Figure presets.

Each preset lists the simulated and analytical curves of one published
figure. Presets are plain data; ``risim.cli.figure`` turns them into
simulation plans and theory requests.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CurveSpec:
    """One curve of a figure.

    ``grid`` is ``(start, step, stop)`` in dB. ``constellation`` is
    ``(kind, M)`` for RIS-SM.
    """

    source: str  # "sim" or "theory"
    scheme: str
    detector: str
    N: int
    n_R: int
    grid: tuple[float, float, float]
    constellation: tuple[str, int] | None = None
    kappa: float | None = None
    mode: str = "exact"


@dataclass(frozen=True)
class FigurePreset:
    id: str
    title: str
    curves: tuple[CurveSpec, ...]
    # Gap report pairs (a, b), as indices into ``curves``
    gap_pairs: tuple[tuple[int, int], ...] = ()
    target_bers: tuple[float, ...] = (1e-3, 1e-4)


SSK_GREEDY_64 = (-32.0, 1.0, -18.0)
SSK_GREEDY_128 = (-38.0, 1.0, -24.0)
SSK_ML_64 = (-34.0, 1.0, -20.0)
SSK_ML_128 = (-40.0, 1.0, -26.0)
SM_BPSK_64 = (-32.0, 1.0, -18.0)
SM_QPSK_64 = (-30.0, 1.0, -14.0)
SM_QAM16_128 = (-32.0, 1.0, -12.0)


PRESETS: dict[str, FigurePreset] = {
    "fig3": FigurePreset(
        id="fig3",
        title="Theoretical BEP of RIS-SSK and RIS-SM with ML detection and increasing n_R (N=128)",
        curves=(
            CurveSpec("theory", "SSK", "ML", 128, 2, SSK_ML_128),
            CurveSpec("theory", "SSK", "ML", 128, 4, SSK_ML_128),
            CurveSpec("theory", "SSK", "ML", 128, 8, SSK_ML_128),
            CurveSpec("theory", "SM", "ML", 128, 2, SSK_ML_128, ("QAM", 4)),
            CurveSpec("theory", "SM", "ML", 128, 4, SSK_ML_128, ("QAM", 4)),
            CurveSpec("theory", "SM", "ML", 128, 8, SSK_ML_128, ("QAM", 4)),
        ),
    ),
    "fig4": FigurePreset(
        id="fig4",
        title="RIS-SSK with greedy detection: simulation and theory",
        curves=(
            CurveSpec("sim", "SSK", "greedy", 64, 2, SSK_GREEDY_64),
            CurveSpec("theory", "SSK", "greedy", 64, 2, SSK_GREEDY_64),
            CurveSpec("sim", "SSK", "greedy", 64, 4, SSK_GREEDY_64),
            CurveSpec("theory", "SSK", "greedy", 64, 4, SSK_GREEDY_64),
            CurveSpec("sim", "SSK", "greedy", 128, 4, SSK_GREEDY_128),
            CurveSpec("theory", "SSK", "greedy", 128, 4, SSK_GREEDY_128),
            CurveSpec("sim", "SSK", "greedy", 128, 8, SSK_GREEDY_128),
            CurveSpec("theory", "SSK", "greedy", 128, 8, SSK_GREEDY_128),
        ),
    ),
    "fig5": FigurePreset(
        id="fig5",
        title="RIS-SM with greedy detection: simulation and theory",
        curves=(
            CurveSpec("sim", "SM", "greedy", 64, 2, SM_BPSK_64, ("PSK", 2)),
            CurveSpec("theory", "SM", "greedy", 64, 2, SM_BPSK_64, ("PSK", 2)),
            CurveSpec("sim", "SM", "greedy", 64, 2, SM_QPSK_64, ("QAM", 4)),
            CurveSpec("theory", "SM", "greedy", 64, 2, SM_QPSK_64, ("QAM", 4)),
            CurveSpec("sim", "SM", "greedy", 128, 2, SM_QAM16_128, ("QAM", 16)),
            CurveSpec("theory", "SM", "greedy", 128, 2, SM_QAM16_128, ("QAM", 16)),
        ),
    ),
    "fig6": FigurePreset(
        id="fig6",
        title="RIS-SSK and RIS-SM with ML detection: simulation and theory",
        curves=(
            CurveSpec("sim", "SSK", "ML", 64, 2, SSK_ML_64),
            CurveSpec("theory", "SSK", "ML", 64, 2, SSK_ML_64),
            CurveSpec("sim", "SSK", "ML", 64, 4, SSK_ML_64),
            CurveSpec("theory", "SSK", "ML", 64, 4, SSK_ML_64),
            CurveSpec("sim", "SM", "ML", 64, 2, SSK_ML_64, ("PSK", 2)),
            CurveSpec("theory", "SM", "ML", 64, 2, SSK_ML_64, ("PSK", 2)),
            CurveSpec("sim", "SM", "ML", 64, 2, SM_QPSK_64, ("QAM", 4)),
            CurveSpec("theory", "SM", "ML", 64, 2, SM_QPSK_64, ("QAM", 4)),
        ),
    ),
    "fig7": FigurePreset(
        id="fig7",
        title="Greedy versus ML detection",
        curves=(
            CurveSpec("sim", "SSK", "greedy", 64, 2, SSK_GREEDY_64),
            CurveSpec("sim", "SSK", "ML", 64, 2, SSK_GREEDY_64),
            CurveSpec("sim", "SSK", "greedy", 128, 8, SSK_GREEDY_128),
            CurveSpec("sim", "SSK", "ML", 128, 8, SSK_GREEDY_128),
            CurveSpec("sim", "SM", "greedy", 64, 2, SM_QPSK_64, ("QAM", 4)),
            CurveSpec("sim", "SM", "ML", 64, 2, SM_QPSK_64, ("QAM", 4)),
        ),
        gap_pairs=((0, 1), (2, 3), (4, 5)),
    ),
    "fig9": FigurePreset(
        id="fig9",
        title="RIS-SSK and RIS-SM with von Mises phase estimation errors",
        curves=(
            CurveSpec("sim", "SSK", "greedy", 64, 2, SSK_GREEDY_64),
            CurveSpec("sim", "SSK", "greedy", 64, 2, SSK_GREEDY_64, kappa=10.0),
            CurveSpec("sim", "SSK", "greedy", 64, 2, SSK_GREEDY_64, kappa=5.0),
            CurveSpec("sim", "SM", "greedy", 64, 2, SM_QPSK_64, ("QAM", 4)),
            CurveSpec("sim", "SM", "greedy", 64, 2, SM_QPSK_64, ("QAM", 4), kappa=10.0),
            CurveSpec("sim", "SM", "greedy", 64, 2, SM_QPSK_64, ("QAM", 4), kappa=5.0),
        ),
        gap_pairs=((1, 0), (2, 0), (4, 3), (5, 3)),
    ),
}

FIGURES = tuple(PRESETS)
