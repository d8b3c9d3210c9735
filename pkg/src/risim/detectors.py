"""
The four receivers: greedy and maximum-likelihood detection for RIS-SSK
and RIS-SM.

Each receiver exists twice. The ``*_batch`` kernels take received vectors
with a leading batch axis, ``r`` of shape ``(T, n_R)``, return 0-based
antenna indices (and symbol labels) and are what the Monte Carlo engine
runs. The single-vector operations wrap them and return a
:class:`Decision` with the 1-based antenna index.

Ties go to the lowest antenna index, then the lowest symbol label, which
is what ``argmax``/``argmin`` do on the first occurrence.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .exceptions import ConfigurationError, DimensionError

if TYPE_CHECKING:
    from .channel import ChannelRealization
    from .modulation import Constellation


class Scheme(enum.StrEnum):
    SSK = "SSK"
    SM = "SM"


class Detector(enum.StrEnum):
    GREEDY = "greedy"
    ML = "ML"


@dataclass(frozen=True)
class Decision:
    """Outcome of one detection.

    Attributes:
        m_hat: Detected receive antenna, 1-based
        x_hat: Detected symbol, None for RIS-SSK
        metric: Score of the winning hypothesis (energy for greedy antenna
            detection, squared residual for ML)
        hypotheses: Number of hypothesis metrics evaluated
    """

    m_hat: int
    x_hat: complex | None
    metric: float
    hypotheses: int


# Batch kernels


def greedy_ssk_batch(r: np.ndarray) -> np.ndarray:
    """Antenna with the highest received energy, per row."""
    return np.argmax(np.abs(r) ** 2, axis=-1)


def ml_ssk_metrics(r: np.ndarray, H: np.ndarray, es: float) -> np.ndarray:  # noqa: N803
    """Residuals ``sum_l |r_l - sqrt(Es) H[l, m]|^2`` for every hypothesis ``m``.

    Args:
        r: Received vectors ``(T, n_R)``
        H: Hypothesis signal matrices ``(T, n_R, n_R)`` (see
            :func:`risim.channel.cross_gains`)
        es: Symbol energy
    """
    residual = r[..., :, None] - math.sqrt(es) * H
    return np.sum(np.abs(residual) ** 2, axis=-2)


def ml_ssk_batch(r: np.ndarray, H: np.ndarray, es: float) -> np.ndarray:  # noqa: N803
    return np.argmin(ml_ssk_metrics(r, H, es), axis=-1)


def greedy_sm_batch(
    r: np.ndarray, c: Constellation, amplitudes: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Sequential antenna-then-symbol detection.

    The antenna is the one with the highest energy. The symbol is then the
    nearest point to ``r[m_hat]`` after scaling the constellation by the
    aligned gain of that antenna (QAM), or to the unscaled constellation
    (PSK, where the decision does not depend on the gain).

    Args:
        r: Received vectors ``(T, n_R)``
        c: Constellation
        amplitudes: Per-antenna aligned gains ``sum_i beta[l, i]``, shape
            ``(T, n_R)``; required for QAM, ignored for PSK

    Returns:
        0-based antennas ``(T,)`` and symbol labels ``(T,)``
    """
    antennas = greedy_ssk_batch(r)
    selected = np.take_along_axis(r, antennas[..., None], axis=-1)
    if c.constant_envelope:
        candidates = np.broadcast_to(c.points, (*selected.shape[:-1], c.M))
    else:
        if amplitudes is None:
            msg = "Greedy RIS-SM detection of QAM symbols needs the channel amplitudes"
            raise ConfigurationError(msg)
        gain = np.take_along_axis(amplitudes, antennas[..., None], axis=-1)
        candidates = gain * c.points
    labels = np.argmin(np.abs(selected - candidates) ** 2, axis=-1)
    return antennas, labels


def ml_sm_metrics(r: np.ndarray, H: np.ndarray, c: Constellation) -> np.ndarray:  # noqa: N803
    """Residuals for every ``(m, x)`` hypothesis, shape ``(T, n_R, M)``."""
    signals = H[..., :, :, None] * c.points  # (T, l, m, k)
    residual = r[..., :, None, None] - signals
    return np.sum(np.abs(residual) ** 2, axis=-3)


def ml_sm_batch(
    r: np.ndarray, H: np.ndarray, c: Constellation  # noqa: N803
) -> tuple[np.ndarray, np.ndarray]:
    """Joint search over all ``n_R * M`` hypotheses."""
    metrics = ml_sm_metrics(r, H, c)
    flat = metrics.reshape(*metrics.shape[:-2], -1)
    best = np.argmin(flat, axis=-1)
    return np.divmod(best, c.M)


# Single-vector operations


def _received(r: np.ndarray | list[complex]) -> np.ndarray:
    r = np.asarray(r, dtype=np.complex128)
    if r.ndim != 1 or r.size == 0:
        msg = f"Received vector must be a non-empty 1-D array, got shape {r.shape}"
        raise DimensionError(msg)
    return r


def _check_length(r: np.ndarray, n_R: int) -> None:  # noqa: N803
    if r.size != n_R:
        msg = f"Received vector has {r.size} entries, channel has n_R={n_R}"
        raise DimensionError(msg)


def greedy_ssk(r: np.ndarray | list[complex]) -> Decision:
    """Detect the antenna with the highest instantaneous energy.

    Needs no channel state at all.

    Examples:
        >>> greedy_ssk([3 + 0j, 1 + 0j]).m_hat
        1
    """
    r = _received(r)
    m = int(greedy_ssk_batch(r[None])[0])
    return Decision(m + 1, None, float(abs(r[m]) ** 2), r.size)


def ml_ssk(r: np.ndarray | list[complex], ch: ChannelRealization, Es: float = 1.0) -> Decision:  # noqa: N803
    """Coherent RIS-SSK detection using the full channel."""
    r = _received(r)
    _check_length(r, ch.n_R)
    metrics = ml_ssk_metrics(r[None], ch.cross_gains[None], Es)[0]
    m = int(np.argmin(metrics))
    return Decision(m + 1, None, float(metrics[m]), ch.n_R)


def greedy_sm(
    r: np.ndarray | list[complex],
    amplitudes: np.ndarray | list[float] | None,
    c: Constellation,
) -> Decision:
    """Greedy RIS-SM detection: antenna by energy, then the symbol.

    Raises:
        ConfigurationError: For QAM when ``amplitudes`` is None
    """
    r = _received(r)
    amps = None
    if amplitudes is not None and not c.constant_envelope:
        amps = np.asarray(amplitudes, dtype=float)
        _check_length(amps, r.size)
        amps = amps[None]
    antennas, labels = greedy_sm_batch(r[None], c, amps)
    m, k = int(antennas[0]), int(labels[0])
    return Decision(m + 1, complex(c.points[k]), float(abs(r[m]) ** 2), r.size + c.M)


def ml_sm(r: np.ndarray | list[complex], ch: ChannelRealization, c: Constellation) -> Decision:
    """Joint ML search over every (antenna, symbol) pair."""
    r = _received(r)
    _check_length(r, ch.n_R)
    metrics = ml_sm_metrics(r[None], ch.cross_gains[None], c)[0]
    m, k = np.unravel_index(int(np.argmin(metrics)), metrics.shape)
    return Decision(int(m) + 1, complex(c.points[k]), float(metrics[m, k]), ch.n_R * c.M)
