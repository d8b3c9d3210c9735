"""Seeding and random stream derivation.

All randomness goes through :class:`numpy.random.Generator` instances backed by
the counter-based Philox bit generator. Streams for one chunk of Monte Carlo
trials are derived from ``SeedSequence([seed, point_key, chunk_index, purpose])``
so that any partition of the work into chunks, and any number of workers,
reproduces the same draws.
"""

from __future__ import annotations

import enum

import numpy as np

_U64 = (1 << 64) - 1


class Purpose(enum.IntEnum):
    """Independent sub-streams of a chunk."""

    LINK = 0  # channel gains and information bits
    PHASE_ERROR = 1
    NOISE = 2


def make_rng(seed: int | np.random.SeedSequence | None = None) -> np.random.Generator:
    """Return a Philox-backed generator for ``seed``."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def point_key(snr_db: float) -> int:
    """Map an SNR in dB to the unsigned 64-bit key used for seeding.

    The key is the SNR rounded to integer milli-dB, in two's complement, so
    the streams of a grid point depend on its SNR value and not on its
    position in a grid.
    """
    return round(snr_db * 1000) & _U64


def chunk_streams(
    seed: int, snr_db: float, chunk_index: int
) -> dict[Purpose, np.random.Generator]:
    """Return the independent generators of one trial chunk."""
    base = [seed & _U64, point_key(snr_db), chunk_index]
    return {
        purpose: make_rng(np.random.SeedSequence([*base, int(purpose)]))
        for purpose in Purpose
    }
