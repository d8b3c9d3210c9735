"""
Monte Carlo bit error rate simulation.

Every channel use draws a fresh channel, fresh information bits, aligns the
RIS on the selected antenna (optionally with von Mises phase errors), adds
noise, detects and counts bit errors over the full frame.

Uses are grouped in fixed-size chunks. Chunk ``k`` of the point at
``snr_db`` always draws from the streams ``chunk_streams(seed, snr_db, k)``
and chunks are aggregated in index order, stopping at the first chunk
after which the stop rule holds. A record is therefore a pure function of
``(plan, snr_db)``, whatever the number of workers or the way a grid is
split across runs.

Examples:
    plan = SimPlan("SSK", "greedy", N=64, n_R=2, snr_grid_db=(-25.0, -22.0), seed=1)
    curve = run_sweep(plan, workers=4, on_progress=print)
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from scipy import stats

from .channel import (
    complex_noise,
    cross_gains,
    effective_gains,
    is_power_of_two,
    phase_errors,
    sample_gains,
    select_phases,
)
from .detectors import (
    Detector,
    Scheme,
    greedy_sm_batch,
    greedy_ssk_batch,
    ml_sm_batch,
    ml_ssk_batch,
)
from .exceptions import ParameterError
from .modulation import bits_per_use, bits_to_indices, indices_to_bits
from .rng import Purpose, chunk_streams

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

    from .modulation import Constellation

CHUNK_USES = 2048
DEFAULT_MIN_BIT_ERRORS = 200
DEFAULT_MAX_BITS = 10**8
CONFIDENCE = 0.95


@dataclass(frozen=True)
class StopRule:
    """Stop a point at ``min_bit_errors`` errors or ``max_bits`` bits."""

    min_bit_errors: int = DEFAULT_MIN_BIT_ERRORS
    max_bits: int = DEFAULT_MAX_BITS


@dataclass(frozen=True)
class SimPlan:
    """A simulation sweep.

    Attributes:
        scheme: RIS-SSK or RIS-SM
        detector: Greedy or ML receiver
        N: Number of reflectors
        n_R: Number of receive antennas
        snr_grid_db: Es/N0 values in dB
        constellation: Symbol constellation (RIS-SM only)
        kappa: Von Mises concentration of the phase errors, None for
            perfect phases
        seed: Master seed
        stop: Stop rule applied at each point
        chunk_uses: Channel uses per chunk
    """

    scheme: Scheme
    detector: Detector
    N: int
    n_R: int
    snr_grid_db: tuple[float, ...]
    constellation: Constellation | None = None
    kappa: float | None = None
    seed: int = 0
    stop: StopRule = field(default_factory=StopRule)
    chunk_uses: int = CHUNK_USES

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "detector", Detector(self.detector))
        object.__setattr__(self, "snr_grid_db", tuple(float(v) for v in self.snr_grid_db))
        if self.kappa is not None and math.isinf(self.kappa):
            object.__setattr__(self, "kappa", None)

        if not self.snr_grid_db:
            msg = "SNR grid must not be empty"
            raise ParameterError(msg)
        if self.N < 1:
            msg = f"N must be >= 1, got {self.N}"
            raise ParameterError(msg)
        if not is_power_of_two(self.n_R) or self.n_R < 2:
            msg = f"n_R must be a power of two >= 2, got {self.n_R}"
            raise ParameterError(msg)
        if (self.scheme is Scheme.SM) != (self.constellation is not None):
            msg = "A constellation is required for RIS-SM and not allowed for RIS-SSK"
            raise ParameterError(msg)
        if self.kappa is not None and not self.kappa >= 0:
            msg = f"kappa must be >= 0, got {self.kappa}"
            raise ParameterError(msg)
        if self.stop.min_bit_errors < 1:
            msg = f"min_bit_errors must be >= 1, got {self.stop.min_bit_errors}"
            raise ParameterError(msg)
        if self.stop.max_bits < self.bits_per_use:
            msg = f"max_bits must be >= {self.bits_per_use} (one channel use), got {self.stop.max_bits}"
            raise ParameterError(msg)
        if self.chunk_uses < 1:
            msg = f"chunk_uses must be >= 1, got {self.chunk_uses}"
            raise ParameterError(msg)

    @property
    def M(self) -> int | None:  # noqa: N802
        return self.constellation.M if self.constellation is not None else None

    @property
    def es(self) -> float:
        return self.constellation.Es if self.constellation is not None else 1.0

    @property
    def bits_per_use(self) -> int:
        return bits_per_use(self.n_R, self.constellation)

    @property
    def max_uses(self) -> int:
        return self.stop.max_bits // self.bits_per_use

    @property
    def label(self) -> str:
        parts = [f"{self.scheme}-{self.detector}", f"N={self.N}", f"n_R={self.n_R}"]
        if self.constellation is not None:
            parts.append(f"{self.constellation.M}-{self.constellation.kind}")
        if self.kappa is not None:
            parts.append(f"kappa={self.kappa:g}")
        return " ".join(parts)


@dataclass(frozen=True)
class BerRecord:
    """Simulated bit error rate at one SNR."""

    snr_db: float
    bits_sent: int
    bit_errors: int
    ci_lo: float
    ci_hi: float
    wall_seconds: float = 0.0
    exhausted: bool = False  # max_bits reached before min_bit_errors

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_sent

    @property
    def wilson_ci_95(self) -> tuple[float, float]:
        return self.ci_lo, self.ci_hi


@dataclass(frozen=True)
class BerCurve:
    """One record per grid point, in grid order."""

    plan: SimPlan
    records: tuple[BerRecord, ...]

    def __iter__(self) -> Iterator[BerRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)


def wilson_interval(errors: int, bits: int, confidence: float = CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval of the bit error probability."""
    ci = stats.binomtest(errors, bits).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def simulate_chunk(plan: SimPlan, snr_db: float, chunk_index: int, uses: int) -> tuple[int, int]:
    """Run ``uses`` channel uses; return ``(bits_sent, bit_errors)``."""
    streams = chunk_streams(plan.seed, snr_db, chunk_index)
    link = streams[Purpose.LINK]
    c = plan.constellation

    gains = sample_gains(link, uses, plan.n_R, plan.N)
    bits = link.integers(0, 2, size=(uses, plan.bits_per_use), dtype=np.int64)
    antennas, labels = bits_to_indices(bits, plan.n_R, plan.M)

    phases = select_phases(gains, antennas)
    if plan.kappa is not None:
        phases = phases + phase_errors(streams[Purpose.PHASE_ERROR], plan.kappa, phases.shape)

    x = c.points[labels] if c is not None else np.full(uses, math.sqrt(plan.es))
    signal = effective_gains(gains, phases) * x[:, None]
    n0 = plan.es / 10.0 ** (snr_db / 10.0)
    r = signal + complex_noise(streams[Purpose.NOISE], n0, signal.shape)

    # Coherent receivers know the channel but not the phase errors
    if plan.scheme is Scheme.SSK:
        if plan.detector is Detector.GREEDY:
            antennas_hat = greedy_ssk_batch(r)
        else:
            antennas_hat = ml_ssk_batch(r, cross_gains(gains), plan.es)
        labels_hat = labels
    else:
        assert c is not None
        if plan.detector is Detector.GREEDY:
            amplitudes = np.abs(gains).sum(axis=-1)
            antennas_hat, labels_hat = greedy_sm_batch(r, c, amplitudes)
        else:
            antennas_hat, labels_hat = ml_sm_batch(r, cross_gains(gains), c)

    bits_hat = indices_to_bits(antennas_hat, labels_hat, plan.n_R, plan.M)
    return bits.size, int(np.count_nonzero(bits_hat != bits))


def run_point(
    plan: SimPlan,
    snr_db: float,
    *,
    workers: int = 1,
    on_progress: Callable[[str], None] | None = None,
) -> BerRecord:
    """Simulate one SNR until the stop rule holds.

    Args:
        plan: Simulation plan
        snr_db: Es/N0 in dB
        workers: Number of chunks run concurrently
        on_progress: Optional callback for per-chunk progress messages

    Returns:
        The record; ``exhausted`` is set when max_bits was reached first
    """
    started = time.perf_counter()
    max_uses = plan.max_uses
    n_chunks = math.ceil(max_uses / plan.chunk_uses)
    workers = max(1, workers)

    def chunk(k: int) -> tuple[int, int]:
        uses = min(plan.chunk_uses, max_uses - k * plan.chunk_uses)
        return simulate_chunk(plan, snr_db, k, uses)

    bits = errors = 0
    done = False
    with ThreadPoolExecutor(max_workers=workers) as executor:
        for wave_start in range(0, n_chunks, workers):
            wave = range(wave_start, min(wave_start + workers, n_chunks))
            for k, (chunk_bits, chunk_errors) in zip(wave, executor.map(chunk, wave), strict=True):
                bits += chunk_bits
                errors += chunk_errors
                if on_progress:
                    on_progress(f"  chunk {k}: {errors} errors in {bits} bits")
                if errors >= plan.stop.min_bit_errors or bits >= plan.stop.max_bits:
                    done = True
                    break
            if done:
                break

    ci_lo, ci_hi = wilson_interval(errors, bits)
    return BerRecord(
        snr_db=snr_db,
        bits_sent=bits,
        bit_errors=errors,
        ci_lo=ci_lo,
        ci_hi=ci_hi,
        wall_seconds=time.perf_counter() - started,
        exhausted=errors < plan.stop.min_bit_errors,
    )


def run_sweep(
    plan: SimPlan,
    *,
    workers: int = 1,
    on_progress: Callable[[str], None] | None = None,
    on_chunk: Callable[[str], None] | None = None,
) -> BerCurve:
    """Simulate every grid point of ``plan``, in grid order."""
    records = []
    for snr_db in plan.snr_grid_db:
        record = run_point(plan, snr_db, workers=workers, on_progress=on_chunk)
        records.append(record)
        if on_progress:
            flag = " (max_bits reached)" if record.exhausted else ""
            on_progress(
                f"{plan.label}: Es/N0 = {snr_db:g} dB, BER = {record.ber:.4g} "
                f"({record.bit_errors}/{record.bits_sent}){flag}"
            )
    return BerCurve(plan, tuple(records))
