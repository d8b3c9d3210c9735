"""
Flat Rayleigh RIS channel, phase alignment and received-signal synthesis.

The channel between reflector ``i`` and receive antenna ``l`` is stored as
its complex gain ``g[l, i] = beta[l, i] * exp(-1j * psi[l, i])``. Amplitudes
and phases are derived from the stored gains and never stored separately.

Every sampling function takes an explicit :class:`numpy.random.Generator`;
the module holds no random state. Functions whose name does not mention a
single realization accept leading batch axes and are what the Monte Carlo
engine calls; the single-realization operations wrap them.

Example:
    from risim.channel import NoiseSpec, align_phases, received_signals, sample_channel
    from risim.rng import make_rng

    rng = make_rng(7)
    ch = sample_channel(4, 64, rng)
    profile = align_phases(ch, 3)
    r = received_signals(ch, profile, 1.0, NoiseSpec.from_snr_db(-20.0), rng)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import AntennaIndexError, DimensionError, ParameterError

TWO_PI = 2.0 * np.pi

# Rayleigh amplitude moments for a CN(0, 1) gain
RAYLEIGH_MEAN = math.sqrt(math.pi) / 2
RAYLEIGH_VAR = (4.0 - math.pi) / 4


def is_power_of_two(n: int) -> bool:
    """Return True if ``n`` is a positive integer power of two."""
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


def wrap_phase(phases: np.ndarray | float) -> np.ndarray:
    """Wrap phases into ``[0, 2*pi)``."""
    wrapped = np.mod(np.asarray(phases, dtype=float), TWO_PI)
    # np.mod may round tiny negative inputs up to exactly 2*pi
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One ``n_R x N`` matrix of RIS-to-antenna channel gains."""

    gains: np.ndarray

    def __post_init__(self) -> None:
        gains = np.array(self.gains, dtype=np.complex128)
        if gains.ndim != 2 or 0 in gains.shape:
            msg = f"Channel gains must be a non-empty n_R x N matrix, got shape {gains.shape}"
            raise DimensionError(msg)
        if not np.all(np.isfinite(gains)):
            msg = "Channel gains must be finite"
            raise DimensionError(msg)
        object.__setattr__(self, "gains", _frozen(gains))

    @property
    def n_R(self) -> int:  # noqa: N802
        return int(self.gains.shape[0])

    @property
    def N(self) -> int:  # noqa: N802
        return int(self.gains.shape[1])

    @cached_property
    def amplitudes(self) -> np.ndarray:
        """beta[l, i] = |g[l, i]|."""
        return _frozen(np.abs(self.gains))

    @cached_property
    def phases(self) -> np.ndarray:
        """psi[l, i] = -arg(g[l, i]) wrapped into [0, 2*pi)."""
        return _frozen(wrap_phase(-np.angle(self.gains)))

    @cached_property
    def aligned_gains(self) -> np.ndarray:
        """Per-antenna sum of amplitudes, the gain seen when the RIS aligns on it."""
        return _frozen(self.amplitudes.sum(axis=1))

    @cached_property
    def cross_gains(self) -> np.ndarray:
        """H[l, m] = sum_i g[l, i] exp(j psi[m, i]).

        Column ``m`` is the noiseless signal at every antenna when the RIS is
        aligned on antenna ``m`` (ML hypothesis signals); the diagonal equals
        :attr:`aligned_gains`, and ``H[l, m]`` for ``l != m`` is the
        misaligned gain of antenna ``l``.
        """
        return _frozen(cross_gains(self.gains))


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    """The N reflector phases applied by the RIS."""

    phases: np.ndarray

    def __post_init__(self) -> None:
        phases = np.array(self.phases, dtype=float)
        if phases.ndim != 1 or phases.size == 0:
            msg = f"Phase profile must be a non-empty vector, got shape {phases.shape}"
            raise DimensionError(msg)
        if not np.all(np.isfinite(phases)):
            msg = "Reflector phases must be finite"
            raise ParameterError(msg)
        object.__setattr__(self, "phases", _frozen(wrap_phase(phases)))

    def __len__(self) -> int:
        return int(self.phases.size)


@dataclass(frozen=True)
class NoiseSpec:
    """Noise spectral density and transmit symbol energy."""

    N0: float  # noqa: N815
    Es: float = 1.0  # noqa: N815

    def __post_init__(self) -> None:
        if not (self.N0 > 0 and math.isfinite(self.N0)):
            msg = f"N0 must be positive and finite, got {self.N0}"
            raise ParameterError(msg)
        if not (self.Es > 0 and math.isfinite(self.Es)):
            msg = f"Es must be positive and finite, got {self.Es}"
            raise ParameterError(msg)

    @classmethod
    def from_snr_db(cls, snr_db: float, es: float = 1.0) -> NoiseSpec:
        """Noise level giving ``Es/N0 = snr_db`` (Es held fixed)."""
        return cls(N0=es / 10.0 ** (snr_db / 10.0), Es=es)

    @property
    def es_n0(self) -> float:
        return self.Es / self.N0

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.es_n0)


# Batch kernels


def sample_gains(
    rng: np.random.Generator, batch: int | tuple[int, ...], n_R: int, N: int
) -> np.ndarray:
    """Draw iid CN(0, 1) gains of shape ``(*batch, n_R, N)``."""
    batch = (batch,) if isinstance(batch, int) else tuple(batch)
    shape = (*batch, n_R, N)
    scale = math.sqrt(0.5)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def channel_phases(gains: np.ndarray) -> np.ndarray:
    """psi = -arg(g), wrapped, for gains of any shape."""
    return wrap_phase(-np.angle(gains))


def cross_gains(gains: np.ndarray) -> np.ndarray:
    """Hypothesis signal matrix ``H[..., l, m]`` for gains ``(..., n_R, N)``."""
    steering = np.exp(1j * channel_phases(gains))
    return gains @ np.swapaxes(steering, -1, -2)


def select_phases(gains: np.ndarray, antennas: np.ndarray) -> np.ndarray:
    """Aligned phase profiles ``(T, N)`` for target antennas (0-based) ``(T,)``."""
    rows = np.take_along_axis(gains, antennas[:, None, None], axis=-2)[:, 0, :]
    return channel_phases(rows)


def phase_errors(
    rng: np.random.Generator, kappa: float, shape: int | tuple[int, ...]
) -> np.ndarray:
    """Zero-mean von Mises phase errors with concentration ``kappa``.

    numpy's von Mises sampler is the Best-Fisher rejection algorithm (with
    the uniform law for vanishing concentration).
    """
    return rng.vonmises(0.0, kappa, size=shape)


def complex_noise(
    rng: np.random.Generator, n0: float, shape: int | tuple[int, ...]
) -> np.ndarray:
    """Circularly symmetric complex Gaussian noise of variance ``n0``."""
    scale = math.sqrt(n0 / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def effective_gains(gains: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """sum_i g[..., l, i] exp(j phi[..., i]) for every antenna ``l``."""
    return (gains @ np.exp(1j * phases)[..., None])[..., 0]


# Single-realization operations


def _check_dimensions(n_R: int, N: int) -> None:
    if not is_power_of_two(n_R) or n_R < 2:
        msg = f"n_R must be a power of two >= 2, got {n_R}"
        raise DimensionError(msg)
    if not isinstance(N, (int, np.integer)) or N < 1:
        msg = f"N must be a positive integer, got {N}"
        raise DimensionError(msg)


def sample_channel(n_R: int, N: int, rng: np.random.Generator) -> ChannelRealization:
    """Draw one realization with iid CN(0, 1) entries."""
    _check_dimensions(n_R, N)
    return ChannelRealization(sample_gains(rng, (), n_R, N))


def align_phases(ch: ChannelRealization, m: int) -> PhaseProfile:
    """Phase profile maximizing the instantaneous SNR at antenna ``m`` (1-based).

    Setting phi_i = psi[m, i] makes every reflected path arrive in phase, so
    ``sum_i g[m, i] exp(j phi_i) = sum_i beta[m, i]``.
    """
    if not 1 <= m <= ch.n_R:
        msg = f"Antenna index {m} out of range [1, {ch.n_R}]"
        raise AntennaIndexError(msg)
    return PhaseProfile(ch.phases[m - 1])


def perturb_phases(
    p: PhaseProfile, kappa: float, rng: np.random.Generator
) -> PhaseProfile:
    """Add iid von Mises estimation errors to every reflector phase.

    ``kappa = inf`` means perfect estimation and returns ``p`` itself.
    """
    if math.isnan(kappa) or kappa < 0:
        msg = f"kappa must be >= 0, got {kappa}"
        raise ParameterError(msg)
    if math.isinf(kappa):
        return p
    return PhaseProfile(p.phases + phase_errors(rng, kappa, len(p)))


def received_signals(
    ch: ChannelRealization,
    p: PhaseProfile,
    x: complex,
    noise: NoiseSpec,
    rng: np.random.Generator,
) -> np.ndarray:
    """Received baseband samples at all ``n_R`` antennas.

    ``r[l] = (sum_i g[l, i] exp(j phi_i)) * x + n[l]`` with ``n ~ CN(0, N0)``.
    RIS-SSK transmits the unmodulated carrier ``x = sqrt(Es)``.
    """
    if len(p) != ch.N:
        msg = f"Phase profile has {len(p)} reflectors, channel has {ch.N}"
        raise DimensionError(msg)
    signal = effective_gains(ch.gains, p.phases) * x
    return signal + complex_noise(rng, noise.N0, signal.shape)


def instantaneous_snr(
    ch: ChannelRealization, p: PhaseProfile, noise: NoiseSpec
) -> np.ndarray:
    """Per-antenna instantaneous SNR |sum_i g[l, i] exp(j phi_i)|^2 Es / N0."""
    if len(p) != ch.N:
        msg = f"Phase profile has {len(p)} reflectors, channel has {ch.N}"
        raise DimensionError(msg)
    return np.abs(effective_gains(ch.gains, p.phases)) ** 2 * noise.es_n0


def sample_clt_statistics(
    N: int, size: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw (B, B_hat) from their large-N Gaussian approximations.

    B, the aligned gain, is N(N sqrt(pi)/2, N(4-pi)/4); B_hat, the gain of a
    non-targeted antenna, is CN(0, N). The analytical error probabilities
    are derived under exactly this model.
    """
    b = N * RAYLEIGH_MEAN + math.sqrt(N * RAYLEIGH_VAR) * rng.standard_normal(size)
    b_hat = complex_noise(rng, float(N), size)
    return b, b_hat
