"""
Unit tests for the RIS channel model.

Tests cover:
- Channel sampling and Rayleigh amplitude moments
- Phase alignment and von Mises perturbation
- Received-signal synthesis and instantaneous SNR
- The large-N Gaussian surrogate of the channel sums
- Channel-sum moments and phase-difference law from full channels
- Optimality of the aligned phase profile
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import special, stats

from risim.channel import (
    RAYLEIGH_MEAN,
    RAYLEIGH_VAR,
    ChannelRealization,
    NoiseSpec,
    PhaseProfile,
    align_phases,
    channel_phases,
    complex_noise,
    cross_gains,
    effective_gains,
    instantaneous_snr,
    is_power_of_two,
    perturb_phases,
    received_signals,
    sample_channel,
    sample_clt_statistics,
    sample_gains,
    wrap_phase,
)
from risim.exceptions import AntennaIndexError, DimensionError, ParameterError


class TestHelpers:
    """Tests for small helpers."""

    def test_is_power_of_two(self):
        """Should accept powers of two only."""
        assert [n for n in range(10) if is_power_of_two(n)] == [1, 2, 4, 8]
        assert not is_power_of_two(2.0)

    def test_wrap_phase(self):
        """Should wrap into [0, 2*pi)."""
        wrapped = wrap_phase(np.array([-0.5, 0.0, 2 * math.pi, 7.0]))
        assert np.allclose(wrapped, [2 * math.pi - 0.5, 0.0, 0.0, 7.0 - 2 * math.pi])
        assert np.all((wrapped >= 0) & (wrapped < 2 * math.pi))


class TestSampleChannel:
    """Tests for sample_channel and the gain kernel."""

    def test_shape(self, rng):
        """Should return an n_R x N realization."""
        ch = sample_channel(2, 1, rng)
        assert ch.gains.shape == (2, 1)
        assert ch.n_R == 2
        assert ch.N == 1

    def test_unit_power(self, rng):
        """Gains should have unit average power."""
        gains = sample_gains(rng, 100_000, 2, 2)
        assert np.mean(np.abs(gains) ** 2) == pytest.approx(1.0, rel=0.01)

    def test_rayleigh_amplitude_moments(self, rng):
        """Amplitudes should have mean sqrt(pi)/2 and variance (4-pi)/4."""
        beta = np.abs(sample_gains(rng, 400, 4, 64))
        assert beta.mean() == pytest.approx(RAYLEIGH_MEAN, rel=0.01)
        assert beta.var() == pytest.approx(RAYLEIGH_VAR, rel=0.02)
        assert RAYLEIGH_MEAN == pytest.approx(0.8862, abs=1e-4)
        assert RAYLEIGH_VAR == pytest.approx(0.2146, abs=1e-4)

    def test_reproducible(self, make_rng_pair):
        """The same seed should give the same channel."""
        a, b = make_rng_pair
        assert np.array_equal(sample_channel(4, 16, a).gains, sample_channel(4, 16, b).gains)

    @pytest.mark.parametrize(("n_R", "N"), [(3, 8), (1, 8), (0, 8), (2, 0)])
    def test_invalid_dimensions(self, rng, n_R, N):
        """Should reject non-power-of-two n_R and empty RIS."""
        with pytest.raises(DimensionError):
            sample_channel(n_R, N, rng)

    def test_realization_is_read_only(self, rng):
        """Stored gains should not be writable."""
        ch = sample_channel(2, 4, rng)
        with pytest.raises(ValueError):
            ch.gains[0, 0] = 0

    def test_realization_rejects_bad_shape(self):
        """Should reject gains that are not a matrix."""
        with pytest.raises(DimensionError):
            ChannelRealization(np.ones(3))


class TestCrossGains:
    """Tests for the hypothesis signal matrix."""

    def test_diagonal_is_aligned_gain(self, rng):
        """H[m, m] should equal the sum of amplitudes of antenna m."""
        ch = sample_channel(4, 32, rng)
        assert np.allclose(np.diag(ch.cross_gains), ch.aligned_gains)
        assert np.allclose(np.diag(ch.cross_gains).imag, 0.0, atol=1e-12)

    def test_batch_matches_single(self, rng):
        """The batch kernel should agree with the realization property."""
        gains = sample_gains(rng, 3, 2, 8)
        batch = cross_gains(gains)
        for t in range(3):
            assert np.allclose(batch[t], ChannelRealization(gains[t]).cross_gains)


class TestAlignPhases:
    """Tests for align_phases."""

    def test_cancels_phase(self, rng):
        """The aligned antenna should see a real, positive gain."""
        ch = sample_channel(4, 64, rng)
        for m in range(1, 5):
            profile = align_phases(ch, m)
            gain = effective_gains(ch.gains[m - 1], profile.phases)
            assert abs(gain.imag) < 1e-9
            assert gain.real == pytest.approx(ch.aligned_gains[m - 1])

    def test_single_reflector(self):
        """phi = 1.2 should undo a channel phase of -1.2."""
        ch = ChannelRealization(np.array([[0.5 * np.exp(-1.2j)], [1.0 + 0j]]))
        profile = align_phases(ch, 1)
        assert profile.phases[0] == pytest.approx(1.2)
        assert ch.aligned_gains[0] == pytest.approx(0.5)

    def test_average_aligned_gain(self, rng):
        """The aligned gain should average N sqrt(pi)/2."""
        gains = sample_gains(rng, 10_000, 1, 64)
        assert np.abs(gains).sum(axis=-1).mean() == pytest.approx(64 * RAYLEIGH_MEAN, rel=0.005)

    @pytest.mark.parametrize("m", [0, 3, -1])
    def test_out_of_range(self, rng, m):
        """Should reject antennas outside [1, n_R]."""
        ch = sample_channel(2, 4, rng)
        with pytest.raises(AntennaIndexError):
            align_phases(ch, m)


class TestPerturbPhases:
    """Tests for perturb_phases."""

    def test_infinite_kappa_is_identity(self, rng):
        """kappa = inf should return the profile unchanged."""
        profile = PhaseProfile(np.linspace(0, 1, 8))
        assert perturb_phases(profile, math.inf, rng) is profile

    def test_negative_kappa(self, rng):
        """Should reject negative and NaN concentrations."""
        profile = PhaseProfile(np.zeros(4))
        with pytest.raises(ParameterError):
            perturb_phases(profile, -1.0, rng)
        with pytest.raises(ParameterError):
            perturb_phases(profile, math.nan, rng)

    def test_zero_kappa_is_uniform(self, rng):
        """kappa = 0 should give errors with vanishing resultant length."""
        perturbed = perturb_phases(PhaseProfile(np.zeros(100_000)), 0.0, rng)
        assert abs(np.mean(np.exp(1j * perturbed.phases))) < 0.015

    def test_circular_variance(self, rng):
        """kappa = 10 should give circular variance 1 - I1(10)/I0(10)."""
        perturbed = perturb_phases(PhaseProfile(np.zeros(100_000)), 10.0, rng)
        circular_variance = 1 - abs(np.mean(np.exp(1j * perturbed.phases)))
        expected = 1 - special.i1e(10.0) / special.i0e(10.0)
        assert circular_variance == pytest.approx(expected, rel=0.02)


class TestReceivedSignals:
    """Tests for received_signals and instantaneous_snr."""

    def test_noiseless_limit(self, rng):
        """Without noise the aligned antenna should receive sqrt(Es) sum(beta)."""
        ch = sample_channel(4, 64, rng)
        profile = align_phases(ch, 2)
        r = received_signals(ch, profile, 1.0, NoiseSpec(N0=1e-30), rng)
        assert r[1].real == pytest.approx(ch.aligned_gains[1])
        assert abs(r[1].imag) < 1e-9

    def test_noise_variance(self, rng):
        """Noise should be CN(0, N0)."""
        noise = complex_noise(rng, 1.0, 100_000)
        assert np.var(noise) == pytest.approx(1.0, rel=0.02)
        assert np.var(noise.real) == pytest.approx(0.5, rel=0.03)

    def test_single_path_noise(self, rng):
        """r - 1 should be pure noise for a unit single-path channel."""
        ch = ChannelRealization(np.array([[1.0 + 0j]]))
        profile = PhaseProfile([0.0])
        samples = np.array(
            [received_signals(ch, profile, 1.0, NoiseSpec(N0=1.0), rng)[0] for _ in range(5_000)]
        )
        assert np.var(samples - 1) == pytest.approx(1.0, rel=0.08)

    def test_length_mismatch(self, rng):
        """Should reject a profile of the wrong length."""
        ch = sample_channel(2, 8, rng)
        with pytest.raises(DimensionError):
            received_signals(ch, PhaseProfile(np.zeros(4)), 1.0, NoiseSpec(N0=1.0), rng)
        with pytest.raises(DimensionError):
            instantaneous_snr(ch, PhaseProfile(np.zeros(4)), NoiseSpec(N0=1.0))

    def test_instantaneous_snr(self, rng):
        """Aligned SNR should be (sum beta)^2 Es/N0."""
        ch = sample_channel(2, 64, rng)
        noise = NoiseSpec.from_snr_db(-20.0)
        snr = instantaneous_snr(ch, align_phases(ch, 1), noise)
        assert snr[0] == pytest.approx(ch.aligned_gains[0] ** 2 * 0.01)
        assert snr[0] > snr[1]


class TestNoiseSpec:
    """Tests for NoiseSpec."""

    def test_from_snr_db(self):
        """Should hold Es and derive N0."""
        spec = NoiseSpec.from_snr_db(-10.0, es=2.0)
        assert spec.N0 == pytest.approx(20.0)
        assert spec.es_n0 == pytest.approx(0.1)
        assert spec.snr_db == pytest.approx(-10.0)

    @pytest.mark.parametrize("n0", [0.0, -1.0, math.inf])
    def test_invalid(self, n0):
        """Should reject non-positive or infinite N0."""
        with pytest.raises(ParameterError):
            NoiseSpec(N0=n0)


class TestCltSurrogate:
    """Tests for the Gaussian surrogate of the channel sums."""

    def test_moments(self, rng):
        """B and B_hat should follow their large-N moments."""
        N = 64
        b, b_hat = sample_clt_statistics(N, 100_000, rng)
        assert b.mean() == pytest.approx(N * math.sqrt(math.pi) / 2, rel=0.01)
        assert b.var() == pytest.approx(N * (4 - math.pi) / 4, rel=0.05)
        assert b_hat.real.var() == pytest.approx(N / 2, rel=0.05)
        assert b_hat.imag.var() == pytest.approx(N / 2, rel=0.05)

    def test_matches_true_channel(self, rng):
        """The aligned gain of real channels should have the surrogate moments."""
        gains = sample_gains(rng, 20_000, 1, 64)
        b = np.abs(gains).sum(axis=-1)
        assert b.var() == pytest.approx(64 * RAYLEIGH_VAR, rel=0.05)


class TestTrueChannelSums:
    """Moments and laws of the channel sums, sampled from full channels."""

    N = 64
    BATCHES = 5
    BATCH = 20_000

    def sums(self, rng):
        b, b_hat, dphi = [], [], []
        for _ in range(self.BATCHES):
            gains = sample_gains(rng, self.BATCH, 2, self.N)
            b.append(np.abs(gains).sum(axis=-1)[:, 0])
            b_hat.append(cross_gains(gains)[:, 1, 0])
            psi = channel_phases(gains)
            dphi.append(psi[:, 0, 0] - psi[:, 1, 0])
        return np.concatenate(b), np.concatenate(b_hat), np.concatenate(dphi)

    def test_aligned_gain_moments(self, rng):
        """B should have mean N sqrt(pi)/2 and variance N (4 - pi)/4."""
        b, _, _ = self.sums(rng)
        assert b.mean() == pytest.approx(self.N * RAYLEIGH_MEAN, rel=0.01)
        assert b.var() == pytest.approx(self.N * RAYLEIGH_VAR, rel=0.03)

    def test_cross_gain_moments(self, rng):
        """B_hat should be zero-mean with N/2 variance per quadrature."""
        _, b_hat, _ = self.sums(rng)
        trials = b_hat.size
        assert abs(b_hat.mean()) < 4 * math.sqrt(self.N / trials)
        assert b_hat.real.var() == pytest.approx(self.N / 2, rel=0.03)
        assert b_hat.imag.var() == pytest.approx(self.N / 2, rel=0.03)

    def test_phase_difference_is_triangular(self, rng):
        """psi_m - psi_l should be triangular on (-2 pi, 2 pi)."""
        _, _, dphi = self.sums(rng)
        law = stats.triang(c=0.5, loc=-2 * math.pi, scale=4 * math.pi)
        assert stats.kstest(dphi, law.cdf).pvalue > 0.01


class TestAlignmentOptimality:
    """Tests that aligned phases maximise the target antenna's gain."""

    def test_beats_random_profiles(self, rng):
        """No random profile should give the target antenna a larger gain."""
        ch = sample_channel(4, 32, rng)
        random_phases = rng.uniform(0, 2 * math.pi, size=(1000, 32))
        for m in range(1, 5):
            aligned = abs(effective_gains(ch.gains[m - 1], align_phases(ch, m).phases))
            others = np.abs(effective_gains(ch.gains[m - 1], random_phases))
            assert aligned >= others.max() - 1e-9

    def test_local_maximum(self, rng):
        """Nudging any single phase should not increase the aligned gain."""
        ch = sample_channel(2, 16, rng)
        phases = align_phases(ch, 1).phases
        aligned = abs(effective_gains(ch.gains[0], phases))
        for i in range(16):
            for delta in (-0.1, 0.1):
                nudged = phases.copy()
                nudged[i] += delta
                assert abs(effective_gains(ch.gains[0], nudged)) < aligned
