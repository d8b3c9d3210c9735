"""
Unit tests for the greedy and ML receivers.

Tests cover:
- Decisions on hand-made received vectors, including ties
- Noiseless recovery of every hypothesis
- Agreement with brute-force enumeration of the ML metrics
- Hypothesis counts and argument validation
- Invariance of every decision to a common scale of the link
- Greedy 16-QAM symbol errors against the conditional SEP
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from risim.channel import (
    ChannelRealization,
    NoiseSpec,
    align_phases,
    complex_noise,
    cross_gains,
    effective_gains,
    received_signals,
    sample_channel,
    sample_gains,
    select_phases,
)
from risim.detectors import (
    greedy_sm,
    greedy_sm_batch,
    greedy_ssk,
    greedy_ssk_batch,
    ml_sm,
    ml_ssk,
    ml_ssk_batch,
)
from risim.exceptions import ConfigurationError, DimensionError
from risim.modulation import build_constellation
from risim.theory.curves import es_n0
from risim.theory.greedy import sep_conditioned

NOISELESS = NoiseSpec(N0=1e-30)


class TestGreedySsk:
    """Tests for greedy_ssk."""

    def test_dominant_entry(self):
        """Should pick the antenna with the most energy."""
        decision = greedy_ssk([3 + 0j, 1 + 0j])
        assert decision.m_hat == 1
        assert decision.x_hat is None
        assert decision.metric == pytest.approx(9.0)

    def test_tie_goes_to_lowest_index(self):
        """Equal energies should resolve to the first antenna."""
        assert greedy_ssk([1 + 1j, 1 - 1j]).m_hat == 1

    def test_noiseless_recovery(self, rng):
        """Noiseless aligned signals should always be detected."""
        gains = sample_gains(rng, 2_000, 4, 32)
        antennas = rng.integers(0, 4, size=2_000)
        r = effective_gains(gains, select_phases(gains, antennas))
        assert np.array_equal(greedy_ssk_batch(r), antennas)

    def test_hypotheses(self):
        """Should evaluate one metric per antenna."""
        assert greedy_ssk(np.ones(8)).hypotheses == 8

    def test_rejects_empty(self):
        """Should reject an empty received vector."""
        with pytest.raises(DimensionError):
            greedy_ssk([])


class TestMlSsk:
    """Tests for ml_ssk."""

    def test_noiseless(self, rng):
        """A noiseless signal aligned on antenna 2 should be detected."""
        ch = sample_channel(2, 16, rng)
        r = received_signals(ch, align_phases(ch, 2), 1.0, NOISELESS, rng)
        decision = ml_ssk(r, ch)
        assert decision.m_hat == 2
        assert decision.metric == pytest.approx(0.0, abs=1e-12)
        assert decision.hypotheses == 2

    def test_two_hypothesis_metric(self, rng):
        """Should match an explicit comparison of the two residuals."""
        for _ in range(200):
            ch = sample_channel(2, 8, rng)
            r = complex_noise(rng, 10.0, 2)
            residuals = [
                sum(abs(r[l] - ch.cross_gains[l, m]) ** 2 for l in range(2)) for m in range(2)
            ]
            assert ml_ssk(r, ch).m_hat == 1 + int(np.argmin(residuals))

    def test_dimension_mismatch(self, rng):
        """Should reject a received vector of the wrong length."""
        ch = sample_channel(2, 8, rng)
        with pytest.raises(DimensionError):
            ml_ssk(np.zeros(4), ch)

    def test_not_worse_than_greedy(self, rng):
        """On paired noisy trials ML should make fewer errors than greedy."""
        trials, N = 20_000, 64
        gains = sample_gains(rng, trials, 2, N)
        antennas = rng.integers(0, 2, size=trials)
        n0 = 1 / 10 ** (-27 / 10)
        r = effective_gains(gains, select_phases(gains, antennas))
        r = r + complex_noise(rng, n0, r.shape)
        greedy_errors = np.count_nonzero(greedy_ssk_batch(r) != antennas)
        ml_errors = np.count_nonzero(ml_ssk_batch(r, cross_gains(gains), 1.0) != antennas)
        assert greedy_errors > 100
        assert ml_errors < greedy_errors


class TestGreedySm:
    """Tests for greedy_sm."""

    @pytest.mark.parametrize(("kind", "M"), [("PSK", 2), ("PSK", 8), ("QAM", 4), ("QAM", 16)])
    def test_noiseless_recovery(self, rng, kind, M):
        """Noiseless signals should give back (m, x)."""
        c = build_constellation(kind, M)
        ch = sample_channel(4, 64, rng)
        for m in range(1, 5):
            for x in c.points:
                r = received_signals(ch, align_phases(ch, m), x, NOISELESS, rng)
                decision = greedy_sm(r, ch.aligned_gains, c)
                assert decision.m_hat == m
                assert decision.x_hat == pytest.approx(x)

    def test_psk_needs_no_amplitudes(self, rng):
        """PSK symbols should be detected without channel knowledge."""
        c = build_constellation("PSK", 4)
        ch = sample_channel(2, 32, rng)
        r = received_signals(ch, align_phases(ch, 2), c.points[3], NOISELESS, rng)
        assert greedy_sm(r, None, c).x_hat == pytest.approx(c.points[3])

    def test_qam_needs_amplitudes(self, qam16):
        """QAM without amplitudes is a configuration error."""
        with pytest.raises(ConfigurationError):
            greedy_sm(np.ones(2, dtype=complex), None, qam16)
        with pytest.raises(ConfigurationError):
            greedy_sm_batch(np.ones((3, 2), dtype=complex), qam16)

    def test_hypotheses(self, qpsk):
        """Should evaluate n_R + M metrics."""
        assert greedy_sm(np.ones(4, dtype=complex), np.ones(4), qpsk).hypotheses == 8


class TestMlSm:
    """Tests for ml_sm."""

    def test_noiseless_exhaustive(self, rng, qpsk):
        """Every (m, x) should be recovered without noise."""
        ch = sample_channel(4, 32, rng)
        for m in range(1, 5):
            for x in qpsk.points:
                r = received_signals(ch, align_phases(ch, m), x, NOISELESS, rng)
                decision = ml_sm(r, ch, qpsk)
                assert decision.m_hat == m
                assert decision.x_hat == pytest.approx(x)
                assert decision.hypotheses == 16

    def test_brute_force(self, rng, bpsk):
        """Should match enumeration of all n_R * M residuals."""
        for _ in range(2_000):
            ch = ChannelRealization(sample_gains(rng, (), 2, 4))
            r = complex_noise(rng, 4.0, 2)
            best = min(
                itertools.product(range(2), range(2)),
                key=lambda h: sum(abs(r[l] - ch.cross_gains[l, h[0]] * bpsk.points[h[1]]) ** 2 for l in range(2)),
            )
            decision = ml_sm(r, ch, bpsk)
            assert (decision.m_hat - 1, bpsk.label_of(decision.x_hat)) == best

    def test_dimension_mismatch(self, rng, qpsk):
        """Should reject a received vector of the wrong length."""
        ch = sample_channel(4, 8, rng)
        with pytest.raises(DimensionError):
            ml_sm(np.zeros(2), ch, qpsk)


class TestScaleInvariance:
    """Decisions should not change when the link is scaled as a whole."""

    SCALE = 3.7

    def noisy(self, rng, ch, m, x):
        return received_signals(ch, align_phases(ch, m), x, NoiseSpec(N0=400.0), rng)

    def test_ssk(self, rng):
        """Scaling r (and the channel for ML) should keep the antenna decision."""
        for _ in range(200):
            ch = sample_channel(4, 64, rng)
            r = self.noisy(rng, ch, int(rng.integers(1, 5)), 1.0)
            scaled = ChannelRealization(self.SCALE * ch.gains)
            assert greedy_ssk(r).m_hat == greedy_ssk(self.SCALE * r).m_hat
            assert ml_ssk(r, ch).m_hat == ml_ssk(self.SCALE * r, scaled).m_hat

    @pytest.mark.parametrize(("kind", "M"), [("PSK", 8), ("QAM", 16)])
    def test_sm(self, rng, kind, M):
        """Scaling r with the amplitudes or the channel should keep (m, x)."""
        c = build_constellation(kind, M)
        for _ in range(200):
            ch = sample_channel(2, 64, rng)
            r = self.noisy(rng, ch, int(rng.integers(1, 3)), c.points[rng.integers(M)])
            scaled = ChannelRealization(self.SCALE * ch.gains)
            greedy = greedy_sm(r, ch.aligned_gains, c)
            greedy_scaled = greedy_sm(self.SCALE * r, self.SCALE * ch.aligned_gains, c)
            assert (greedy.m_hat, greedy.x_hat) == (greedy_scaled.m_hat, greedy_scaled.x_hat)
            ml = ml_sm(r, ch, c)
            ml_scaled = ml_sm(self.SCALE * r, scaled, c)
            assert (ml.m_hat, ml.x_hat) == (ml_scaled.m_hat, ml_scaled.x_hat)


class TestGreedySymbolErrors:
    """Symbol errors of greedy RIS-SM once the antenna is right."""

    def test_16qam_matches_conditional_sep(self, rng, qam16):
        """The empirical SER should match the analytical conditional SEP."""
        snr = es_n0(-20.0)
        errors = detected = 0
        for _ in range(5):
            gains = sample_gains(rng, 20_000, 2, 64)
            antennas = np.zeros(20_000, dtype=np.int64)
            labels = rng.integers(0, 16, size=20_000)
            signal = effective_gains(gains, select_phases(gains, antennas)) * qam16.points[labels][:, None]
            r = signal + complex_noise(rng, 1 / snr, signal.shape)
            antennas_hat, labels_hat = greedy_sm_batch(r, qam16, np.abs(gains).sum(axis=-1))
            correct = antennas_hat == antennas
            detected += np.count_nonzero(correct)
            errors += np.count_nonzero(labels_hat[correct] != labels[correct])
        assert errors > 500
        assert errors / detected == pytest.approx(sep_conditioned(qam16, 64, snr), rel=0.15)
