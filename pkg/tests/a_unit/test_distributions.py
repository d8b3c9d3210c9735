"""
Unit tests for characteristic and moment generating functions.

Tests cover:
- Chi-square characteristic functions against closed forms and sampling
- Quadratic-form MGFs against the determinant formula and sampling
- Pole and parameter validation
- MGF of the aligned-antenna SNR
"""

from __future__ import annotations

import numpy as np
import pytest

from risim.channel import sample_clt_statistics
from risim.exceptions import DomainError, ParameterError, PoleError
from risim.theory.distributions import (
    ChiSquareSpec,
    QuadFormSpec,
    cf_chi_square,
    mgf_quadratic_form,
    mgf_snr,
)

CORRELATED = {
    "A": [1.0, -1.0],
    "m": [0.4, -0.2],
    "C": [[1.0, 0.3], [0.3, 0.5]],
}


class TestChiSquare:
    """Tests for ChiSquareSpec and cf_chi_square."""

    def test_normalized(self):
        """The characteristic function should be 1 at w = 0."""
        assert cf_chi_square(0.0, ChiSquareSpec(n=3, sigma2=2.0, mu2=1.5)) == pytest.approx(1.0)

    def test_exponential(self):
        """Two degrees of freedom with variance 1/2 is Exp(1)."""
        assert cf_chi_square(1.0, ChiSquareSpec(n=2, sigma2=0.5)) == pytest.approx(0.5 + 0.5j)

    def test_vectorized(self):
        """Array arguments should give arrays."""
        values = cf_chi_square(np.array([0.0, 1.0]), ChiSquareSpec(n=2, sigma2=0.5))
        assert values.shape == (2,)
        assert values[1] == pytest.approx(0.5 + 0.5j)

    def test_negated_is_conjugate(self):
        """Negating the variable conjugates the characteristic function."""
        spec = ChiSquareSpec(n=1, sigma2=1.0, mu2=4.0)
        negated = ChiSquareSpec(n=1, sigma2=1.0, mu2=4.0, sign=-1)
        assert negated.cf(0.7) == pytest.approx(np.conj(spec.cf(0.7)))
        assert negated.mean == -spec.mean == -5.0

    def test_noncentral_sampled(self, rng):
        """Should match the empirical characteristic function of (Z + 2)^2."""
        samples = (rng.standard_normal(1_000_000) + 2.0) ** 2
        spec = ChiSquareSpec(n=1, sigma2=1.0, mu2=4.0)
        for w in (0.05, 0.3, 1.0):
            empirical = np.mean(np.exp(1j * w * samples))
            assert abs(spec.cf(w) - empirical) < 1e-2

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 0, "sigma2": 1.0},
            {"n": 1, "sigma2": 0.0},
            {"n": 1, "sigma2": float("inf")},
            {"n": 1, "sigma2": 1.0, "mu2": -1.0},
            {"n": 1, "sigma2": 1.0, "sign": 2},
        ],
    )
    def test_invalid(self, kwargs):
        """Should reject invalid parameters."""
        with pytest.raises(ParameterError):
            ChiSquareSpec(**kwargs)


class TestQuadraticForm:
    """Tests for QuadFormSpec and mgf_quadratic_form."""

    def test_at_zero(self):
        """The MGF should be 1 at s = 0."""
        assert QuadFormSpec(**CORRELATED).mgf(0.0) == pytest.approx(1.0)

    def test_reduces_to_chi_square(self):
        """An identity form of white noise is a scaled chi-square."""
        spec = QuadFormSpec(A=np.eye(2), m=[1.0, 2.0], C=0.5 * np.eye(2))
        reference = ChiSquareSpec(n=2, sigma2=0.5, mu2=5.0)
        for w in (0.1, 1.0, 3.0):
            assert spec.cf(w) == pytest.approx(reference.cf(w))

    @pytest.mark.parametrize("s", [-0.3, -0.05, 0.05, 0.2])
    def test_determinant_formula(self, s):
        """Should match det(I - 2sAC)^(-1/2) exp(-m^T [I - (I - 2sAC)^-1] C^-1 m / 2)."""
        A = np.diag(CORRELATED["A"])
        m = np.array(CORRELATED["m"])
        C = np.array(CORRELATED["C"])
        K = np.eye(2) - 2 * s * A @ C
        direct = np.linalg.det(K) ** -0.5 * np.exp(
            -0.5 * m @ (np.eye(2) - np.linalg.inv(K)) @ np.linalg.inv(C) @ m
        )
        assert mgf_quadratic_form(s, QuadFormSpec(**CORRELATED)) == pytest.approx(direct, rel=1e-10)

    def test_sampled(self, rng):
        """Should match the sample mean of exp(s z^T A z)."""
        spec = QuadFormSpec(**CORRELATED)
        z = rng.multivariate_normal(CORRELATED["m"], CORRELATED["C"], size=400_000)
        q = z[:, 0] ** 2 - z[:, 1] ** 2
        for s in (-0.2, 0.1):
            values = np.exp(s * q)
            se = values.std() / np.sqrt(values.size)
            assert abs(spec.mgf(s).real - values.mean()) < 4 * se

    def test_pole(self):
        """Evaluating at a pole should raise PoleError."""
        spec = QuadFormSpec(A=[1.0], m=[0.0], C=[[1.0]])
        with pytest.raises(PoleError):
            spec.mgf(0.5)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"A": [1.0, 2.0], "m": [0.0, 0.0], "C": np.eye(2)},
            {"A": [[1.0, 0.5], [0.0, 1.0]], "m": [0.0, 0.0], "C": np.eye(2)},
            {"A": [1.0, 1.0], "m": [0.0], "C": np.eye(2)},
            {"A": [1.0, 1.0], "m": [0.0, 0.0], "C": [[1.0, 0.2], [0.1, 1.0]]},
            {"A": [1.0, 1.0], "m": [0.0, 0.0], "C": [[1.0, 2.0], [2.0, 1.0]]},
        ],
    )
    def test_invalid(self, kwargs):
        """Should reject non-diagonal or non-sign A and invalid covariances."""
        with pytest.raises(ParameterError):
            QuadFormSpec(**kwargs)


class TestMgfSnr:
    """Tests for mgf_snr."""

    def test_at_zero(self):
        """The MGF should be 1 at s = 0."""
        assert mgf_snr(0.0, 64, 0.01) == pytest.approx(1.0)

    def test_mean(self):
        """The left derivative at 0 should be the mean SNR."""
        N, es_n0, h = 16, 0.1, 1e-5
        f0, f1, f2 = (mgf_snr(-k * h, N, es_n0) for k in (0, 1, 2))
        derivative = (3 * f0 - 4 * f1 + f2) / (2 * h)
        expected = (N**2 * np.pi / 4 + N * (4 - np.pi) / 4) * es_n0
        assert derivative == pytest.approx(expected, rel=1e-5)

    def test_positive_argument(self):
        """Positive s is rejected, before and beyond the pole."""
        pole = 2 / (64 * (4 - np.pi) * 0.01)
        for s in (1e-6, 0.5 * pole, pole, 2 * pole):
            with pytest.raises(DomainError):
                mgf_snr(s, 64, 0.01)
        with pytest.raises(DomainError):
            mgf_snr(np.array([-1.0, 0.0, 1e-3]), 64, 0.01)

    def test_decreasing(self):
        """For s < 0 the MGF should decrease and stay in (0, 1)."""
        values = mgf_snr(np.array([-1e-3, -1e-2, -1e-1]), 64, 0.01)
        assert np.all((values > 0) & (values < 1))
        assert np.all(np.diff(values) < 0)

    def test_sampled(self, rng):
        """Should match sampling of the Gaussian aligned gain."""
        N, es_n0, s = 64, 0.01, -0.01
        b, _ = sample_clt_statistics(N, 200_000, rng)
        empirical = np.mean(np.exp(s * es_n0 * b**2))
        assert mgf_snr(s, N, es_n0) == pytest.approx(empirical, rel=1e-3)
