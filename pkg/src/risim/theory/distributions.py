"""
Characteristic and moment generating functions used by the error-probability
expressions.

Two families are covered. :class:`ChiSquareSpec` describes a (possibly
non-central, possibly negated) chi-square variable through its closed-form
characteristic function. :class:`QuadFormSpec` describes a quadratic form
``z^T A z`` of a correlated Gaussian vector ``z ~ N(m, C)``; its MGF is
evaluated from the eigen-decomposition of ``L^T A L`` (with ``C = L L^T``),
which turns the form into a weighted sum of independent non-central
chi-square(1) variables and gives a continuous branch of the square root
along any complex contour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..channel import RAYLEIGH_VAR
from ..exceptions import DomainError, ParameterError, PoleError

# Smallest |1 - 2 s lambda| accepted before reporting a pole
POLE_TOL = 1e-12


@dataclass(frozen=True)
class ChiSquareSpec:
    """Sum of ``n`` squared ``N(mu_k, sigma2)`` variables, times ``sign``.

    Attributes:
        n: Degrees of freedom
        sigma2: Per-component variance
        mu2: Non-centrality ``sum_k mu_k^2`` (0 for a central variable)
        sign: +1, or -1 for the negated variable
    """

    n: int
    sigma2: float
    mu2: float = 0.0
    sign: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            msg = f"Degrees of freedom must be >= 1, got {self.n}"
            raise ParameterError(msg)
        if not (self.sigma2 > 0 and math.isfinite(self.sigma2)):
            msg = f"sigma2 must be positive and finite, got {self.sigma2}"
            raise ParameterError(msg)
        if not (self.mu2 >= 0 and math.isfinite(self.mu2)):
            msg = f"mu2 must be >= 0 and finite, got {self.mu2}"
            raise ParameterError(msg)
        if self.sign not in (1, -1):
            msg = f"sign must be +1 or -1, got {self.sign}"
            raise ParameterError(msg)

    @property
    def mean(self) -> float:
        return self.sign * (self.n * self.sigma2 + self.mu2)

    def cf(self, w: float | np.ndarray) -> complex | np.ndarray:
        return cf_chi_square(w, self)


def cf_chi_square(w: float | np.ndarray, spec: ChiSquareSpec) -> complex | np.ndarray:
    """Characteristic function ``E[exp(j w X)]``.

    ``(1 - 2jw sigma2)^(-n/2) exp(jw mu2 / (1 - 2jw sigma2))``, with ``w``
    replaced by ``-w`` for a negated variable. The base has real part 1, so
    the principal power is continuous in ``w``.

    Examples:
        >>> complex(cf_chi_square(1.0, ChiSquareSpec(n=2, sigma2=0.5)))
        (0.5+0.5j)
    """
    w = spec.sign * np.asarray(w, dtype=float)
    d = 1.0 - 2j * w * spec.sigma2
    value = d ** (-spec.n / 2) * np.exp(1j * w * spec.mu2 / d)
    return complex(value) if value.ndim == 0 else value


@dataclass(frozen=True, eq=False)
class QuadFormSpec:
    """Quadratic form ``z^T A z`` with ``z ~ N(m, C)``.

    Attributes:
        A: Diagonal sign matrix, given as a ``k x k`` matrix or its diagonal
        m: Mean vector of length ``k``
        C: Symmetric positive definite ``k x k`` covariance
    """

    A: np.ndarray
    m: np.ndarray
    C: np.ndarray

    def __post_init__(self) -> None:
        C = np.array(self.C, dtype=float)  # noqa: N806
        m = np.array(self.m, dtype=float)
        A = np.array(self.A, dtype=float)  # noqa: N806
        k = m.size
        if m.ndim != 1 or C.shape != (k, k):
            msg = f"Mean of length {m.size} does not match covariance of shape {C.shape}"
            raise ParameterError(msg)
        if A.ndim == 2:
            if np.any(A - np.diag(np.diag(A))):
                msg = "A must be diagonal"
                raise ParameterError(msg)
            A = np.diag(A)  # noqa: N806
        if A.shape != (k,) or not np.all(np.isin(A, (-1.0, 1.0))):
            msg = "A must be a diagonal matrix with entries +-1"
            raise ParameterError(msg)
        if not np.allclose(C, C.T, rtol=1e-12, atol=1e-12 * np.abs(C).max()):
            msg = "Covariance matrix must be symmetric"
            raise ParameterError(msg)
        try:
            np.linalg.cholesky(C)
        except np.linalg.LinAlgError as e:
            msg = "Covariance matrix must be positive definite"
            raise ParameterError(msg) from e
        # A is stored as the full diagonal matrix
        for name, value in (("A", np.diag(A)), ("m", m), ("C", C)):
            value.flags.writeable = False
            object.__setattr__(self, name, value)

    @property
    def k(self) -> int:
        return int(self.m.size)

    @cached_property
    def spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        """Weights ``lam`` and non-centralities ``b2`` of the equivalent form.

        ``z^T A z = sum_k lam_k (v_k)^2`` with independent ``v_k ~ N(b_k, 1)``.
        """
        L = np.linalg.cholesky(self.C)  # noqa: N806
        lam, Q = np.linalg.eigh(L.T @ self.A @ L)  # noqa: N806
        b = Q.T @ np.linalg.solve(L, self.m)
        return lam, b**2

    @property
    def mean(self) -> float:
        return float(np.trace(self.A @ self.C) + self.m @ self.A @ self.m)

    def mgf(self, s: complex | np.ndarray) -> complex | np.ndarray:
        return mgf_quadratic_form(s, self)

    def cf(self, w: float | np.ndarray) -> complex | np.ndarray:
        return mgf_quadratic_form(1j * np.asarray(w, dtype=float), self)


def mgf_quadratic_form(s: complex | np.ndarray, spec: QuadFormSpec) -> complex | np.ndarray:
    """MGF ``E[exp(s z^T A z)]`` at real or complex ``s``.

    Equals ``det(I - 2sAC)^(-1/2) exp(-1/2 m^T [I - (I - 2sAC)^(-1)] C^(-1) m)``,
    with the determinant root taken as the product of per-eigenvalue
    principal roots.

    Raises:
        PoleError: If ``I - 2sAC`` is singular at ``s``
    """
    lam, b2 = spec.spectrum
    s = np.asarray(s, dtype=complex)
    d = 1.0 - 2.0 * s[..., None] * lam
    if np.any(np.abs(d) < POLE_TOL):
        msg = f"Quadratic-form MGF evaluated at a pole (s={s})"
        raise PoleError(msg)
    value = np.prod(d**-0.5, axis=-1) * np.exp(np.sum(s[..., None] * lam * b2 / d, axis=-1))
    return complex(value) if value.ndim == 0 else value


def mgf_snr(s: float | np.ndarray, N: int, es_n0: float) -> float | np.ndarray:  # noqa: N803
    """MGF of the aligned-antenna SNR ``gamma = Es B^2 / N0``.

    ``B`` is the aligned gain, Gaussian with mean ``N sqrt(pi)/2`` and
    variance ``N (4 - pi)/4`` in the large-N limit.

    Only ``s <= 0`` is accepted; the pole lies at ``s = 2 / (N (4 - pi) Es/N0)``.

    Raises:
        DomainError: For positive ``s``
    """
    s = np.asarray(s, dtype=float)
    if np.any(s > 0):
        msg = f"MGF of the SNR is defined for s <= 0 only, got s={s}"
        raise DomainError(msg)
    d = 1.0 - 2.0 * s * N * RAYLEIGH_VAR * es_n0
    value = d**-0.5 * np.exp(s * N**2 * np.pi * es_n0 / 4 / d)
    return float(value) if value.ndim == 0 else value
