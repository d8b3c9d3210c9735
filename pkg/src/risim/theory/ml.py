"""
Error probabilities of the maximum-likelihood detector.

The conditional PEP of ``(m, x) -> (m_hat, x_hat)`` is ``Q(sqrt(Gamma / 2N0))``
with ``Gamma = sum_l |G_l x - G_hat_l x_hat|^2``; averaging over the channel
through the MGF of Gamma gives

    P = (1/pi) int_0^(pi/2) M_Gamma(-1 / (4 sin^2(eta) N0)) d eta.

The MGF differs between a wrong antenna (``same_antenna=False``) and a
correct antenna with a wrong symbol (``same_antenna=True``).
"""

from __future__ import annotations

import math
from itertools import product
from typing import TYPE_CHECKING

import numpy as np

from ..channel import RAYLEIGH_MEAN, RAYLEIGH_VAR
from ..detectors import Detector, Scheme
from ..exceptions import ParameterError, PoleError
from ..modulation import hamming_distance
from .curves import TheoryCurve, TheoryRequest, evaluate_grid
from .distributions import POLE_TOL, QuadFormSpec, mgf_quadratic_form
from .quadrature import clamp, gauss_legendre

if TYPE_CHECKING:
    from collections.abc import Callable


def mismatch_statistic(x: complex, x_hat: complex, N: int) -> QuadFormSpec:  # noqa: N803
    """Quadratic form of ``Gamma1 + Gamma2``, the two antennas involved in
    an antenna error (the targeted one and the detected one)."""
    xr, xi = x.real, x.imag
    yr, yi = x_hat.real, x_hat.imag
    var = N * RAYLEIGH_VAR
    mean = N * RAYLEIGH_MEAN
    s11 = var * xr**2 + N * abs(x_hat) ** 2 / 2
    s22 = var * xi**2 + N * abs(x_hat) ** 2 / 2
    s33 = var * yr**2 + N * abs(x) ** 2 / 2
    s44 = var * yi**2 + N * abs(x) ** 2 / 2
    s12 = var * xr * xi
    s34 = var * yr * yi
    s13 = N * math.pi * (-xr * yr + xi * yi) / 8
    s14 = -N * math.pi * (xr * yi + yr * xi) / 8
    s23 = s14
    s24 = -s13
    C = np.array(  # noqa: N806
        [
            [s11, s12, s13, s14],
            [s12, s22, s23, s24],
            [s13, s23, s33, s34],
            [s14, s24, s34, s44],
        ]
    )
    m = np.array([mean * xr, mean * xi, -mean * yr, -mean * yi])
    return QuadFormSpec(A=np.ones(4), m=m, C=C)


def _power(base: np.ndarray, exponent: int, s: np.ndarray) -> np.ndarray:
    if exponent == 0:
        return np.ones_like(base)
    if np.any(np.abs(base) < POLE_TOL):
        msg = f"MGF of Gamma evaluated at a pole (s={s})"
        raise PoleError(msg)
    return base ** (-exponent)


def gamma_mgf(
    x: complex,
    x_hat: complex,
    same_antenna: bool,
    N: int,  # noqa: N803
    n_R: int,  # noqa: N803
) -> Callable[[complex | np.ndarray], np.ndarray]:
    """Validate a pairwise event and return the MGF of its ``Gamma``.

    Raises:
        ParameterError: If ``same_antenna`` and ``x == x_hat``, or n_R < 2
            for an antenna error
    """
    if same_antenna:
        d2 = abs(x - x_hat) ** 2
        if d2 == 0:
            msg = "A pairwise error with the same antenna needs x != x_hat"
            raise ParameterError(msg)

        def matched(s: complex | np.ndarray) -> np.ndarray:
            s = np.asarray(s, dtype=complex)
            base = 1 - 2 * s * N * RAYLEIGH_VAR * d2
            if np.any(np.abs(base) < POLE_TOL):
                msg = f"MGF of Gamma evaluated at a pole (s={s})"
                raise PoleError(msg)
            value = base**-0.5 * np.exp(s * N**2 * d2 * math.pi / 4 / base)
            return value * _power(1 - s * N * d2, n_R - 1, s)

        return matched

    if n_R < 2:
        msg = f"An antenna error needs n_R >= 2, got {n_R}"
        raise ParameterError(msg)
    spec = mismatch_statistic(x, x_hat, N)
    spread = N * (abs(x) ** 2 + abs(x_hat) ** 2)

    def mismatched(s: complex | np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=complex)
        value = np.asarray(mgf_quadratic_form(s, spec))
        return value * _power(1 - s * spread, n_R - 2, s)

    return mismatched


def mgf_gamma_ml(
    s: complex | np.ndarray,
    x: complex,
    x_hat: complex,
    same_antenna: bool,
    N: int,  # noqa: N803
    n_R: int,  # noqa: N803
) -> complex | np.ndarray:
    """MGF of ``Gamma`` for the ML pairwise error event.

    Wrong antenna: MGF of the 4-dimensional quadratic form of the two
    involved antennas times ``(1 - sN(|x|^2 + |x_hat|^2))^-(n_R - 2)`` for
    the others. Right antenna: closed form in ``|x - x_hat|^2``.

    Raises:
        ParameterError: For an impossible event (see :func:`gamma_mgf`)
        PoleError: At a pole of the MGF
    """
    value = gamma_mgf(x, x_hat, same_antenna, N, n_R)(s)
    return complex(value) if np.ndim(value) == 0 else value


def pep_ml(
    x: complex,
    x_hat: complex,
    same_antenna: bool,
    N: int,  # noqa: N803
    n_R: int,  # noqa: N803
    es_n0: float,
    *,
    es: float = 1.0,
) -> float:
    """Unconditional ML pairwise error probability.

    ``es`` is the symbol energy the SNR refers to, so ``N0 = es / es_n0``.
    """
    if not (es_n0 > 0 and math.isfinite(es_n0)):
        msg = f"Es/N0 must be positive and finite, got {es_n0}"
        raise ParameterError(msg)
    n0 = es / es_n0
    mgf = gamma_mgf(x, x_hat, same_antenna, N, n_R)

    def integrand(eta: np.ndarray) -> np.ndarray:
        return np.real(mgf(-1.0 / (4 * np.sin(eta) ** 2 * n0)))

    return clamp(gauss_legendre(integrand, 0.0, math.pi / 2) / math.pi)


def bep_ml(req: TheoryRequest, *, on_progress: Callable[[str], None] | None = None) -> TheoryCurve:
    """Union bound on the ML bit error probability, clamped to [0, 0.5].

    RIS-SSK: ``(n_R / 2) P`` with ``x = x_hat = sqrt(Es)``.

    RIS-SM: the union bound over all ``(m, x) -> (m_hat, x_hat)`` events,
    weighted by the number of differing bits. Because the PEP does not
    depend on which antennas are involved, the antenna sums collapse:
    the ``n_R (n_R - 1)`` ordered antenna pairs contribute
    ``D_ant + n_R (n_R - 1) d(x, x_hat)`` bits in total, with
    ``D_ant = n_R (n_R / 2) log2(n_R)``, and the ``n_R`` same-antenna
    events contribute ``n_R d(x, x_hat)``.
    """
    if req.detector is not Detector.ML:
        msg = f"Expected an ML request, got {req.detector}"
        raise ParameterError(msg)

    if req.scheme is Scheme.SSK:
        x = math.sqrt(req.es)

        def ssk_point(es_n0: float) -> float:
            return clamp(req.n_R / 2 * pep_ml(x, x, False, req.N, req.n_R, es_n0), 0.0, 0.5)

        return evaluate_grid(req, ssk_point, on_progress=on_progress)

    c = req.constellation
    assert c is not None
    n_R = req.n_R  # noqa: N806
    antenna_bits = n_R * (n_R / 2) * math.log2(n_R)
    norm = c.M * n_R * math.log2(c.M * n_R)

    def sm_point(es_n0: float) -> float:
        total = 0.0
        for (k, x), (k_hat, x_hat) in product(enumerate(c.points), repeat=2):
            d_sym = hamming_distance(k, k_hat)
            p_mis = pep_ml(x, x_hat, False, req.N, n_R, es_n0, es=c.Es)
            total += p_mis * (antenna_bits + n_R * (n_R - 1) * d_sym)
            if k != k_hat:
                p_match = pep_ml(x, x_hat, True, req.N, n_R, es_n0, es=c.Es)
                total += p_match * n_R * d_sym
        return clamp(total / norm, 0.0, 0.5)

    return evaluate_grid(req, sm_point, on_progress=on_progress)
