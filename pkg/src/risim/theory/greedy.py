"""
Error probabilities of the greedy (energy) detector.

All expressions use the large-N Gaussian model of the channel sums: the
aligned gain ``B`` is ``N(N sqrt(pi)/2, N(4 - pi)/4)`` and the gain seen by
any other antenna is ``CN(0, N)``.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from ..channel import RAYLEIGH_MEAN, RAYLEIGH_VAR
from ..detectors import Detector, Scheme
from ..exceptions import ParameterError
from ..modulation import Kind
from .curves import Mode, TheoryCurve, TheoryRequest, evaluate_grid
from .distributions import ChiSquareSpec, QuadFormSpec, mgf_snr
from .quadrature import GP_RESOLUTION, clamp, gauss_legendre, gil_pelaez_prob_negative

if TYPE_CHECKING:
    from collections.abc import Callable

    from ..modulation import Constellation


# RIS-SSK


def ssk_statistics(N: int, es_n0: float) -> tuple[ChiSquareSpec, ChiSquareSpec, ChiSquareSpec]:  # noqa: N803
    """The three chi-square terms of ``Y = Y1 + Y2 - Y3`` (Es = 1).

    Y1 and Y2 are the squared real and imaginary parts of the targeted
    antenna's sample, Y3 the energy at the other antenna; an error occurs
    when ``Y < 0``.
    """
    _check(N, es_n0)
    n0 = 1.0 / es_n0
    y1 = ChiSquareSpec(n=1, sigma2=N * RAYLEIGH_VAR + n0 / 2, mu2=(N * RAYLEIGH_MEAN) ** 2)
    y2 = ChiSquareSpec(n=1, sigma2=n0 / 2)
    y3 = ChiSquareSpec(n=2, sigma2=(N + n0) / 2, sign=-1)
    return y1, y2, y3


def pep_ssk_greedy(N: int, es_n0: float, mode: Mode | str = Mode.EXACT) -> float:  # noqa: N803
    """Probability that the greedy detector picks a given wrong antenna.

    ``exact`` inverts the characteristic function of Y numerically;
    ``upper_bound`` drops Y2 and uses the closed form of ``P(Y1 < Y3)``.
    """
    mode = Mode(mode)
    if mode is Mode.UPPER_BOUND:
        return pep_ssk_greedy_bound(N, es_n0)
    y1, y2, y3 = ssk_statistics(N, es_n0)

    def cf(w: float) -> complex:
        return y1.cf(w) * y2.cf(w) * y3.cf(w)

    return gil_pelaez_prob_negative(cf)


def pep_ssk_greedy_bound(N: int, es_n0: float) -> float:  # noqa: N803
    _check(N, es_n0)
    snr = N * es_n0
    root = math.sqrt((1 + snr) / (2 + snr * (6 - math.pi) / 2))
    return clamp(root * math.exp(-N * snr * math.pi / (8 + 2 * snr * (6 - math.pi))))


def pep_ssk_greedy_closed_form(N: int, es_n0: float) -> float:  # noqa: N803
    """Exact PEP without numerical inversion.

    Y3 is exponential with mean ``2 sigma3^2``, so
    ``P(Y1 + Y2 < Y3) = E[exp(-(Y1 + Y2) / (2 sigma3^2))]``, the product of
    the MGFs of Y1 and Y2 at ``s = -1 / (2 sigma3^2)``.
    """
    y1, y2, y3 = ssk_statistics(N, es_n0)
    s = -1.0 / (2 * y3.sigma2)
    value = 1.0
    for y in (y1, y2):
        d = 1 - 2 * s * y.sigma2
        value *= d**-0.5 * math.exp(s * y.mu2 / d)
    return clamp(value)


def bep_ssk_greedy(req: TheoryRequest, *, on_progress: Callable[[str], None] | None = None) -> TheoryCurve:
    """Union bound ``(n_R / 2) P(m -> m_hat)``, clamped to [0, 0.5].

    Exact for ``n_R = 2``.
    """
    _expect(req, Scheme.SSK, Detector.GREEDY)
    resolution = GP_RESOLUTION if req.mode is Mode.EXACT else None

    def point(es_n0: float) -> float:
        return clamp(req.n_R / 2 * pep_ssk_greedy(req.N, es_n0, req.mode), 0.0, 0.5)

    return evaluate_grid(req, point, on_progress=on_progress, resolution=resolution)


# RIS-SM


def sm_index_statistic(x: complex, N: int, n0: float) -> QuadFormSpec:  # noqa: N803
    """Quadratic form ``D = B1^2 + B2^2 - B3^2 - B4^2`` given symbol ``x``.

    ``(B1, B2)`` are the real and imaginary parts of the targeted antenna's
    sample ``B x + n``, correlated through ``B``; ``(B3, B4)`` those of
    another antenna, with variance ``(N |x|^2 + N0) / 2`` each.
    """
    mean = N * RAYLEIGH_MEAN
    var = N * RAYLEIGH_VAR
    xr, xi = x.real, x.imag
    spread = (N * abs(x) ** 2 + n0) / 2
    C = np.array(  # noqa: N806
        [
            [var * xr**2 + n0 / 2, var * xr * xi, 0.0, 0.0],
            [var * xr * xi, var * xi**2 + n0 / 2, 0.0, 0.0],
            [0.0, 0.0, spread, 0.0],
            [0.0, 0.0, 0.0, spread],
        ]
    )
    return QuadFormSpec(A=np.array([1.0, 1.0, -1.0, -1.0]), m=np.array([mean * xr, mean * xi, 0.0, 0.0]), C=C)


def pep_sm_index_greedy_given(x: complex, N: int, n0: float) -> float:  # noqa: N803
    """Index-detection PEP conditioned on the transmitted symbol."""
    return gil_pelaez_prob_negative(sm_index_statistic(x, N, n0).cf)


def pep_sm_index_greedy(c: Constellation, N: int, es_n0: float) -> float:  # noqa: N803
    """Index-detection PEP averaged over the symbols of ``c``.

    BPSK reduces to the RIS-SSK PEP.
    """
    _check(N, es_n0)
    if c.is_bpsk:
        return pep_ssk_greedy(N, es_n0)
    n0 = c.Es / es_n0
    # The conditional PEP depends on x only through |Re x| and |Im x|
    counts: dict[tuple[float, float], int] = {}
    for x in c.points:
        key = (round(abs(x.real), 12), round(abs(x.imag), 12))
        counts[key] = counts.get(key, 0) + 1
    total = sum(count * pep_sm_index_greedy_given(complex(*key), N, n0) for key, count in counts.items())
    return clamp(total / c.M)


def sep_conditioned(c: Constellation, N: int, es_n0: float) -> float:  # noqa: N803
    """Symbol error probability given a correct antenna decision.

    Uses the MGF of the aligned SNR in the single-integral form of the
    Gaussian Q-function (BPSK) or its square-QAM extension. QPSK is handled
    as 4-QAM.

    Raises:
        ParameterError: For PSK orders other than 2 and 4
    """
    _check(N, es_n0)
    if c.is_bpsk:

        def bpsk(eta: np.ndarray) -> np.ndarray:
            return mgf_snr(-1.0 / np.sin(eta) ** 2, N, es_n0)

        return clamp(gauss_legendre(bpsk, 0.0, math.pi / 2) / math.pi)

    if c.kind is Kind.PSK and c.M != 4:
        msg = f"Conditional SEP is available for BPSK and square QAM only, got {c.M}-PSK"
        raise ParameterError(msg)

    g = 3.0 / (2 * (c.M - 1))
    factor = 1 - 1 / math.sqrt(c.M)

    def qam(eta: np.ndarray) -> np.ndarray:
        return mgf_snr(-g / np.sin(eta) ** 2, N, es_n0)

    first = gauss_legendre(qam, 0.0, math.pi / 2)
    second = gauss_legendre(qam, 0.0, math.pi / 4)
    return clamp(4 / math.pi * factor * first - 4 / math.pi * factor**2 * second)


def bep_sm_greedy(req: TheoryRequest, *, on_progress: Callable[[str], None] | None = None) -> TheoryCurve:
    """Greedy RIS-SM bit error probability.

    ``P_b = P_c P_s / log2(M n_R) + 0.5 P_e`` where ``P_e`` is the union
    bound ``(n_R - 1) P(m -> m_hat)`` clamped to [0, 1], ``P_c = 1 - P_e``
    and ``P_s`` the conditional SEP. The factor 0.5 assumes half of the
    bits are wrong after an index error.
    """
    _expect(req, Scheme.SM, Detector.GREEDY)
    c = req.constellation
    assert c is not None
    bits = math.log2(c.M * req.n_R)

    def point(es_n0: float) -> float:
        p_e = clamp((req.n_R - 1) * pep_sm_index_greedy(c, req.N, es_n0))
        p_s = sep_conditioned(c, req.N, es_n0)
        return clamp((1 - p_e) * p_s / bits + 0.5 * p_e, 0.0, 0.5)

    return evaluate_grid(req, point, on_progress=on_progress, resolution=GP_RESOLUTION)


def _check(N: int, es_n0: float) -> None:  # noqa: N803
    if N < 1:
        msg = f"N must be >= 1, got {N}"
        raise ParameterError(msg)
    if not (es_n0 > 0 and math.isfinite(es_n0)):
        msg = f"Es/N0 must be positive and finite, got {es_n0}"
        raise ParameterError(msg)


def _expect(req: TheoryRequest, scheme: Scheme, detector: Detector) -> None:
    if req.scheme is not scheme or req.detector is not detector:
        msg = f"Expected a {scheme}-{detector} request, got {req.scheme}-{req.detector}"
        raise ParameterError(msg)
