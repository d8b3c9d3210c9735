"""
Analytical bit error probabilities of RIS-SSK and RIS-SM.

:func:`evaluate` dispatches a :class:`TheoryRequest` to the greedy or ML
expressions:

    from risim.theory import TheoryRequest, evaluate

    req = TheoryRequest("SSK", "greedy", N=64, n_R=2, snr_grid_db=(-25.0, -20.0))
    curve = evaluate(req)
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..detectors import Detector, Scheme
from .curves import Mode, Source, TheoryCurve, TheoryRequest, evaluate_grid, snr_grid
from .distributions import (
    ChiSquareSpec,
    QuadFormSpec,
    cf_chi_square,
    mgf_quadratic_form,
    mgf_snr,
)
from .greedy import (
    bep_sm_greedy,
    bep_ssk_greedy,
    pep_sm_index_greedy,
    pep_ssk_greedy,
    pep_ssk_greedy_closed_form,
    sep_conditioned,
)
from .ml import bep_ml, mgf_gamma_ml, pep_ml
from .quadrature import gauss_legendre, gil_pelaez_prob_negative

if TYPE_CHECKING:
    from collections.abc import Callable


def evaluate(req: TheoryRequest, *, on_progress: Callable[[str], None] | None = None) -> TheoryCurve:
    """Evaluate the curve of ``req``."""
    if req.detector is Detector.ML:
        return bep_ml(req, on_progress=on_progress)
    if req.scheme is Scheme.SSK:
        return bep_ssk_greedy(req, on_progress=on_progress)
    return bep_sm_greedy(req, on_progress=on_progress)


__all__ = [
    "ChiSquareSpec",
    "Mode",
    "QuadFormSpec",
    "Source",
    "TheoryCurve",
    "TheoryRequest",
    "bep_ml",
    "bep_sm_greedy",
    "bep_ssk_greedy",
    "cf_chi_square",
    "evaluate",
    "evaluate_grid",
    "gauss_legendre",
    "gil_pelaez_prob_negative",
    "mgf_gamma_ml",
    "mgf_quadratic_form",
    "mgf_snr",
    "pep_ml",
    "pep_sm_index_greedy",
    "pep_ssk_greedy",
    "pep_ssk_greedy_closed_form",
    "sep_conditioned",
    "snr_grid",
]
