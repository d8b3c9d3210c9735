"""
risim - RIS-assisted index modulation link simulator

Monte Carlo bit error rate simulation of RIS space shift keying (RIS-SSK)
and RIS spatial modulation (RIS-SM) links with greedy and maximum-likelihood
detectors, and the matching analytical bit error probabilities.

.. py:data:: __all__
   :type: tuple[str]

   Package exports
"""

from .channel import ChannelRealization, NoiseSpec, PhaseProfile, sample_channel
from .detectors import Decision, Detector, Scheme
from .exceptions import NumericError, ParameterError, RisimError
from .modulation import BitFrame, Constellation, build_constellation
from .montecarlo import BerCurve, BerRecord, SimPlan, StopRule, run_point, run_sweep
from .theory import TheoryCurve, TheoryRequest, evaluate

__all__ = (
    "BerCurve",
    "BerRecord",
    "BitFrame",
    "ChannelRealization",
    "Constellation",
    "Decision",
    "Detector",
    "NoiseSpec",
    "NumericError",
    "ParameterError",
    "PhaseProfile",
    "RisimError",
    "Scheme",
    "SimPlan",
    "StopRule",
    "TheoryCurve",
    "TheoryRequest",
    "build_constellation",
    "evaluate",
    "run_point",
    "run_sweep",
    "sample_channel",
)
