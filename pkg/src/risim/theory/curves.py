"""
Theory requests and curves.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from ..channel import is_power_of_two
from ..detectors import Detector, Scheme
from ..exceptions import NumericError, ParameterError

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from ..modulation import Constellation

# Below this reflector count the Gaussian approximations are unverified
CLT_MIN_N = 16


class Mode(enum.StrEnum):
    EXACT = "exact"
    UPPER_BOUND = "upper_bound"


class Source(enum.StrEnum):
    """Provenance tag of a curve, as written in result files."""

    SIM = "sim"
    THEORY_EXACT = "theory-exact"
    THEORY_BOUND = "theory-bound"


@dataclass(frozen=True)
class TheoryRequest:
    """Inputs of an analytical BEP evaluation."""

    scheme: Scheme
    detector: Detector
    N: int
    n_R: int
    snr_grid_db: tuple[float, ...]
    constellation: Constellation | None = None
    mode: Mode = Mode.EXACT

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "detector", Detector(self.detector))
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "snr_grid_db", tuple(float(v) for v in self.snr_grid_db))

        if not self.snr_grid_db:
            msg = "SNR grid must not be empty"
            raise ParameterError(msg)
        if not all(math.isfinite(v) for v in self.snr_grid_db):
            msg = "SNR grid values must be finite"
            raise ParameterError(msg)
        if self.N < 1:
            msg = f"N must be >= 1, got {self.N}"
            raise ParameterError(msg)
        if not is_power_of_two(self.n_R) or self.n_R < 2:
            msg = f"n_R must be a power of two >= 2, got {self.n_R}"
            raise ParameterError(msg)
        if self.scheme is Scheme.SM and self.constellation is None:
            msg = "RIS-SM theory needs a constellation"
            raise ParameterError(msg)
        if self.scheme is Scheme.SSK and self.constellation is not None:
            msg = "RIS-SSK theory takes no constellation"
            raise ParameterError(msg)
        if self.mode is Mode.UPPER_BOUND and not (
            self.scheme is Scheme.SSK and self.detector is Detector.GREEDY
        ):
            msg = "The upper_bound mode exists for greedy RIS-SSK only"
            raise ParameterError(msg)

    @property
    def M(self) -> int | None:  # noqa: N802
        return self.constellation.M if self.constellation is not None else None

    @property
    def es(self) -> float:
        return self.constellation.Es if self.constellation is not None else 1.0

    @property
    def source(self) -> Source:
        if self.detector is Detector.ML or self.mode is Mode.UPPER_BOUND:
            return Source.THEORY_BOUND
        return Source.THEORY_EXACT

    @property
    def label(self) -> str:
        parts = [f"{self.scheme}-{self.detector}", f"N={self.N}", f"n_R={self.n_R}"]
        if self.constellation is not None:
            parts.append(f"{self.constellation.M}-{self.constellation.kind}")
        return " ".join(parts)


@dataclass(frozen=True)
class TheoryCurve:
    """Per-grid-point bit error probabilities of a request."""

    request: TheoryRequest
    bep: tuple[float, ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def snr_grid_db(self) -> tuple[float, ...]:
        return self.request.snr_grid_db

    @property
    def source(self) -> Source:
        return self.request.source


def es_n0(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def evaluate_grid(
    req: TheoryRequest,
    point: Callable[[float], float],
    *,
    on_progress: Callable[[str], None] | None = None,
    resolution: float | None = None,
) -> TheoryCurve:
    """Evaluate ``point(es_n0)`` over the grid of ``req``.

    Numeric failures are re-raised naming the grid point. Values below
    ``resolution`` are kept but listed in the curve warnings.
    """
    values: list[float] = []
    for snr_db in req.snr_grid_db:
        try:
            value = point(es_n0(snr_db))
        except NumericError as e:
            msg = f"{req.label}: {e} at Es/N0 = {snr_db:g} dB"
            raise NumericError(msg, estimate=e.estimate, tolerance=e.tolerance) from e
        values.append(value)
        if on_progress:
            on_progress(f"{req.label}: Es/N0 = {snr_db:g} dB, BEP = {value:.4g}")
    return TheoryCurve(req, tuple(values), warnings=curve_warnings(req, values, resolution))


def curve_warnings(
    req: TheoryRequest, bep: Sequence[float] = (), resolution: float | None = None
) -> tuple[str, ...]:
    warnings: list[str] = []
    if req.N < CLT_MIN_N:
        warnings.append(
            f"N={req.N} is below {CLT_MIN_N}: the Gaussian approximation of the "
            "channel sums is not validated there"
        )
    if resolution is not None:
        unresolved = [snr_db for snr_db, value in zip(req.snr_grid_db, bep, strict=True) if value < resolution]
        if unresolved:
            points = ", ".join(f"{snr_db:g}" for snr_db in unresolved)
            warnings.append(
                f"{req.label}: BEP below {resolution:g} at Es/N0 = {points} dB is under the "
                "resolution of the characteristic-function inversion"
            )
    return tuple(warnings)


def snr_grid(start: float, step: float, stop: float) -> tuple[float, ...]:
    """Inclusive grid ``start, start + step, ..., stop``.

    Raises:
        ParameterError: If the step does not move from start towards stop
    """
    if step == 0 or (stop - start) * step < 0:
        msg = f"Invalid SNR grid {start}:{step}:{stop}"
        raise ParameterError(msg)
    count = math.floor((stop - start) / step + 1e-9) + 1
    return tuple(round(start + k * step, 9) for k in range(count))

